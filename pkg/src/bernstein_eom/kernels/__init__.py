"""Hot-kernel backend selection.

Two interchangeable implementations exist: a compiled Cython extension
(``_core``) and a numpy fallback (``py_backend``).  The compiled one is
preferred when importable; set ``EOM_KERNEL=python`` or ``EOM_KERNEL=compiled``
to force a choice (forcing ``compiled`` raises if the extension is missing).

Exact-arithmetic callers (object-dtype arrays of ``Fraction``) must use
``py_backend`` directly; the selected backend here is for float work.
"""

import os

from . import py_backend

_choice = os.environ.get("EOM_KERNEL", "auto").lower()

if _choice not in ("auto", "compiled", "python"):
    raise ValueError(f"EOM_KERNEL must be auto, compiled or python, got {_choice!r}")

_impl = None
if _choice in ("auto", "compiled"):
    try:
        from . import _core as _impl
    except ImportError:
        if _choice == "compiled":
            raise ImportError(
                "EOM_KERNEL=compiled but the compiled kernel extension is not "
                "built; reinstall the package or use EOM_KERNEL=python"
            ) from None
if _impl is None:
    _impl = py_backend

BACKEND = "compiled" if _impl is not py_backend else "python"

band_accumulate = _impl.band_accumulate
decasteljau = _impl.decasteljau
