"""Numpy implementations of the hot kernels.

These are the reference semantics for the compiled backend in ``_core.pyx``;
both must produce identical results on float inputs.  The functions also
accept object-dtype arrays (exact ``Fraction`` entries), which the compiled
backend cannot, so exact-arithmetic code paths always route here.
"""

from __future__ import annotations

import numpy as np


def band_accumulate(vec, band, row, out, scale=1.0):
    """Accumulate a banded Bernstein product into ``out``.

    Given a coefficient vector ``vec`` of degree q (length q+1), the product
    coefficient table ``band[k, j] = a(k, j, q, n)`` and a row ``row`` of
    degree n (length n+1), adds ``scale * (vec^T psi_q)(row^T psi_n)`` to
    ``out`` expressed over the degree q+n basis (length q+n+1):

        out[k+j] += scale * vec[k] * band[k, j] * row[j]
    """
    q1 = len(vec)
    n1 = len(row)
    if band.shape[0] < q1 or band.shape[1] < n1:
        raise ValueError("band table too small for operands")
    if len(out) != q1 + n1 - 1:
        raise ValueError("output length must be q + n + 1")
    for k in range(q1):
        ck = vec[k] * scale
        if ck != 0:
            out[k : k + n1] += ck * (band[k, :n1] * row)
    return out


def decasteljau(coeffs, ts):
    """Evaluate a Bernstein-form polynomial at parameter values ``ts``.

    ``coeffs`` has length deg+1; ``ts`` is a scalar or 1-D array of points in
    [0, 1].  Returns values with the same shape as ``ts``.  The de Casteljau
    recurrence is used for numerical stability at every degree.
    """
    t = np.asarray(ts)
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    n = len(coeffs)
    if n == 1:
        vals = np.full(t.shape, coeffs[0])
        return vals[0] if scalar else vals
    beta = np.repeat(np.asarray(coeffs)[:, None], len(t), axis=1)
    omt = 1 - t
    for r in range(1, n):
        beta = beta[: n - r] * omt + beta[1 : n - r + 1] * t
    vals = beta[0]
    return vals[0] if scalar else vals
