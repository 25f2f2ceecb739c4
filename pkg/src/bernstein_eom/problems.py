"""Problem definitions for the singular IVP family

    x y''(x) + 2 y'(x) + x f(x) g(y(x)) = 0,   y(0) = a,  y'(0) = b,

solved on a truncated domain [0, M].  A problem is described structurally
(which f, which g, initial data, series degree N, domain length M) so that
the solver, the reference integrator and the series fitter can each pick the
exact formulas they need instead of round-tripping through callables.

Built-in f kinds:
    constant_one          f(x) = 1
    poly_minus2_2x2plus3  f(x) = -2 (2 x^2 + 3)

Built-in g kinds:
    power_int (p >= 0)    g(y) = y^p
    power_frac (p > 0)    g(y) = y^p with non-integer p  (series-approximated)
    exp                   g(y) = e^y
    sinh                  g(y) = sinh(y)
    sin                   g(y) = sin(y)
    two_exp_combo         g(y) = 4 (2 e^y + e^{y/2})
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable

import mpmath
import numpy as np

from .errors import ConfigurationError

F_KINDS = ("constant_one", "poly_minus2_2x2plus3")
G_KINDS = ("power_int", "power_frac", "exp", "sinh", "sin", "two_exp_combo")


@dataclass(frozen=True)
class ProblemSpec:
    """One concrete instance of the problem family."""

    name: str
    f_kind: str
    g_kind: str
    a: float  # y(0)
    b: float  # y'(0)
    n_series: int  # series degree N (unused by integer-power g)
    power: Fraction | None = None  # exponent for power_int / power_frac
    m_trunc: float | None = None  # domain length M; None = determine from reference
    approx_interval: tuple[float, float] | None = None  # y-interval for the g series

    def __post_init__(self):
        if self.f_kind not in F_KINDS:
            raise ConfigurationError(f"unknown f_kind {self.f_kind!r}")
        if self.g_kind not in G_KINDS:
            raise ConfigurationError(f"unknown g_kind {self.g_kind!r}")
        if self.g_kind == "power_int":
            if self.power is None or self.power.denominator != 1 or self.power < 0:
                raise ConfigurationError("power_int needs an integer exponent p >= 0")
        elif self.g_kind == "power_frac":
            if self.power is None or self.power.denominator == 1 or self.power <= 0:
                raise ConfigurationError("power_frac needs a non-integer exponent p > 0")
        elif self.power is not None:
            raise ConfigurationError(f"g_kind {self.g_kind!r} takes no exponent")
        if self.n_series < 2:
            raise ConfigurationError("series degree N must be at least 2")
        if self.n_series > 30:
            raise ConfigurationError("series degree N above 30 is not supported")
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ConfigurationError("initial data must be finite")
        if self.m_trunc is not None and not self.m_trunc > 0:
            raise ConfigurationError("domain length M must be positive")
        if self.approx_interval is not None:
            lo, hi = self.approx_interval
            if not hi > lo:
                raise ConfigurationError("approx_interval must be increasing")

    @property
    def uses_series(self) -> bool:
        """True when g is replaced by its best-L2 polynomial series."""
        return self.g_kind not in ("power_int",)

    def with_overrides(
        self, m_trunc: float | None = None, n_series: int | None = None
    ) -> "ProblemSpec":
        out = self
        if m_trunc is not None:
            out = replace(out, m_trunc=float(m_trunc))
        if n_series is not None:
            out = replace(out, n_series=int(n_series))
        return out


# ---------------------------------------------------------------------------
# pointwise evaluation of f and g


def f_eval(problem: ProblemSpec, x):
    x = np.asarray(x, dtype=float)
    if problem.f_kind == "constant_one":
        return np.ones_like(x)
    return -2.0 * (2.0 * x**2 + 3.0)


def g_eval(problem: ProblemSpec, y):
    """g(y), vectorized.

    Fractional powers are extended by zero for y < 0 (the standard density
    truncation), which only matters in the round-off neighborhood of a root
    of y; every other kind is entire.
    """
    y = np.asarray(y, dtype=float)
    kind = problem.g_kind
    if kind == "power_int":
        return y ** int(problem.power)
    if kind == "power_frac":
        return np.where(y > 0, np.maximum(y, 0.0) ** float(problem.power), 0.0)
    if kind == "exp":
        return np.exp(y)
    if kind == "sinh":
        return np.sinh(y)
    if kind == "sin":
        return np.sin(y)
    return 4.0 * (2.0 * np.exp(y) + np.exp(y / 2.0))


def second_deriv_at_zero(problem: ProblemSpec) -> float:
    """y''(0) = -f(0) g(a) / 3, from the regular-singular expansion at x=0."""
    f0 = float(f_eval(problem, 0.0))
    ga = float(g_eval(problem, problem.a))
    return -f0 * ga / 3.0


# ---------------------------------------------------------------------------
# closed-form moments for the series fit
#
# The series fitter works on G(w) = g(M w) over a w-interval; its normal
# equations amplify moment error, so moments are produced in extended
# precision, via closed forms here whenever g admits one.


def _exp_moments(lam, lo, hi, n):
    """I_i = int_lo^hi w^i e^{lam w} dw for i = 0..n, by upward recurrence."""
    lam = mpmath.mpf(lam)
    lo, hi = mpmath.mpf(lo), mpmath.mpf(hi)
    elo, ehi = mpmath.e**(lam * lo), mpmath.e**(lam * hi)
    out = [(ehi - elo) / lam]
    for i in range(1, n + 1):
        out.append((hi**i * ehi - lo**i * elo) / lam - i * out[i - 1] / lam)
    return out


def _sin_moments(lam, lo, hi, n):
    """S_i = int w^i sin(lam w) dw for i = 0..n, with the cosine companions."""
    lam = mpmath.mpf(lam)
    lo, hi = mpmath.mpf(lo), mpmath.mpf(hi)
    slo, shi = mpmath.sin(lam * lo), mpmath.sin(lam * hi)
    clo, chi = mpmath.cos(lam * lo), mpmath.cos(lam * hi)
    s = [(clo - chi) / lam]
    c = [(shi - slo) / lam]
    for i in range(1, n + 1):
        s.append((lo**i * clo - hi**i * chi) / lam + i * c[i - 1] / lam)
        c.append((hi**i * shi - lo**i * slo) / lam - i * s[i - 1] / lam)
    return s


def series_moments(problem: ProblemSpec, m_trunc: float, lo: float, hi: float, n: int):
    """Closed-form moment function for G(w) = g(M w) on [lo, hi], or None.

    Returns a callable i -> int_lo^hi w^i G(w) dw, or None when no closed
    form is available (the fitter then falls back to adaptive quadrature).
    The upward recurrences amplify rounding by roughly i!/lam^i, so the
    values are built once at 60 digits; mpf results keep that mantissa no
    matter what precision the caller later runs at.
    """
    kind = problem.g_kind
    with mpmath.workdps(60):
        mm = mpmath.mpf(m_trunc)
        if kind == "exp":
            vals = _exp_moments(mm, lo, hi, n)
            return lambda i: vals[i]
        if kind == "sinh":
            up = _exp_moments(mm, lo, hi, n)
            dn = _exp_moments(-mm, lo, hi, n)
            vals = [(u - d) / 2 for u, d in zip(up, dn)]
            return lambda i: vals[i]
        if kind == "sin":
            vals = _sin_moments(mm, lo, hi, n)
            return lambda i: vals[i]
        if kind == "two_exp_combo":
            full = _exp_moments(mm, lo, hi, n)
            half = _exp_moments(mm / 2, lo, hi, n)
            vals = [8 * f + 4 * h for f, h in zip(full, half)]
            return lambda i: vals[i]
        if kind == "power_frac":
            if lo < 0:
                raise ConfigurationError("fractional powers need a nonnegative interval")
            p = mpmath.mpf(problem.power.numerator) / problem.power.denominator
            mlo, mhi = mpmath.mpf(lo), mpmath.mpf(hi)
            scale = mm**p
            vals = [
                scale * (mhi ** (i + p + 1) - mlo ** (i + p + 1)) / (i + p + 1)
                for i in range(n + 1)
            ]
            return lambda i: vals[i]
    return None


def g_scaled(problem: ProblemSpec, m_trunc: float) -> Callable[[float], float]:
    """G(w) = g(M w) as a plain callable (quadrature fallback / diagnostics)."""
    return lambda w: float(g_eval(problem, m_trunc * float(w)))


# ---------------------------------------------------------------------------
# registry

_REGISTRY: dict[str, dict] = {
    "lane-emden-p0": dict(
        f_kind="constant_one", g_kind="power_int", power=Fraction(0), a=1.0, b=0.0, n_series=8
    ),
    "lane-emden-p1": dict(
        f_kind="constant_one", g_kind="power_int", power=Fraction(1), a=1.0, b=0.0, n_series=8
    ),
    "lane-emden-p5": dict(
        f_kind="constant_one", g_kind="power_int", power=Fraction(5), a=1.0, b=0.0, n_series=8
    ),
    "lane-emden-exp": dict(
        f_kind="constant_one", g_kind="exp", a=0.0, b=0.0, n_series=15, m_trunc=2.0
    ),
    "lane-emden-sinh": dict(
        f_kind="constant_one", g_kind="sinh", a=1.0, b=0.0, n_series=10
    ),
    "lane-emden-sin": dict(
        f_kind="constant_one", g_kind="sin", a=1.0, b=0.0, n_series=12
    ),
    "emden-fowler-two-exp": dict(
        f_kind="constant_one", g_kind="two_exp_combo", a=0.0, b=0.0, n_series=10, m_trunc=1.0
    ),
    "emden-fowler-poly": dict(
        f_kind="poly_minus2_2x2plus3", g_kind="power_int", power=Fraction(1), a=1.0, b=0.0,
        n_series=8, m_trunc=1.0,
    ),
}

# The seven problems every cross-mode comparison runs over.
CANONICAL_NAMES = (
    "lane-emden-p1",
    "lane-emden-p5",
    "lane-emden-exp",
    "lane-emden-sinh",
    "lane-emden-sin",
    "emden-fowler-two-exp",
    "emden-fowler-poly",
)


def problem_names() -> tuple[str, ...]:
    return tuple(_REGISTRY)


def get_problem(
    name: str, m_trunc: float | None = None, n_series: int | None = None
) -> ProblemSpec:
    """Build a registry problem, optionally overriding M and N.

    The returned spec always carries a concrete M: explicit argument first,
    then the registry default, then the root-of-the-reference rule.
    """
    if name not in _REGISTRY:
        raise ConfigurationError(f"unknown problem {name!r}; known: {', '.join(_REGISTRY)}")
    spec = ProblemSpec(name=name, **_REGISTRY[name])
    spec = spec.with_overrides(m_trunc=m_trunc, n_series=n_series)
    return _ensure_m(spec)


def _ensure_m(spec: ProblemSpec) -> ProblemSpec:
    if spec.m_trunc is not None:
        return spec
    from . import reference  # deferred: reference needs this module's evaluators

    return replace(spec, m_trunc=reference.determine_m(spec))


def load_problem_file(path: str) -> ProblemSpec:
    """Read a problem from a JSON file.

    Schema (JSON object): name, f_kind, g_kind, a, b are required; p_num and
    p_den give the exponent for power kinds (p_den defaults to 1); N, M and
    approx_interval ([lo, hi]) are optional.
    """
    with open(path) as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise ConfigurationError("problem file must contain a JSON object")
    known = {"name", "f_kind", "g_kind", "a", "b", "p_num", "p_den", "N", "M",
             "approx_interval"}
    extra = set(raw) - known
    if extra:
        raise ConfigurationError(f"unknown problem-file keys: {sorted(extra)}")
    missing = {"name", "f_kind", "g_kind", "a", "b"} - set(raw)
    if missing:
        raise ConfigurationError(f"problem file missing keys: {sorted(missing)}")
    power = None
    if "p_num" in raw:
        power = Fraction(int(raw["p_num"]), int(raw.get("p_den", 1)))
    interval = raw.get("approx_interval")
    if interval is not None:
        interval = (float(interval[0]), float(interval[1]))
    spec = ProblemSpec(
        name=str(raw["name"]),
        f_kind=str(raw["f_kind"]),
        g_kind=str(raw["g_kind"]),
        a=float(raw["a"]),
        b=float(raw["b"]),
        n_series=int(raw.get("N", 10)),
        power=power,
        m_trunc=float(raw["M"]) if "M" in raw else None,
        approx_interval=interval,
    )
    return _ensure_m(spec)
