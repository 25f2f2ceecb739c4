"""Reference solutions: closed forms where known, high-order RK elsewhere.

The IVP has a removable singularity at x = 0 (y'' appears with weight x), so
numeric integration starts at a small x0 > 0 from the local expansion

    y(x) = a + y''(0) x^2 / 2 + O(x^4),   y''(0) = -f(0) g(a) / 3,

and the expansion itself serves as the reference on [0, x0).  The integrator
is an explicit embedded Runge-Kutta pair of order 8(7) with a continuous
extension, run at tight local tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ConfigurationError, IntegrationError
from .problems import ProblemSpec, f_eval, g_eval, second_deriv_at_zero

M_CAP = 5.0  # domain-truncation cap: roots beyond this are cut off at 5


@dataclass(frozen=True)
class ReferenceSolution:
    """Callable reference solution on [0, x_max]."""

    kind: str  # "closed_form" or "rk"
    x_max: float
    eval: Callable[[np.ndarray], np.ndarray]
    deriv: Callable[[np.ndarray], np.ndarray]


# ---------------------------------------------------------------------------
# closed forms


def _sinc_deriv(x):
    """d/dx [sin(x)/x], stable at 0 via the odd series."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-3
    xs = np.where(small, 1.0, x)
    out = (xs * np.cos(xs) - np.sin(xs)) / xs**2
    series = -x / 3.0 + x**3 / 30.0 - x**5 / 840.0
    return np.where(small, series, out)


def exact_solution(problem: ProblemSpec) -> ReferenceSolution | None:
    """Closed-form solution when the problem instance has one, else None.

    Matching is structural (f kind, g kind, exponent, initial data), so
    problems loaded from files benefit as well.
    """
    a, b = problem.a, problem.b
    if problem.f_kind == "constant_one" and problem.g_kind == "power_int" and b == 0.0 and a == 1.0:
        p = int(problem.power)
        if p == 0:
            return ReferenceSolution(
                "closed_form", math.inf,
                lambda x: 1.0 - np.asarray(x, dtype=float) ** 2 / 6.0,
                lambda x: -np.asarray(x, dtype=float) / 3.0,
            )
        if p == 1:
            return ReferenceSolution(
                "closed_form", math.inf,
                lambda x: np.sinc(np.asarray(x, dtype=float) / np.pi),
                _sinc_deriv,
            )
        if p == 5:
            return ReferenceSolution(
                "closed_form", math.inf,
                lambda x: (1.0 + np.asarray(x, dtype=float) ** 2 / 3.0) ** -0.5,
                lambda x: -(np.asarray(x, dtype=float) / 3.0)
                * (1.0 + np.asarray(x, dtype=float) ** 2 / 3.0) ** -1.5,
            )
    if (
        problem.f_kind == "constant_one"
        and problem.g_kind == "two_exp_combo"
        and a == 0.0
        and b == 0.0
    ):
        return ReferenceSolution(
            "closed_form", math.inf,
            lambda x: -2.0 * np.log1p(np.asarray(x, dtype=float) ** 2),
            lambda x: -4.0 * np.asarray(x, dtype=float) / (1.0 + np.asarray(x, dtype=float) ** 2),
        )
    if (
        problem.f_kind == "poly_minus2_2x2plus3"
        and problem.g_kind == "power_int"
        and problem.power == 1
        and a == 1.0
        and b == 0.0
    ):
        return ReferenceSolution(
            "closed_form", math.inf,
            lambda x: np.exp(np.asarray(x, dtype=float) ** 2),
            lambda x: 2.0 * np.asarray(x, dtype=float) * np.exp(np.asarray(x, dtype=float) ** 2),
        )
    return None


# ---------------------------------------------------------------------------
# Runge-Kutta reference


def rk_reference(
    problem: ProblemSpec, x_max: float, tol: float = 1e-12, x0: float = 1e-6
) -> ReferenceSolution:
    """Integrate the IVP to x_max with a dense-output RK 8(7) pair."""
    if x_max <= x0:
        raise ValueError("x_max must exceed the series start x0")
    y2 = second_deriv_at_zero(problem)
    if not math.isfinite(y2):
        raise ConfigurationError("y''(0) is not finite; cannot start the integration")

    def rhs(x, state):
        u, v = state
        return [v, -2.0 * v / x - float(f_eval(problem, x)) * float(g_eval(problem, u))]

    sol = solve_ivp(
        rhs,
        (x0, x_max),
        [problem.a + 0.5 * y2 * x0**2, y2 * x0],
        method="DOP853",
        rtol=tol,
        atol=tol,
        dense_output=True,
    )
    if not sol.success:
        raise IntegrationError(f"reference integration failed: {sol.message}")

    a, b = problem.a, problem.b

    def ev(x):
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        out = np.empty_like(x)
        low = x < x0
        out[low] = a + b * x[low] + 0.5 * y2 * x[low] ** 2
        if np.any(~low):
            out[~low] = sol.sol(x[~low])[0]
        return out[0] if scalar else out

    def dv(x):
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        out = np.empty_like(x)
        low = x < x0
        out[low] = b + y2 * x[low]
        if np.any(~low):
            out[~low] = sol.sol(x[~low])[1]
        return out[0] if scalar else out

    return ReferenceSolution("rk", x_max, ev, dv)


_reference_cache: dict = {}


def get_reference(problem: ProblemSpec, tol: float = 1e-12) -> ReferenceSolution:
    """Closed form if available, else a cached RK reference on [0, M]."""
    exact = exact_solution(problem)
    if exact is not None:
        return exact
    if problem.m_trunc is None:
        raise ConfigurationError("problem has no domain length M resolved")
    key = (problem.f_kind, problem.g_kind, problem.power, problem.a, problem.b,
           problem.m_trunc, tol)
    if key not in _reference_cache:
        # integrate a little past M so error norms can sample the endpoint
        _reference_cache[key] = rk_reference(problem, problem.m_trunc * 1.0 + 1e-9, tol)
    return _reference_cache[key]


# ---------------------------------------------------------------------------
# domain truncation


_m_cache: dict = {}


def determine_m(problem: ProblemSpec) -> float:
    """Domain length: the first root of the reference solution, capped at 5.

    Applies when y(0) > 0 (the solution decays and may vanish); if no root
    occurs by the cap, the cap itself is returned.  For y(0) <= 0 the rule
    is inapplicable and the problem must carry an explicit M.
    """
    if problem.a <= 0.0:
        if problem.m_trunc is not None:
            return problem.m_trunc
        raise ConfigurationError(
            f"problem {problem.name!r} has y(0) <= 0; the root rule does not "
            "apply, so M must be given explicitly"
        )
    key = (problem.f_kind, problem.g_kind, problem.power, problem.a, problem.b)
    if key not in _m_cache:
        ref = exact_solution(problem)
        if ref is None:
            ref = rk_reference(problem, M_CAP, tol=1e-12)
        _m_cache[key] = _first_root(ref.eval, M_CAP)
    return _m_cache[key]


def _first_root(fn, cap: float) -> float:
    xs = np.linspace(1e-9, cap, 4001)
    vals = np.asarray(fn(xs))
    sign_change = np.nonzero((vals[:-1] > 0) & (vals[1:] <= 0))[0]
    if len(sign_change) == 0:
        return cap
    lo, hi = xs[sign_change[0]], xs[sign_change[0] + 1]
    flo = fn(lo)
    for _ in range(60):  # bisect well below the 1e-10 residual requirement
        mid = 0.5 * (lo + hi)
        fmid = fn(mid)
        if fmid == 0.0:
            return float(mid)
        if (flo > 0) == (fmid > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
        if hi - lo < 1e-13:
            break
    return float(0.5 * (lo + hi))
