"""Galerkin solution of the truncated singular IVP over Bernstein bases.

Pipeline
--------
The problem x y'' + 2 y' + x f(x) g(y) = 0 on [0, M] with y(0)=a, y'(0)=b is
mapped to s = x/M, v = y/M on [0, 1].  The unknown is the second derivative
z'' = c^T psi_m(s); integrating twice with the exact integration matrices
embeds the initial data:

    z'  = g^T psi_{m+1},  g = P_m^T c + b d_{0,m+1}
    z   = h^T psi_{m+2},  h = P_{m+1}^T g + (a/M) d_{0,m+2}

The residual  s z'' + 2 z' + (s M f(s M)) g(M z)  is assembled as a single
coefficient row over a Bernstein basis and reduced by Galerkin projection
against psi_m, giving m+1 equations for the m+1 unknowns in c.  Newton with
a finite-difference Jacobian closes the loop; for g that is constant or
linear in y the system is affine and converges in one step.

Modes
-----
"eom"  lets every product and power raise the working degree as the algebra
demands; nothing is approximated before the Galerkin reduction.
"oom"  imitates square operational-matrix schemes: every operator output
(antiderivatives, products with the unknown) is interpolated back to degree
m at the m+1 uniform nodes before the next operator applies, so each
operator is an ordinary square matrix at the working degree.  Only the
final summation of the assembled terms, which is not an operator, is
carried exactly.  The two modes differ only there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .basis import elevate_coeffs, monomial_coeffs
from .errors import ConfigurationError, NonConvergenceError, SolverError
from .operators import (
    band_float,
    best_series_coeffs,
    collocation_float,
    elevation_float,
    gram_float,
    gram_matrix,
    int_matrix,
    int_matrix_float_t,
    power_row,
    product_hat,
    projection_float,
    series_row,
)
from .problems import ProblemSpec, f_eval, g_eval, g_scaled, second_deriv_at_zero, series_moments
from .rational import CoeffVector
from .reference import get_reference

MODES = ("eom", "oom")


@dataclass(frozen=True)
class SolveConfig:
    """Numerical parameters of one Galerkin solve."""

    m: int
    mode: str = "eom"
    newton_tol: float = 1e-12
    newton_max_iter: int = 50
    continuation: bool = True

    def __post_init__(self):
        if self.m < 2:
            raise ConfigurationError("working degree m must be at least 2")
        if self.mode not in MODES:
            raise ConfigurationError(f"mode must be one of {MODES}")
        if not self.newton_tol > 0:
            raise ConfigurationError("newton_tol must be positive")
        if self.newton_max_iter < 1:
            raise ConfigurationError("newton_max_iter must be at least 1")


@dataclass(frozen=True)
class MappedProblem:
    """The problem after the s = x/M, v = y/M change of variables."""

    problem: ProblemSpec
    m_trunc: float
    v0: float  # v(0) = a / M
    v0_prime: float  # v'(0) = b


def map_domain(problem: ProblemSpec) -> MappedProblem:
    if problem.m_trunc is None:
        raise ConfigurationError("problem has no domain length M resolved")
    m_tr = float(problem.m_trunc)
    return MappedProblem(problem, m_tr, problem.a / m_tr, problem.b)


# ---------------------------------------------------------------------------
# forcing and nonlinearity descriptors


def forcing_coeffs(problem: ProblemSpec) -> tuple[np.ndarray, int]:
    """Bernstein coefficients k and degree i of s M f(s M) over psi_i.

    constant_one:         s M           -> M d_{1,1},              i = 1
    poly_minus2_2x2plus3: -2M(2M^2 s^3 + 3 s) over psi_3,          i = 3
    """
    m_tr = float(problem.m_trunc)
    if problem.f_kind == "constant_one":
        return np.array([0.0, m_tr]), 1
    d33 = np.array([0.0, 0.0, 0.0, 1.0])
    d13 = np.array([0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0])
    return -2.0 * m_tr * (2.0 * m_tr**2 * d33 + 3.0 * d13), 3


def forcing_coeffs_exact(problem: ProblemSpec) -> tuple[CoeffVector, int]:
    """Exact-rational counterpart of :func:`forcing_coeffs`."""
    m_tr = Fraction(problem.m_trunc)
    if problem.f_kind == "constant_one":
        return CoeffVector.make([0, m_tr]), 1
    d33 = monomial_coeffs(3, 3)
    d13 = monomial_coeffs(1, 3)
    entries = tuple(
        -2 * m_tr * (2 * m_tr**2 * d33[j] + 3 * d13[j]) for j in range(4)
    )
    return CoeffVector(entries), 3


# ---------------------------------------------------------------------------
# series setup (g replaced by its best-L2 polynomial)

_series_cache: dict = {}


def series_setup(problem: ProblemSpec) -> tuple[np.ndarray, tuple[float, float]]:
    """Series coefficients e for G(w) = g(M w) plus the fitted y-interval.

    The default interval is the observed range of the reference solution on
    [0, M], padded by 10% on each side (clamped at zero for fractional
    powers, whose moments need a nonnegative domain).
    """
    m_tr = float(problem.m_trunc)
    n = problem.n_series
    if problem.approx_interval is not None:
        lo, hi = problem.approx_interval
    else:
        ref = get_reference(problem)
        ys = ref.eval(np.linspace(0.0, m_tr, 513))
        lo, hi = float(np.min(ys)), float(np.max(ys))
        pad = 0.1 * (hi - lo)
        lo, hi = lo - pad, hi + pad
    if problem.g_kind == "power_frac":
        lo = max(lo, 0.0)
    key = (problem.f_kind, problem.g_kind, problem.power, problem.a, problem.b,
           m_tr, n, lo, hi)
    if key not in _series_cache:
        wlo, whi = lo / m_tr, hi / m_tr
        moments = series_moments(problem, m_tr, wlo, whi, n)
        e = best_series_coeffs(g_scaled(problem, m_tr), n, wlo, whi, moments)
        _series_cache[key] = (e, (lo, hi))
    return _series_cache[key]


# ---------------------------------------------------------------------------
# residual assembly


class ResidualSystem:
    """Reduced Galerkin residual R*(c) for one (problem, m, mode) triple.

    All degree bookkeeping is fixed at construction; evaluating the residual
    for a candidate c is pure float work through the kernel backend.
    """

    def __init__(self, problem: ProblemSpec, m: int, mode: str, e: np.ndarray | None = None):
        if mode not in MODES:
            raise ConfigurationError(f"mode must be one of {MODES}")
        if m < 2:
            raise ConfigurationError("working degree m must be at least 2")
        if problem.uses_series and e is None:
            raise ConfigurationError("this g kind needs series coefficients e")
        self.problem = problem
        self.m = m
        self.mode = mode
        self.e = None if e is None else np.asarray(e, dtype=float)
        self.m_tr = float(problem.m_trunc)
        self.q = m + 2  # degree of z

        self.k_vec, self.i_deg = forcing_coeffs(problem)
        p = problem.power
        self.p_int = int(p) if problem.g_kind == "power_int" else None
        # degree of the nonlinearity expansion: 0 for the constant, q per power
        # of h, q*N for the series; under "oom" every operator output is
        # squashed back to the working degree m, so the expansion sits there
        if self.p_int is not None:
            j_alg = 0 if self.p_int == 0 else self.q * max(self.p_int, 1)
        else:
            j_alg = self.q * problem.n_series
        self.j_deg = j_alg if mode == "eom" else -1  # _setup_oom overrides

        # chain: g = P_m^T c + b, h = P_{m+1}^T g + a/M
        self._pm_t = int_matrix_float_t(m)
        self._pm1_t = int_matrix_float_t(m + 1)
        self._b_ones = float(problem.b) * np.ones(m + 2)
        self._v0_ones = (float(problem.a) / self.m_tr) * np.ones(m + 3)

        self._d11 = np.array([0.0, 1.0])
        self._band_d = band_float(1, m)

        if mode == "eom":
            self.max_num = max(m + 1, self.i_deg + self.j_deg)
            self._setup_eom()
        else:
            self._setup_oom()
            self.max_num = self.row_deg
        self._q_red = gram_float(self.max_num, m)
        # Newton does not iterate on reduced() itself: the Bernstein Gram
        # factor is brutally ill conditioned (~16^m), which leaves the root
        # pinned only to ~1e-3.  Right-multiplying by G_m^{-1} (exact in
        # rationals before the one float conversion) keeps the identical
        # root set while the conditions become plain projection coefficients.
        self._t_red = (
            None if self.max_num == m else projection_float(self.max_num, m).T
        )
        # maps the projected conditions back to reduced scale (r_proj @ G_m),
        # so convergence can be tested on the reduced norm without a second
        # residual assembly
        self._g_m = gram_float(m, m)

    # -- mode-specific tables ------------------------------------------------

    def _setup_eom(self):
        m, q = self.m, self.q
        gap12 = self.max_num - (m + 1)
        self._elev12 = elevation_float(m + 1, gap12) if gap12 > 0 else None
        gap3 = self.max_num - (self.i_deg + self.j_deg)
        self._elev3 = elevation_float(self.i_deg + self.j_deg, gap3) if gap3 > 0 else None
        self._band_k = band_float(self.i_deg, self.j_deg)
        if self.p_int is not None and self.p_int >= 2:
            self._pw_bands = [band_float(q, i * q) for i in range(1, self.p_int)]
        if self.e is not None:
            n = self.problem.n_series
            self._pw_bands = [band_float(q, i * q) for i in range(1, n)]
            self._elev_terms = [
                elevation_float(i * q, (n - i) * q) if (n - i) > 0 else None
                for i in range(1, n + 1)
            ]

    def _setup_oom(self):
        # Square operational matrices at the working degree: every operator
        # output that exceeds degree m is interpolated straight back down at
        # the m+1 uniform nodes.  The final summation of the assembled legs
        # is not an operator and stays exact, which matters here: the
        # residual of this equation class vanishes identically at s = 0, so
        # a row held at degree m would turn one reduced condition into a
        # constant and leave the Jacobian structurally singular.
        m = self.m
        self.j_deg = 0 if self.p_int == 0 else m
        self._sq_down = collocation_float(m + 1, m)
        self._int_t = int_matrix_float_t(m)
        self._band_k = band_float(self.i_deg, self.j_deg)
        t3 = self.i_deg + self.j_deg
        self.row_deg = max(t3, m + 1)
        self._elev12o = elevation_float(m, self.row_deg - m)
        gap3 = self.row_deg - t3
        self._elev3o = elevation_float(t3, gap3) if gap3 > 0 else None
        needs_chain = (self.p_int is not None and self.p_int >= 2) or self.e is not None
        if needs_chain:
            self._band_ww = band_float(m, m)
            self._sq_prod = collocation_float(2 * m, m)

    # -- pieces ---------------------------------------------------------------

    def chain(self, c: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Antiderivative coefficients (g, h) for z' and z (exact degrees)."""
        g = self._pm_t @ c + self._b_ones
        h = self._pm1_t @ g + self._v0_ones
        return g, h

    def chain_squashed(self, c: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(g, h) with each antiderivative forced back to degree m."""
        g = (self._pm_t @ c + self._b_ones) @ self._sq_down
        h = self._int_t @ g + self._v0_ones[: self.m + 2]
        return g, h @ self._sq_down

    def _s_row(self, h: np.ndarray) -> np.ndarray:
        """Coefficient row of g(M z) over its working basis."""
        if self.p_int == 0:
            return np.ones(1)
        if self.mode == "eom":
            if self.p_int == 1:
                return self.m_tr * h
            if self.p_int is not None:
                row = h
                for i, band in enumerate(self._pw_bands, start=1):
                    out = np.zeros((i + 1) * self.q + 1)
                    kernels.band_accumulate(h, band, row, out)
                    row = out
                return self.m_tr**self.p_int * row
            # series path
            n = self.problem.n_series
            q = self.q
            srow = np.full(self.j_deg + 1, self.e[0])
            lift = self._elev_terms[0]
            srow += self.e[1] * (h @ lift if lift is not None else h)
            row = h
            for i in range(2, n + 1):
                out = np.zeros(i * q + 1)
                kernels.band_accumulate(h, self._pw_bands[i - 2], row, out)
                row = out
                if self.e[i] != 0.0:
                    lift = self._elev_terms[i - 1]
                    srow += self.e[i] * (row @ lift if lift is not None else row)
            return srow
        # oom: h is already at degree m; every product is forced back too
        m = self.m
        if self.p_int == 1:
            return self.m_tr * h
        if self.p_int is not None:
            row = h
            for _ in range(self.p_int - 1):
                out = np.zeros(2 * m + 1)
                kernels.band_accumulate(h, self._band_ww, row, out)
                row = out @ self._sq_prod
            return self.m_tr**self.p_int * row
        n = self.problem.n_series
        srow = np.full(m + 1, self.e[0])
        srow += self.e[1] * h
        row = h
        for i in range(2, n + 1):
            out = np.zeros(2 * m + 1)
            kernels.band_accumulate(h, self._band_ww, row, out)
            row = out @ self._sq_prod
            if self.e[i] != 0.0:
                srow += self.e[i] * row
        return srow

    # -- assembly ---------------------------------------------------------------

    def residual_row(self, c: np.ndarray) -> np.ndarray:
        """Residual coefficients over psi_max_num (things summed at max_num)."""
        c = np.asarray(c, dtype=float)
        if c.shape != (self.m + 1,):
            raise ValueError(f"c must have length {self.m + 1}")
        if self.mode == "eom":
            g, h = self.chain(c)
            srow = self._s_row(h)

            term12 = np.zeros(self.m + 2)
            kernels.band_accumulate(self._d11, self._band_d, c, term12)  # s z''
            term12 += 2.0 * g  # + 2 z'

            term3 = np.zeros(self.i_deg + len(srow))
            kernels.band_accumulate(self.k_vec, self._band_k, srow, term3)

            out = term12 @ self._elev12 if self._elev12 is not None else term12.copy()
            out += term3 @ self._elev3 if self._elev3 is not None else term3
            return out

        g, hw = self.chain_squashed(c)
        srow = self._s_row(hw)

        raw12 = np.zeros(self.m + 2)
        kernels.band_accumulate(self._d11, self._band_d, c, raw12)  # s z''
        t12 = raw12 @ self._sq_down + 2.0 * g  # + 2 z'

        term3 = np.zeros(self.i_deg + len(srow))
        kernels.band_accumulate(self.k_vec, self._band_k, srow, term3)

        # summation is not an operator: the legs meet exactly at the final
        # row degree, which always exceeds m (see _setup_oom)
        out = t12 @ self._elev12o
        out += term3 @ self._elev3o if self._elev3o is not None else term3
        return out

    def reduced(self, c: np.ndarray) -> np.ndarray:
        """Galerkin-reduced residual R* = R . Q(max_num, m), length m+1."""
        return self.residual_row(c) @ self._q_red

    def projected(self, c: np.ndarray) -> np.ndarray:
        """Reduced conditions in projection-coefficient form (same roots).

        Equals reduced(c) @ G_m^{-1}: the coefficients of the L2 projection
        of the residual onto the degree-m space.  This is what Newton
        iterates on; see the conditioning note in __init__.
        """
        row = self.residual_row(c)
        return row if self._t_red is None else row @ self._t_red

    def reduced_norm(self, r_projected: np.ndarray) -> float:
        """Max-norm of the reduced conditions, given their projected form."""
        return float(np.max(np.abs(r_projected @ self._g_m)))

    # -- exact-arithmetic twin (test/diagnostic use; eom only) -----------------

    def residual_row_exact(self, c) -> tuple:
        """Residual row with Fraction arithmetic throughout (mode "eom").

        Requires the problem data (a, b, M) and c to be exact rationals (all
        floats are).  Mirrors :meth:`residual_row` term by term.
        """
        if self.mode != "eom":
            raise NotImplementedError("exact assembly is provided for the eom mode")
        m, q = self.m, self.q
        cf = [Fraction(x) for x in c]
        m_tr = Fraction(self.problem.m_trunc)
        b = Fraction(self.problem.b)
        g = [x + b for x in int_matrix(m).transpose().matvec(cf)]
        v0 = Fraction(self.problem.a) / m_tr
        h = CoeffVector(tuple(x + v0 for x in int_matrix(m + 1).transpose().matvec(g)))

        if self.p_int == 0:
            srow = CoeffVector((Fraction(1),))
        elif self.p_int is not None:
            srow = power_row(h, self.p_int)
            srow = CoeffVector(tuple(m_tr**self.p_int * x for x in srow.entries))
        else:
            srow = series_row(self.e, h, self.problem.n_series)

        k_exact, i_deg = forcing_coeffs_exact(self.problem)
        term3 = product_hat(k_exact, srow.degree).rmatvec(srow.entries)

        term1 = product_hat(CoeffVector.make([0, 1]), m).rmatvec(cf)
        term12 = CoeffVector(tuple(t1 + 2 * gg for t1, gg in zip(term1, g)))

        out = elevate_coeffs(term12, self.max_num - (m + 1))
        t3 = elevate_coeffs(CoeffVector(term3), self.max_num - (i_deg + srow.degree))
        return tuple(a_ + b_ for a_, b_ in zip(out.entries, t3.entries))

    def reduced_exact(self, c) -> tuple:
        row = self.residual_row_exact(c)
        return gram_matrix(self.max_num, self.m).transpose().matvec(row)


# ---------------------------------------------------------------------------
# Newton iteration


def _constant_guess(problem: ProblemSpec, m: int) -> np.ndarray:
    """Constant start vector z''(0) = -M f(0) g(a) / 3, or zeros if infinite.

    The value is the regular-singular limit of the mapped equation at s = 0:
    with b = 0 the equation forces 3 z''(0) + M f(0) g(a) = 0 there.
    """
    val = float(problem.m_trunc) * second_deriv_at_zero(problem)
    if not math.isfinite(val):
        val = 0.0
    return np.full(m + 1, val)


def initial_guess(problem: ProblemSpec, m: int, mode: str = "eom") -> np.ndarray:
    """Starting vector for Newton at degree m.

    At m = 2: the constant vector from the regular-singular limit.  For
    m > 2: the converged degree m-1 coefficients (obtained by continuation)
    elevated one degree, which is what the solve driver uses internally.
    """
    if m < 2:
        raise ConfigurationError("working degree m must be at least 2")
    if m == 2:
        return _constant_guess(problem, m)
    prev = solve(problem, SolveConfig(m=m - 1, mode=mode))
    return prev.c @ elevation_float(m - 1, 1)


def _fd_jacobian(system: ResidualSystem, c: np.ndarray, r0: np.ndarray) -> np.ndarray:
    n = len(c)
    jac = np.empty((n, n))
    eps = math.sqrt(np.finfo(float).eps)
    for k in range(n):
        step = eps * max(1.0, abs(c[k]))
        cp = c.copy()
        cp[k] += step
        jac[:, k] = (system.projected(cp) - r0) / step
    return jac


def newton_solve(
    system: ResidualSystem,
    c0: np.ndarray,
    tol: float = 1e-12,
    max_iter: int = 50,
) -> tuple[np.ndarray, int, str]:
    """Newton on the projected residual conditions with monotone backtracking.

    The iteration runs on the projected form of the conditions (see
    ResidualSystem.projected) because its Jacobian stays well conditioned;
    convergence is declared on the max-norm of the reduced conditions
    themselves, or on a full Newton step below the tolerance.

    Each iteration tries the full Newton step first and halves it (at most
    eight times) until the 2-norm of the conditions decreases; well behaved
    systems always accept the full step, so damping costs nothing on the
    easy path.  When no step length decreases the norm the full step is
    taken anyway (a bounded number of times): some cold starts have to climb
    over a ridge before the basin opens up.

    Returns (c, steps_taken, exit_reason) where exit_reason is "residual"
    or "step"; a start that already satisfies the tolerance reports zero
    steps.  Raises :class:`SolverError` on a singular Jacobian and
    :class:`NonConvergenceError` (carrying the best iterate) at the cap or
    once the climb budget is spent.
    """
    c = np.asarray(c0, dtype=float).copy()
    r = system.projected(c)
    r2 = float(np.linalg.norm(r))
    if not math.isfinite(r2):
        raise SolverError("non-finite residual at the starting point")
    rnorm = system.reduced_norm(r)
    if rnorm < tol:
        return c, 0, "residual"
    best_c, best_norm = c.copy(), rnorm
    climbs = 0
    for it in range(1, max_iter + 1):
        jac = _fd_jacobian(system, c, r)
        try:
            step = np.linalg.solve(jac, -r)
        except np.linalg.LinAlgError as exc:
            raise SolverError(
                f"singular Jacobian at iteration {it} (m={system.m}, "
                f"mode={system.mode}, problem={system.problem.name})"
            ) from exc
        lam = 1.0
        accepted = False
        for _ in range(9):
            c_try = c + lam * step
            r_try = system.projected(c_try)
            r2_try = float(np.linalg.norm(r_try))
            if math.isfinite(r2_try) and r2_try < r2:
                accepted = True
                break
            lam *= 0.5
        if not accepted:
            # ridge: nothing descends, so climb with the full step
            climbs += 1
            c_try = c + step
            r_try = system.projected(c_try)
            r2_try = float(np.linalg.norm(r_try))
            if climbs > 8 or not math.isfinite(r2_try):
                raise NonConvergenceError(
                    f"Newton stalled at iteration {it}: no step length "
                    f"decreases the residual (problem={system.problem.name}, "
                    f"m={system.m}, mode={system.mode}, "
                    f"best residual {best_norm:.3e})",
                    best_c=best_c,
                    residual_norm=best_norm,
                    iterations=it,
                )
        c, r, r2 = c_try, r_try, r2_try
        rnorm = system.reduced_norm(r)
        if rnorm < best_norm:
            best_norm, best_c = rnorm, c.copy()
        if rnorm < tol:
            return c, it, "residual"
        if lam == 1.0 and float(np.max(np.abs(step))) < tol:
            return c, it, "step"
    raise NonConvergenceError(
        f"Newton did not converge in {max_iter} iterations "
        f"(problem={system.problem.name}, m={system.m}, mode={system.mode}, "
        f"best residual {best_norm:.3e})",
        best_c=best_c,
        residual_norm=best_norm,
        iterations=max_iter,
    )


# ---------------------------------------------------------------------------
# solution object and driver


@dataclass
class Solution:
    """A converged Galerkin solution, evaluable on [0, M]."""

    problem: ProblemSpec
    m: int
    mode: str
    c: np.ndarray
    g_vec: np.ndarray
    h: np.ndarray
    newton_iters: int
    exit_reason: str
    final_residual_norm: float
    max_num: int
    series_interval: tuple[float, float] | None = None

    def _s_of(self, x) -> np.ndarray:
        m_tr = float(self.problem.m_trunc)
        s = np.asarray(x, dtype=float) / m_tr
        if np.any(s < -1e-12) or np.any(s > 1.0 + 1e-12):
            raise ValueError("x outside [0, M]")
        return np.clip(s, 0.0, 1.0)

    def y_eval(self, x):
        """y(x) = M h^T psi_{m+2}(x / M)."""
        s = self._s_of(x)
        return float(self.problem.m_trunc) * kernels.decasteljau(self.h, s)

    def y_deriv(self, x):
        """y'(x) = g^T psi_{m+1}(x / M)."""
        return kernels.decasteljau(self.g_vec, self._s_of(x))

    def y_second_deriv(self, x):
        """y''(x) = c^T psi_m(x / M) / M."""
        return kernels.decasteljau(self.c, self._s_of(x)) / float(self.problem.m_trunc)


def solve(
    problem: ProblemSpec,
    config: SolveConfig,
    initial_c: np.ndarray | None = None,
) -> Solution:
    """Solve one problem at one degree.

    ``initial_c`` (length m or m+1) takes precedence over both continuation
    and the cold-start guess; with ``config.continuation`` the solver walks
    degrees 2..m, elevating each converged c as the next start.
    """
    e = None
    interval = None
    if problem.uses_series:
        e, interval = series_setup(problem)

    auto_seeded = False
    if initial_c is None and config.mode == "oom":
        # seed the comparison mode with the exact-matrix root at the same
        # degree: the ordinary matrices perturb the system, and the root
        # connected to the exact one is the meaningful thing to measure;
        # whatever other basins the perturbed system grows are solver
        # artifacts, not matrix quality
        twin = SolveConfig(
            m=config.m,
            mode="eom",
            newton_tol=config.newton_tol,
            newton_max_iter=config.newton_max_iter,
            continuation=config.continuation,
        )
        initial_c = solve(problem, twin).c
        auto_seeded = True

    def run(mm: int, guess: np.ndarray) -> tuple[ResidualSystem, np.ndarray, int, str]:
        system = ResidualSystem(problem, mm, config.mode, e)
        c, iters, reason = newton_solve(system, guess, config.newton_tol, config.newton_max_iter)
        return system, c, iters, reason

    if initial_c is not None:
        guess = np.asarray(initial_c, dtype=float)
        if guess.shape == (config.m,):
            guess = guess @ elevation_float(config.m - 1, 1)
        elif guess.shape != (config.m + 1,):
            raise ValueError("initial_c must have length m or m+1")
        try:
            system, c, iters, reason = run(config.m, guess)
        except SolverError:
            if not auto_seeded or config.m <= 2:
                raise
            # the perturbed system can lose the branch next to the exact
            # root at larger degrees; in that case follow its own root
            # family up one degree instead
            prev = solve(
                problem,
                SolveConfig(
                    m=config.m - 1,
                    mode=config.mode,
                    newton_tol=config.newton_tol,
                    newton_max_iter=config.newton_max_iter,
                    continuation=config.continuation,
                ),
            )
            system, c, iters, reason = run(
                config.m, prev.c @ elevation_float(config.m - 1, 1)
            )
    elif config.continuation and config.m > 2:
        c = None
        for mm in range(2, config.m + 1):
            guess = _constant_guess(problem, mm) if c is None else c @ elevation_float(mm - 1, 1)
            system, c, iters, reason = run(mm, guess)
    else:
        system, c, iters, reason = run(config.m, _constant_guess(problem, config.m))

    g_vec, h = system.chain(c)
    return Solution(
        problem=problem,
        m=config.m,
        mode=config.mode,
        c=c,
        g_vec=g_vec,
        h=h,
        newton_iters=iters,
        exit_reason=reason,
        final_residual_norm=float(np.max(np.abs(system.reduced(c)))),
        max_num=system.max_num,
        series_interval=interval,
    )
