"""Exact operational matrices over the Bernstein basis.

The defining property of everything in this module is that no approximation
is made: differentiation, integration and multiplication of polynomials in
Bernstein form are represented by exact rational matrices whose output lives
in a (possibly higher-degree) Bernstein basis.  Degree growth is embraced
rather than squashed away.

Two lossy degree-lowering operators support the comparison ("ordinary")
mode and diagnostics: ``project_to_degree`` (L2-best) and
``truncate_to_degree`` (power-basis cutoff, the classical fixed-degree
operational-matrix semantics).

Float lookup tables for the numeric solver are built here as well.  They use
exact integer arithmetic followed by one correctly-rounded division per
entry, so each float entry is the nearest double to the exact rational.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Sequence

import mpmath
import numpy as np

from .basis import elevate_coeffs, k_matrices, matrix_a, matrix_a_inv, monomial_coeffs
from .errors import NumericError
from .rational import CoeffVector, RationalMatrix

# ---------------------------------------------------------------------------
# differentiation / integration


def diff_matrix(m: int) -> RationalMatrix:
    """D_m, (m+1) x m, with d/dx psi_m(x) = D_m @ psi_{m-1}(x)."""
    if m < 1:
        raise ValueError("differentiation needs degree m >= 1")
    k, kp = k_matrices(m, 1)
    kt, kpt = k.transpose(), kp.transpose()
    return RationalMatrix.from_rows(
        [
            [m * (kpt[i, j] - kt[i, j]) for j in range(m)]
            for i in range(m + 1)
        ]
    )


def int_matrix(m: int) -> RationalMatrix:
    """P_m, (m+1) x (m+2), with int_0^x psi_m(t) dt = P_m @ psi_{m+1}(x).

    Row i is 1/(m+1) times (i+1 zeros followed by m+1-i ones).
    """
    if m < 0:
        raise ValueError("degree must be nonnegative")
    w = Fraction(1, m + 1)
    rows = []
    for i in range(m + 1):
        rows.append(tuple(w if j > i else Fraction(0) for j in range(m + 2)))
    return RationalMatrix(tuple(rows))


# ---------------------------------------------------------------------------
# products and powers


def product_coeff(k: int, j: int, m: int, n: int) -> Fraction:
    """a(k,j,m,n) with B_{k,m} B_{j,n} = a(k,j,m,n) B_{k+j,m+n}."""
    if not (0 <= k <= m and 0 <= j <= n):
        raise ValueError("product indices out of range")
    return Fraction(comb(m, k) * comb(n, j), comb(m + n, k + j))


def product_tilde(c: CoeffVector, n: int) -> RationalMatrix:
    """Tilde product matrix of c (degree m) against the degree-n basis.

    Shape (m+n+1) x (n+1); column j holds the degree m+n coefficients of
    (c^T psi_m) * B_{j,n}, i.e. entry (i,j) = c_{i-j} a(i-j, j, m, n) on the
    band 0 <= i-j <= m and zero elsewhere.  Thus
    (c^T psi_m(x)) psi_n(x) = product_tilde(c,n)^T ... transposed convention:
    psi_n(x) (c^T psi_m(x)) = product_hat(c,n) @ psi_{m+n}(x).
    """
    if n < 0:
        raise ValueError("basis degree must be nonnegative")
    m = c.degree
    rows = []
    for i in range(m + n + 1):
        row = [
            c[i - j] * product_coeff(i - j, j, m, n) if 0 <= i - j <= m else Fraction(0)
            for j in range(n + 1)
        ]
        rows.append(tuple(row))
    return RationalMatrix(tuple(rows))


def product_hat(c: CoeffVector, n: int) -> RationalMatrix:
    """Hat product matrix: psi_n(x) (c^T psi_m(x)) = hat @ psi_{m+n}(x).

    Shape (n+1) x (m+n+1); the transpose of :func:`product_tilde`.
    """
    return product_tilde(c, n).transpose()


def power_row(c: CoeffVector, p: int) -> CoeffVector:
    """Coefficients of (c^T psi_m)^p over the degree p*m basis.

    Computed as c^T prod_{i=1}^{p-1} hat(c, i*m); each factor multiplies the
    running row by the function once more, with no projection step.
    """
    if p < 1:
        raise ValueError("power p must be a positive integer")
    m = c.degree
    row = list(c.entries)
    deg = m
    for _ in range(p - 1):
        out = [Fraction(0)] * (deg + m + 1)
        for k, ck in enumerate(c.entries):
            if ck:
                for j, rj in enumerate(row):
                    if rj:
                        out[k + j] += ck * product_coeff(k, j, m, deg) * rj
        row = out
        deg += m
    return CoeffVector(tuple(row))


# ---------------------------------------------------------------------------
# Galerkin (Gram) matrices and projection


def gram_matrix(big: int, small: int) -> RationalMatrix:
    """Q with Q[i,j] = int_0^1 B_{i,big}(x) B_{j,small}(x) dx, exact.

    Entry (i,j) = C(big,i) C(small,j) (i+j)! (big+small-i-j)! / (big+small+1)!.
    """
    if big < 0 or small < 0:
        raise ValueError("degrees must be nonnegative")
    tot = big + small
    denom = factorial(tot + 1)
    rows = []
    for i in range(big + 1):
        ci = comb(big, i)
        rows.append(
            tuple(
                Fraction(ci * comb(small, j) * factorial(i + j) * factorial(tot - i - j), denom)
                for j in range(small + 1)
            )
        )
    return RationalMatrix(tuple(rows))


@lru_cache(maxsize=None)
def projection_matrix(n: int, m: int) -> RationalMatrix:
    """Matrix sending degree-n coefficients to their L2-best degree-m ones.

    Solves G_m @ p = gram(n, m)^T @ v for every basis vector; exact rational.
    """
    if n < 0 or m < 0:
        raise ValueError("degrees must be nonnegative")
    return gram_matrix(m, m).inverse() @ gram_matrix(n, m).transpose()


def project_to_degree(v: CoeffVector, m: int) -> CoeffVector:
    """L2-best representation of v at degree m (exact when lowering is exact).

    Raising the degree is lossless and delegates to ``elevate_coeffs``;
    lowering solves the normal equations exactly in rationals.
    """
    n = v.degree
    if n <= m:
        return elevate_coeffs(v, m - n)
    return CoeffVector(projection_matrix(n, m).matvec(v.entries))


@lru_cache(maxsize=None)
def truncation_matrix(n: int, m: int) -> RationalMatrix:
    """Matrix sending degree-n coefficients to degree m by power-basis cutoff.

    Classical fixed-degree operational matrices act on the truncated power
    series of the operand: convert to monomial coefficients (via A_n), drop
    everything above x^m, convert back (via A_m^-1).  Unlike the L2-best
    projection this discards the tail outright, so the committed error is
    the full weight of the dropped monomials.  Shape (n+1) x (m+1), acting
    on coefficient rows from the right.
    """
    if m < 0 or n <= m:
        raise ValueError("truncation needs n > m >= 0")
    a_n = matrix_a(n)
    a_inv_m = matrix_a_inv(m)
    rows = []
    for i in range(n + 1):
        tau = a_n.row(i)[: m + 1]
        rows.append(a_inv_m.rmatvec(tau))
    return RationalMatrix.from_rows(rows)


def truncate_to_degree(v: CoeffVector, m: int) -> CoeffVector:
    """Power-basis cutoff of v at degree m (exact elevation when raising)."""
    n = v.degree
    if n <= m:
        return elevate_coeffs(v, m - n)
    return CoeffVector(tuple(truncation_matrix(n, m).rmatvec(v.entries)))


@lru_cache(maxsize=None)
def collocation_matrix(n: int, m: int) -> RationalMatrix:
    """Matrix sending degree-n coefficients to the degree-m interpolant
    at the m+1 uniform nodes k/m.

    The third classical way to hold a fixed degree: instead of fitting in
    L2 or cutting the power series, require equality at collocation points.
    The committed error is the aliasing term proportional to the monic node
    polynomial, which oscillates over the whole interval.  Shape
    (n+1) x (m+1), acting on coefficient rows from the right.
    """
    if m < 1 or n <= m:
        raise ValueError("collocation needs n > m >= 1")
    nodes = [Fraction(k, m) for k in range(m + 1)]

    def bval(i: int, deg: int, x: Fraction) -> Fraction:
        return comb(deg, i) * x**i * (1 - x) ** (deg - i)

    v_n = RationalMatrix.from_rows(
        [[bval(i, n, x) for x in nodes] for i in range(n + 1)]
    )
    v_m = RationalMatrix.from_rows(
        [[bval(i, m, x) for x in nodes] for i in range(m + 1)]
    )
    return v_n @ v_m.inverse()


def collocate_to_degree(v: CoeffVector, m: int) -> CoeffVector:
    """Uniform-node interpolant of v at degree m (exact elevation when raising)."""
    n = v.degree
    if n <= m:
        return elevate_coeffs(v, m - n)
    return CoeffVector(tuple(collocation_matrix(n, m).rmatvec(v.entries)))


# ---------------------------------------------------------------------------
# best-L2 monomial series


def best_series_coeffs(
    f: Callable[[float], float],
    n: int,
    a: float,
    b: float,
    moments: Callable[[int], float] | None = None,
) -> np.ndarray:
    """Monomial coefficients of the L2([a,b])-best degree-n polynomial for f.

    Solves e^T U = (int f t_n^T) with U[i,j] = int_a^b x^{i+j} dx.  U and its
    inverse are kept in exact rationals (the endpoints are dyadic rationals,
    so this is well defined); the moments are closed-form when the caller
    supplies them and high-accuracy adaptive quadrature otherwise.  The
    ill-conditioning of U is exactly why the moments are taken at extended
    precision: rounding there would be amplified by U^{-1}.
    """
    if n < 0:
        raise ValueError("series degree must be nonnegative")
    if n > 30:
        raise ValueError(f"series degree {n} exceeds the supported limit of 30")
    if not b > a:
        raise ValueError("need b > a")
    af, bf = Fraction(a), Fraction(b)
    u_rows = []
    for i in range(n + 1):
        u_rows.append(
            tuple(
                (bf ** (i + j + 1) - af ** (i + j + 1)) / (i + j + 1)
                for j in range(n + 1)
            )
        )
    u_inv = RationalMatrix(tuple(u_rows)).inverse()

    with mpmath.workdps(50):
        if moments is None:
            mu = [mpmath.quad(lambda x, k=i: f(x) * x**k, [a, b]) for i in range(n + 1)]
        else:
            mu = [mpmath.mpf(moments(i)) for i in range(n + 1)]
        if any(not mpmath.isfinite(v) for v in mu):
            raise NumericError("non-finite moment while fitting series coefficients")
        e = []
        for j in range(n + 1):
            acc = mpmath.mpf(0)
            for i in range(n + 1):
                q = u_inv[j, i]
                acc += mu[i] * mpmath.mpf(q.numerator) / q.denominator
            e.append(float(acc))
    out = np.array(e, dtype=float)
    if not np.all(np.isfinite(out)):
        raise NumericError("series coefficients overflowed")
    return out


def series_row(e: Sequence[float], h: CoeffVector, n: int) -> CoeffVector:
    """Coefficients of sum_i e_i (h^T psi_q)^i over the degree q*n basis.

    Term i is obtained by elevating the exact power row of h from degree q*i
    to q*n; nothing is projected.  Requires n >= 2 and len(e) == n + 1.
    """
    if n < 2:
        raise ValueError("series degree must be at least 2")
    if len(e) != n + 1:
        raise ValueError(f"need {n + 1} series coefficients, got {len(e)}")
    q = h.degree
    if q < 1:
        raise ValueError("h must have degree >= 1")
    top = q * n
    out = [Fraction(e[0]) for _ in range(top + 1)]  # e0 * d_{0,top} (all ones)
    powers = list(h.entries)
    deg = q
    for i in range(1, n + 1):
        if i > 1:
            nxt = [Fraction(0)] * (deg + q + 1)
            for k, hk in enumerate(h.entries):
                if hk:
                    for j, rj in enumerate(powers):
                        if rj:
                            nxt[k + j] += hk * product_coeff(k, j, q, deg) * rj
            powers = nxt
            deg += q
        if e[i]:
            lifted = elevate_coeffs(CoeffVector(tuple(powers)), top - deg)
            ei = Fraction(e[i])
            for t in range(top + 1):
                out[t] += ei * lifted[t]
    return CoeffVector(tuple(out))


# ---------------------------------------------------------------------------
# float lookup tables for the numeric solver
#
# Each entry is computed as one big-integer ratio and a single correctly
# rounded division, so the float tables match the rational matrices to the
# nearest double.  Cached: they depend only on integer shape parameters.


@lru_cache(maxsize=None)
def band_float(q: int, n: int) -> np.ndarray:
    """Product coefficient table a(k,j,q,n) as floats, shape (q+1, n+1)."""
    out = np.empty((q + 1, n + 1))
    for k in range(q + 1):
        cq = comb(q, k)
        for j in range(n + 1):
            out[k, j] = cq * comb(n, j) / comb(q + n, k + j)
    return out


@lru_cache(maxsize=None)
def elevation_float(d: int, gap: int) -> np.ndarray:
    """Row-elevation matrix E_{d,gap} as floats, shape (d+1, d+gap+1)."""
    big = d + gap
    out = np.zeros((d + 1, big + 1))
    for k in range(d + 1):
        cdk = comb(d, k)
        for j in range(k, k + gap + 1):
            out[k, j] = cdk * comb(gap, j - k) / comb(big, j)
    return out


@lru_cache(maxsize=None)
def gram_float(big: int, small: int) -> np.ndarray:
    """gram_matrix as floats, shape (big+1, small+1)."""
    tot = big + small
    denom = factorial(tot + 1)
    out = np.empty((big + 1, small + 1))
    for i in range(big + 1):
        ci = comb(big, i)
        for j in range(small + 1):
            out[i, j] = ci * comb(small, j) * factorial(i + j) * factorial(tot - i - j) / denom
    return out


@lru_cache(maxsize=None)
def projection_float(n: int, m: int) -> np.ndarray:
    """projection_matrix(n, m) as floats, shape (m+1, n+1)."""
    return projection_matrix(n, m).to_float()


@lru_cache(maxsize=None)
def truncation_float(n: int, m: int) -> np.ndarray:
    """truncation_matrix(n, m) as floats, shape (n+1, m+1), row convention."""
    return truncation_matrix(n, m).to_float()


@lru_cache(maxsize=None)
def collocation_float(n: int, m: int) -> np.ndarray:
    """collocation_matrix(n, m) as floats, shape (n+1, m+1), row convention."""
    return collocation_matrix(n, m).to_float()


@lru_cache(maxsize=None)
def int_matrix_float_t(m: int) -> np.ndarray:
    """P_m^T as floats, shape (m+2, m+1)."""
    return int_matrix(m).to_float().T


@lru_cache(maxsize=None)
def monomial_float(i: int, m: int) -> np.ndarray:
    """monomial_coeffs(i, m) as floats, length m+1."""
    return monomial_coeffs(i, m).to_float()
