"""Bernstein basis on [0, 1]: evaluation and exact basis-change matrices.

The degree-m basis is ``B_{i,m}(x) = C(m,i) x^i (1-x)^(m-i)`` for i = 0..m,
collected as the column vector ``psi_m(x)``.  Everything here that is a
matrix is exact rational; everything that is a point value is float.

Conventions used throughout the package:

* ``matrix_a(m)``        : psi_m(x) = A_m @ (1, x, ..., x^m)
* ``matrix_a_inv(m)``    : closed-form inverse of A_m
* ``monomial_coeffs(i,m)``: row d with x^i = d^T psi_m(x)
* ``k_matrices(m,i)``    : zero-padding selectors [I|0] and [0|I]
* ``increaser(m,i)``     : E with psi_m(x) = E @ psi_{m+i}(x)
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

import numpy as np

from . import kernels
from .kernels import py_backend
from .rational import CoeffVector, RationalMatrix


def eval_basis(i: int, m: int, x: float) -> float:
    """Value of B_{i,m} at x in [0, 1]."""
    if m < 0 or not 0 <= i <= m:
        raise ValueError(f"basis index i={i} out of range for degree m={m}")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x={x} outside [0, 1]")
    return comb(m, i) * x**i * (1.0 - x) ** (m - i)


def basis_vector(m: int, x: float) -> np.ndarray:
    """All degree-m basis values psi_m(x), length m+1.

    Uses the stable degree-raising recurrence rather than raw powers, so the
    partition-of-unity sum holds to rounding error at every m.
    """
    if m < 0:
        raise ValueError("degree must be nonnegative")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x={x} outside [0, 1]")
    vals = np.zeros(m + 1)
    vals[0] = 1.0
    for d in range(1, m + 1):
        vals[d] = x * vals[d - 1]
        for i in range(d - 1, 0, -1):
            vals[i] = x * vals[i - 1] + (1.0 - x) * vals[i]
        vals[0] *= 1.0 - x
    return vals


def matrix_a(m: int) -> RationalMatrix:
    """Basis-change matrix A_m with psi_m(x) = A_m @ (1, x, ..., x^m).

    Row i carries i leading zeros, then (-1)^k C(m,i) C(m-i,k) at column i+k.
    Upper triangular with determinant prod_i C(m,i).
    """
    if m < 0:
        raise ValueError("degree must be nonnegative")
    rows = []
    for i in range(m + 1):
        row = [Fraction(0)] * (m + 1)
        for k in range(m - i + 1):
            row[i + k] = Fraction((-1) ** k * comb(m, i) * comb(m - i, k))
        rows.append(tuple(row))
    return RationalMatrix(tuple(rows))


def matrix_a_inv(m: int) -> RationalMatrix:
    """Closed-form inverse of A_m: entry (i,j) = C(m-i, j-i)/C(m,j) for j >= i."""
    if m < 0:
        raise ValueError("degree must be nonnegative")
    rows = []
    for i in range(m + 1):
        row = [
            Fraction(comb(m - i, j - i), comb(m, j)) if j >= i else Fraction(0)
            for j in range(m + 1)
        ]
        rows.append(tuple(row))
    return RationalMatrix(tuple(rows))


def monomial_coeffs(i: int, m: int) -> CoeffVector:
    """Vector d with x^i = d^T psi_m(x); row i of matrix_a_inv(m)."""
    if not 0 <= i <= m:
        raise ValueError(f"monomial power i={i} out of range for degree m={m}")
    return CoeffVector.make(
        Fraction(comb(m - i, j - i), comb(m, j)) if j >= i else Fraction(0)
        for j in range(m + 1)
    )


def k_matrices(m: int, i: int) -> tuple[RationalMatrix, RationalMatrix]:
    """Padding selectors K = [I_m | 0] and K' = [0 | I_m], both m x (m+i)."""
    if m < 1 or i < 0:
        raise ValueError("need m >= 1 and pad i >= 0")
    left = RationalMatrix.from_rows(
        [[1 if c == r else 0 for c in range(m + i)] for r in range(m)]
    )
    right = RationalMatrix.from_rows(
        [[1 if c == r + i else 0 for c in range(m + i)] for r in range(m)]
    )
    return left, right


def increaser(m: int, i: int) -> RationalMatrix:
    """Degree increaser E_{m,i} with psi_m(x) = E_{m,i} @ psi_{m+i}(x).

    Equal to A_m @ K_{m+1,i} @ matrix_a_inv(m+i); built here from the
    equivalent banded closed form E[k, j] = C(m,k) C(i,j-k) / C(m+i,j)
    (j in [k, k+i]), which scales to the large degrees the solver needs.
    """
    if m < 0 or i < 0:
        raise ValueError("need m >= 0 and gap i >= 0")
    big = m + i
    rows = []
    for k in range(m + 1):
        row = [Fraction(0)] * (big + 1)
        cmk = comb(m, k)
        for j in range(k, k + i + 1):
            row[j] = Fraction(cmk * comb(i, j - k), comb(big, j))
        rows.append(tuple(row))
    return RationalMatrix(tuple(rows))


def elevate_coeffs(v: CoeffVector, i: int) -> CoeffVector:
    """Rewrite v over the degree (deg+i) basis without changing the function.

    Returns E_{deg,i}^T v, so ``poly_eval`` of the result equals that of v.
    """
    if i < 0:
        raise ValueError("gap must be nonnegative")
    if i == 0:
        return v
    m = v.degree
    big = m + i
    out = [Fraction(0)] * (big + 1)
    for k, vk in enumerate(v.entries):
        if vk:
            cmk = comb(m, k)
            for j in range(k, k + i + 1):
                out[j] += vk * Fraction(cmk * comb(i, j - k), comb(big, j))
    return CoeffVector(tuple(out))


def poly_eval(v: CoeffVector, x: float) -> float:
    """Evaluate v^T psi_deg(x) by de Casteljau; x must lie in [0, 1]."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x={x} outside [0, 1]")
    return float(kernels.decasteljau(v.to_float(), x))


def poly_eval_exact(v: CoeffVector, x: Fraction) -> Fraction:
    """Exact-rational de Casteljau evaluation (test/diagnostic use)."""
    vals = py_backend.decasteljau(
        np.array(v.entries, dtype=object), np.array([Fraction(x)], dtype=object)
    )
    return vals[0]
