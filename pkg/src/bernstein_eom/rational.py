"""Exact rational linear algebra.

All operational matrices in this package are built over ``fractions.Fraction``
so that matrix identities (inverses, band structures, transpose relations)
hold exactly rather than to rounding error.  Floats enter only when a matrix
is handed to the numeric solver via :meth:`RationalMatrix.to_float`.

The sizes involved are small (a few hundred rows at most), so a plain
tuple-of-tuples representation is entirely adequate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Rational = int | Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        # floats are dyadic rationals; the conversion is exact
        return Fraction(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as an exact rational")


@dataclass(frozen=True)
class RationalMatrix:
    """Dense matrix with exact rational entries, stored row-major."""

    data: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.data:
            raise ValueError("matrix must have at least one row")
        width = len(self.data[0])
        if any(len(row) != width for row in self.data):
            raise ValueError("ragged rows")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "RationalMatrix":
        return cls(tuple(tuple(_as_fraction(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        zero = Fraction(0)
        return cls(tuple((zero,) * cols for _ in range(rows)))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.data), len(self.data[0])

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return self.data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.data[i]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(tuple(zip(*self.data)))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        cols = other.transpose().data
        return RationalMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.data
            )
        )

    def matvec(self, v: Sequence[Rational]) -> tuple[Fraction, ...]:
        if len(v) != self.shape[1]:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * _as_fraction(b) for a, b in zip(row, v)) for row in self.data)

    def rmatvec(self, v: Sequence[Rational]) -> tuple[Fraction, ...]:
        """Row vector times matrix: v^T A."""
        if len(v) != self.shape[0]:
            raise ValueError("vector length mismatch")
        vf = [_as_fraction(b) for b in v]
        return tuple(
            sum(vf[i] * self.data[i][j] for i in range(len(vf)))
            for j in range(self.shape[1])
        )

    def solve(self, rhs: Sequence[Rational]) -> tuple[Fraction, ...]:
        """Exact solve A x = rhs by fraction-pivoted Gaussian elimination."""
        n, m = self.shape
        if n != m:
            raise ValueError("solve requires a square matrix")
        a = [list(row) for row in self.data]
        b = [_as_fraction(x) for x in rhs]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col] != 0), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            a[col], a[piv] = a[piv], a[col]
            b[col], b[piv] = b[piv], b[col]
            inv = 1 / a[col][col]
            a[col] = [x * inv for x in a[col]]
            b[col] *= inv
            for r in range(n):
                if r != col and a[r][col] != 0:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                    b[r] -= f * b[col]
        return tuple(b)

    def inverse(self) -> "RationalMatrix":
        n, m = self.shape
        if n != m:
            raise ValueError("inverse requires a square matrix")
        cols = []
        for j in range(n):
            e = [Fraction(0)] * n
            e[j] = Fraction(1)
            cols.append(self.solve(e))
        return RationalMatrix(tuple(zip(*cols)))

    def to_float(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.data], dtype=float)


@dataclass(frozen=True)
class CoeffVector:
    """Coefficient vector over a Bernstein basis of the matching degree.

    ``entries[i]`` multiplies the i-th degree-``degree`` Bernstein basis
    polynomial; the represented function is ``sum_i entries[i] * B_{i,deg}``.
    """

    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("coefficient vector must be non-empty")

    @classmethod
    def make(cls, values: Iterable) -> "CoeffVector":
        return cls(tuple(_as_fraction(x) for x in values))

    @property
    def degree(self) -> int:
        return len(self.entries) - 1

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def to_float(self) -> np.ndarray:
        return np.array([float(x) for x in self.entries], dtype=float)
