"""Bernstein basis: evaluation, basis change, and degree elevation."""

import math
from fractions import Fraction

import numpy as np
import pytest

from bernstein_eom.basis import (
    basis_vector,
    elevate_coeffs,
    eval_basis,
    increaser,
    k_matrices,
    matrix_a,
    matrix_a_inv,
    monomial_coeffs,
    poly_eval,
    poly_eval_exact,
)
from bernstein_eom.rational import CoeffVector, RationalMatrix


def test_eval_basis_midpoint():
    # B_{1,2}(x) = 2x(1-x)
    assert eval_basis(1, 2, 0.5) == pytest.approx(0.5, abs=1e-15)


def test_basis_vector_values():
    np.testing.assert_allclose(basis_vector(2, 0.5), [0.25, 0.5, 0.25], atol=1e-15)


def test_partition_of_unity():
    rng = np.random.default_rng(7)
    for m in range(1, 21):
        xs = rng.uniform(0.0, 1.0, size=100)
        for x in xs:
            assert abs(sum(eval_basis(i, m, x) for i in range(m + 1)) - 1.0) < 1e-14


def test_reflection_symmetry():
    """B_{i,m}(x) = B_{m-i,m}(1-x)."""
    rng = np.random.default_rng(8)
    for m in (1, 3, 6, 11):
        for x in rng.uniform(0.0, 1.0, size=20):
            for i in range(m + 1):
                assert abs(eval_basis(i, m, x) - eval_basis(m - i, m, 1.0 - x)) < 1e-14


def test_matrix_a_known_rows():
    a1 = matrix_a(1)
    assert a1 == RationalMatrix.from_rows([[1, -1], [0, 1]])
    a2 = matrix_a(2)
    assert a2.row(0) == (1, -2, 1)
    # triangular with binomial diagonal, so det = 1 * 2 * 1
    det = math.prod(a2[i, i] for i in range(3))
    assert det == 2


def test_matrix_a_maps_monomials_to_basis():
    # the alternating binomial rows cancel badly in floats at m=12, so the
    # matvec side runs in rationals; the basis recurrence side stays float
    rng = np.random.default_rng(9)
    for m in (2, 5, 12):
        a = matrix_a(m)
        for x in rng.uniform(0.0, 1.0, size=10):
            fx = Fraction(x)
            mono = [fx**j for j in range(m + 1)]
            want = np.array([float(v) for v in a.matvec(mono)])
            np.testing.assert_allclose(want, basis_vector(m, x), atol=1e-12)


def test_matrix_a_inverse_is_exact():
    for m in range(1, 21):
        assert matrix_a(m) @ matrix_a_inv(m) == RationalMatrix.identity(m + 1)


def test_matrix_a_inv_known_values():
    assert matrix_a_inv(2).row(0) == (1, 1, 1)  # x^0 is the sum of the basis
    assert matrix_a_inv(2)[1, 2] == 1


def test_monomial_coeffs_x_in_degree_2():
    assert monomial_coeffs(1, 2).entries == (0, Fraction(1, 2), 1)


def test_k_matrices_select_head_and_tail():
    k, kp = k_matrices(2, 1)
    assert k.shape == (2, 3)
    assert k.matvec((5, 7, 9)) == (5, 7)
    assert kp.matvec((5, 7, 9)) == (7, 9)


def test_increaser_degree_one_gap_one():
    # 1-x = B_{0,2} + B_{1,2}/2 and x = B_{1,2}/2 + B_{2,2}
    expect = RationalMatrix.from_rows(
        [[1, Fraction(1, 2), 0], [0, Fraction(1, 2), 1]]
    )
    assert increaser(1, 1) == expect


def test_increaser_preserves_evaluation():
    rng = np.random.default_rng(10)
    e = increaser(2, 2).to_float()
    for x in rng.uniform(0.0, 1.0, size=25):
        np.testing.assert_allclose(e @ basis_vector(4, x), basis_vector(2, x), atol=1e-14)


def test_elevate_coeffs_known_case():
    v = CoeffVector.make([0, 1])  # the polynomial x
    assert elevate_coeffs(v, 1).entries == (0, Fraction(1, 2), 1)


def test_elevate_coeffs_evaluation_invariance():
    rng = np.random.default_rng(11)
    for m, gap in ((3, 1), (7, 4), (12, 10)):
        vals = rng.standard_normal(m + 1)
        v = CoeffVector.make([Fraction(x) for x in vals])
        w = elevate_coeffs(v, gap)
        assert w.degree == m + gap
        for x in rng.uniform(0.0, 1.0, size=100):
            assert abs(poly_eval(w, x) - poly_eval(v, x)) < 1e-13


def test_poly_eval_exact_matches_float_path():
    v = CoeffVector.make([0, Fraction(1, 2), 1])  # represents x
    assert poly_eval(v, 0.5) == pytest.approx(0.5, abs=1e-15)
    assert poly_eval_exact(v, Fraction(1, 3)) == Fraction(1, 3)
