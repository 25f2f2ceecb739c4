"""Operational matrices: every operator is checked against an independent
pointwise or quadrature oracle, and the exact-rational ones for identity.
"""

import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.integrate import quad

from bernstein_eom.basis import (
    basis_vector,
    elevate_coeffs,
    eval_basis,
    poly_eval,
)
from bernstein_eom.operators import (
    band_float,
    best_series_coeffs,
    collocate_to_degree,
    collocation_matrix,
    diff_matrix,
    elevation_float,
    gram_float,
    gram_matrix,
    int_matrix,
    power_row,
    product_coeff,
    product_hat,
    product_tilde,
    project_to_degree,
    projection_matrix,
    series_row,
    truncate_to_degree,
    truncation_matrix,
)
from bernstein_eom.rational import CoeffVector, RationalMatrix


def _rand_coeffs(rng, m):
    return CoeffVector.make(Fraction(x) for x in rng.standard_normal(m + 1))


# ---------------------------------------------------------------------------
# differentiation and integration


def test_diff_matrix_small_degrees():
    assert diff_matrix(1) == RationalMatrix.from_rows([[-1], [1]])
    assert diff_matrix(2) == RationalMatrix.from_rows([[-2, 0], [2, -2], [0, 2]])


def test_diff_matrix_against_central_difference():
    """c^T D psi_{m-1} is the derivative of c^T psi_m."""
    rng = np.random.default_rng(21)
    m = 5
    c = _rand_coeffs(rng, m)
    dc = CoeffVector.make(diff_matrix(m).rmatvec(c.entries))
    x, h = 0.37, 1e-6
    fd = (poly_eval(c, x + h) - poly_eval(c, x - h)) / (2 * h)
    assert abs(poly_eval(dc, x) - fd) < 1e-6


def test_int_matrix_row_zero():
    # int_0^x (1-t) dt = x - x^2/2 = (B_{1,2} + B_{2,2})/2
    assert int_matrix(1).row(0) == (0, Fraction(1, 2), Fraction(1, 2))


def test_int_matrix_against_quadrature():
    p = int_matrix(4)
    anti = CoeffVector.make(p.row(2))
    val, _ = quad(lambda t: eval_basis(2, 4, t), 0.0, 0.6, epsabs=1e-14)
    assert abs(poly_eval(anti, 0.6) - val) < 1e-12


def test_derivative_of_antiderivative_is_identity():
    rng = np.random.default_rng(22)
    for m in (1, 4, 10):
        c = _rand_coeffs(rng, m)
        anti = CoeffVector.make(int_matrix(m).rmatvec(c.entries))
        back = CoeffVector.make(diff_matrix(m + 1).rmatvec(anti.entries))
        for x in rng.uniform(0.0, 1.0, size=50):
            assert abs(poly_eval(back, x) - poly_eval(c, x)) < 1e-12


# ---------------------------------------------------------------------------
# products and powers


def test_product_coeff_degree_two_cases():
    assert product_coeff(0, 0, 1, 1) == 1  # (1-x)^2 = B_{0,2}
    assert product_coeff(1, 1, 1, 1) == 1  # x^2 = B_{2,2}
    assert product_coeff(1, 0, 1, 1) == Fraction(1, 2)  # x(1-x) = B_{1,2}/2


def test_product_tilde_x_against_degree_one_basis():
    c = CoeffVector.make([0, 1])  # the polynomial x
    tl = product_tilde(c, 1).to_float()
    got = basis_vector(2, 0.5) @ tl
    np.testing.assert_allclose(got, [0.25, 0.25], atol=1e-15)


def test_product_tilde_pointwise_random():
    rng = np.random.default_rng(23)
    m, n = 3, 2
    c = _rand_coeffs(rng, m)
    tl = product_tilde(c, n).to_float()
    for x in rng.uniform(0.0, 1.0, size=50):
        s = poly_eval(c, x)
        want = s * basis_vector(n, x)
        got = basis_vector(m + n, x) @ tl
        np.testing.assert_allclose(got, want, atol=1e-13)


def test_product_hat_multiply_by_x():
    c = CoeffVector.make([0, 1])
    hat = product_hat(c, 2).to_float()
    x = 0.3
    np.testing.assert_allclose(
        hat @ basis_vector(3, x), x * basis_vector(2, x), atol=1e-13
    )


def test_product_hat_multiply_by_one_elevates():
    ones = CoeffVector.make([1, 1, 1])  # constant 1 at degree 2
    for n in (1, 3):
        hat = product_hat(ones, n)
        rng = np.random.default_rng(24)
        for x in rng.uniform(0.0, 1.0, size=20):
            got = hat.to_float() @ basis_vector(n + 2, x)
            np.testing.assert_allclose(got, basis_vector(n, x), atol=1e-13)


def test_power_row_square_of_x():
    c = CoeffVector.make([0, 1])
    assert power_row(c, 2).entries == (0, 0, 1)  # x^2 = B_{2,2}


def test_power_row_matches_pointwise_cubes():
    rng = np.random.default_rng(25)
    c = _rand_coeffs(rng, 2)
    row = power_row(c, 3)
    assert row.degree == 6
    for x in rng.uniform(0.0, 1.0, size=50):
        assert abs(poly_eval(row, x) - poly_eval(c, x) ** 3) < 1e-12


def test_power_row_matches_repeated_hat_products():
    # column j of tilde(c, n) holds the coefficients of (c^T psi) * B_{j,n},
    # so multiplying by the function once more is a tilde matvec
    rng = np.random.default_rng(26)
    c = _rand_coeffs(rng, 2)
    sq = product_tilde(c, 2).matvec(c.entries)
    cube = product_tilde(c, 4).matvec(sq)
    assert power_row(c, 3).entries == cube


# ---------------------------------------------------------------------------
# Gram matrices, projection, truncation, collocation


def test_gram_matrix_degree_one():
    expect = RationalMatrix.from_rows(
        [[Fraction(1, 3), Fraction(1, 6)], [Fraction(1, 6), Fraction(1, 3)]]
    )
    assert gram_matrix(1, 1) == expect


def test_gram_matrix_against_quadrature():
    q = gram_matrix(4, 2)
    for i in range(5):
        for j in range(3):
            val, _ = quad(
                lambda x: eval_basis(i, 4, x) * eval_basis(j, 2, x), 0.0, 1.0,
                epsabs=1e-14,
            )
            assert abs(float(q[i, j]) - val) < 1e-13


def _leading_minors_positive(mat, n):
    """Exact-rational Gaussian elimination; pivot products are the minors."""
    rows = [[Fraction(mat[i, j]) for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for k in range(n):
        piv = rows[k][k]
        det *= piv
        if det <= 0:
            return False
        for r in range(k + 1, n):
            f = rows[r][k] / piv
            for cidx in range(k, n):
                rows[r][cidx] -= f * rows[k][cidx]
    return True


def test_gram_matrix_symmetric_positive_definite():
    for m in (1, 4, 10):
        q = gram_matrix(m, m)
        assert q == q.transpose()
        assert _leading_minors_positive(q, m + 1)


def test_projection_of_x_squared_is_best_line():
    v = CoeffVector.make([0, 0, 1])  # x^2
    assert project_to_degree(v, 1).entries == (Fraction(-1, 6), Fraction(5, 6))


def test_projection_residual_is_orthogonal():
    """L2 optimality: the projection error is orthogonal to the target basis."""
    rng = np.random.default_rng(27)
    n, m = 5, 2
    v = _rand_coeffs(rng, n)
    w = project_to_degree(v, m)
    for j in range(m + 1):
        ip, _ = quad(
            lambda x: (poly_eval(v, x) - poly_eval(w, x)) * eval_basis(j, m, x),
            0.0, 1.0, epsabs=1e-14,
        )
        assert abs(ip) < 1e-12


def test_projection_matrix_reproduces_low_degree():
    rng = np.random.default_rng(28)
    v = _rand_coeffs(rng, 2)
    lifted = elevate_coeffs(v, 3)
    back = project_to_degree(lifted, 2)
    assert all(a == b for a, b in zip(back.entries, v.entries))


def test_truncation_cuts_high_monomials():
    # x^2 has no monomial terms below degree 2, so cutting at 1 yields zero
    v = CoeffVector.make([0, 0, 1])
    assert truncate_to_degree(v, 1).entries == (0, 0)
    # while a degree-1 polynomial hiding at Bernstein degree 2 survives
    line = elevate_coeffs(CoeffVector.make([2, -1]), 1)
    assert truncate_to_degree(line, 1).entries == (2, -1)


def test_truncation_matrix_shape_and_composition():
    t = truncation_matrix(4, 2)
    assert t.shape == (5, 3)
    rng = np.random.default_rng(29)
    v = _rand_coeffs(rng, 2)
    lifted = elevate_coeffs(v, 2)
    back = CoeffVector.make(t.rmatvec(lifted.entries))
    assert all(a == b for a, b in zip(back.entries, v.entries))


def test_collocation_interpolates_at_uniform_nodes():
    rng = np.random.default_rng(30)
    n, m = 6, 3
    v = _rand_coeffs(rng, n)
    w = collocate_to_degree(v, m)
    from bernstein_eom.basis import poly_eval_exact

    for k in range(m + 1):
        node = Fraction(k, m)
        assert poly_eval_exact(w, node) == poly_eval_exact(v, node)


def test_collocation_reproduces_low_degree_exactly():
    rng = np.random.default_rng(31)
    v = _rand_coeffs(rng, 3)
    lifted = elevate_coeffs(v, 4)
    back = collocate_to_degree(lifted, 3)
    assert all(a == b for a, b in zip(back.entries, v.entries))


def test_collocation_matrix_validates_degrees():
    with pytest.raises(ValueError):
        collocation_matrix(2, 2)
    with pytest.raises(ValueError):
        collocation_matrix(3, 0)


# ---------------------------------------------------------------------------
# best-L2 series fit


def test_best_series_exp_degree_one_closed_form():
    """Least-squares line for e^x on [0,1]: e = (4e-10, 18-6e)."""
    e = best_series_coeffs(math.exp, 1, 0.0, 1.0)
    np.testing.assert_allclose(
        e, [4 * math.e - 10, 18 - 6 * math.e], rtol=0, atol=1e-12
    )


def test_best_series_beats_taylor_truncation():
    for n in range(1, 11):
        e = best_series_coeffs(math.exp, n, 0.0, 1.0)
        taylor = np.array([1.0 / math.factorial(k) for k in range(n + 1)])

        def sq_err(coeffs):
            def f(x):
                return (math.exp(x) - np.polyval(coeffs[::-1], x)) ** 2

            val, _ = quad(f, 0.0, 1.0, epsabs=1e-16)
            return val

        assert sq_err(e) <= sq_err(taylor) + 1e-15


def test_series_row_linear_term_is_elevation():
    e = (0.0, 1.0, 0.0)
    h = CoeffVector.make([0, 1])
    row = series_row(e, h, 2)
    assert row.entries == (0, Fraction(1, 2), 1)


def test_series_row_matches_pointwise_sum():
    rng = np.random.default_rng(32)
    e = rng.standard_normal(4)
    h = _rand_coeffs(rng, 2)
    row = series_row(e, h, 3)
    assert row.degree == 6
    for x in rng.uniform(0.0, 1.0, size=50):
        hv = poly_eval(h, x)
        want = sum(e[i] * hv**i for i in range(4))
        assert abs(poly_eval(row, x) - want) < 1e-11


def test_series_row_validates_inputs():
    h = CoeffVector.make([0, 1])
    with pytest.raises(ValueError):
        series_row((1.0, 2.0), h, 1)
    with pytest.raises(ValueError):
        series_row((1.0, 2.0), h, 2)  # needs n+1 coefficients


# ---------------------------------------------------------------------------
# float lookup tables


def test_float_tables_match_rational_matrices():
    from bernstein_eom.basis import increaser

    np.testing.assert_array_equal(gram_float(4, 2), gram_matrix(4, 2).to_float())
    np.testing.assert_array_equal(elevation_float(3, 2), increaser(3, 2).to_float())


def test_band_float_entries():
    band = band_float(2, 3)
    assert band.shape == (3, 4)
    for k in range(3):
        for j in range(4):
            assert band[k, j] == float(product_coeff(k, j, 2, 3))
