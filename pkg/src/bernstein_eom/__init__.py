"""Spectral Galerkin solver for x y'' + 2 y' + x f(x) g(y) = 0 built on
exact operational matrices for the Bernstein basis.

Matrices (differentiation, integration, degree elevation, products, Gram)
are assembled from binomial/factorial closed forms over exact rationals,
then rounded once to floats for the Newton iteration.  An ordinary
operational-matrix mode (square matrices that interpolate every operator
output back to the working degree) is available for comparison.
"""

from .basis import (
    basis_vector,
    elevate_coeffs,
    eval_basis,
    increaser,
    k_matrices,
    matrix_a,
    matrix_a_inv,
    monomial_coeffs,
    poly_eval,
)
from .errors import (
    ConfigurationError,
    IntegrationError,
    NonConvergenceError,
    NumericError,
    SolverError,
)
from .metrics import SweepRecord, SweepReport, emit, norm1, run_sweep
from .operators import (
    best_series_coeffs,
    diff_matrix,
    gram_matrix,
    int_matrix,
    power_row,
    product_coeff,
    product_hat,
    product_tilde,
    projection_matrix,
    series_row,
)
from .problems import (
    CANONICAL_NAMES,
    ProblemSpec,
    get_problem,
    load_problem_file,
    problem_names,
)
from .rational import CoeffVector, RationalMatrix
from .reference import determine_m, exact_solution, get_reference, rk_reference
from .solver import SolveConfig, Solution, initial_guess, solve

__version__ = "0.1.0"

__all__ = [
    "CANONICAL_NAMES",
    "CoeffVector",
    "ConfigurationError",
    "IntegrationError",
    "NonConvergenceError",
    "NumericError",
    "ProblemSpec",
    "RationalMatrix",
    "SolveConfig",
    "Solution",
    "SolverError",
    "SweepRecord",
    "SweepReport",
    "basis_vector",
    "best_series_coeffs",
    "determine_m",
    "diff_matrix",
    "elevate_coeffs",
    "emit",
    "eval_basis",
    "exact_solution",
    "get_problem",
    "get_reference",
    "gram_matrix",
    "increaser",
    "initial_guess",
    "int_matrix",
    "k_matrices",
    "load_problem_file",
    "matrix_a",
    "matrix_a_inv",
    "monomial_coeffs",
    "norm1",
    "poly_eval",
    "power_row",
    "problem_names",
    "product_coeff",
    "product_hat",
    "product_tilde",
    "projection_matrix",
    "rk_reference",
    "run_sweep",
    "series_row",
    "solve",
    "__version__",
]
