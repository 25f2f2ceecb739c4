"""Shared fixtures.

The cross-mode convergence sweeps dominate the suite's runtime, so they run
once per session here and every test that needs them reads the same reports.
"""

import pytest

from bernstein_eom import CANONICAL_NAMES, get_problem, run_sweep

M_VALUES = tuple(range(2, 9))


@pytest.fixture(scope="session")
def canonical_sweeps():
    """name -> {mode: SweepReport} over m = 2..8 for both modes."""
    out = {}
    for name in CANONICAL_NAMES:
        problem = get_problem(name)
        out[name] = run_sweep(
            problem, m_values=M_VALUES, modes=("eom", "oom"), keep_solutions=True
        )
    return out
