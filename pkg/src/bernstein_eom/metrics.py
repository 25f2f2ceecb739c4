"""Norms, error/residual functions, convergence sweeps and report emission.

Everything is reported over the physical domain [0, M].  The headline
quantities mirror the solver's acceptance gates:

* ``residual_norm1``: integral of |x y'' + 2 y' + x f(x) g(y_m)| with the
  solution's own derivatives, evaluated directly from the Bernstein
  representation (independent of how the Galerkin row was assembled);
* ``error_norm1``: integral of |y_m - y_ref| against the closed form where
  one exists and the RK reference otherwise.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels
from .errors import NumericError, SolverError
from .problems import ProblemSpec, f_eval, g_eval
from .reference import ReferenceSolution, get_reference
from .solver import ResidualSystem, Solution, SolveConfig, series_setup, solve

GRID_POINTS = 401  # shared pointwise grid on [0, M]


# ---------------------------------------------------------------------------
# quadrature


def _sign_changes(fn: Callable, x_max: float, panels: int) -> np.ndarray:
    """Sign-change points of fn on (0, x_max), bisected to full precision.

    |fn| has a kink at each crossing; a panel edge placed exactly there
    keeps the integrand smooth inside every panel, which is what lets the
    Gauss rule keep its spectral accuracy.
    """
    xs = np.linspace(0.0, x_max, 8 * panels + 1)
    vals = np.asarray(fn(xs), dtype=float)
    if not np.all(np.isfinite(vals)):
        bad = xs[~np.isfinite(vals)][0]
        raise NumericError(f"non-finite sample in norm1 at x={bad!r}")
    idx = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
    if idx.size == 0:
        return np.empty(0)
    lo, hi = xs[idx], xs[idx + 1]
    flo = vals[idx]
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        fmid = np.asarray(fn(mid), dtype=float)
        left = np.sign(flo) * np.sign(fmid) <= 0
        lo, hi = np.where(left, lo, mid), np.where(left, mid, hi)
        flo = np.where(left, flo, fmid)
    return 0.5 * (lo + hi)


def norm1(fn: Callable, x_max: float, panels: int = 200, nodes: int = 10) -> float:
    """Integral of |fn| over [0, x_max] by composite Gauss-Legendre rule.

    ``fn`` must accept a vector of points.  Panel edges are inserted at the
    sign changes of ``fn`` so the absolute value stays smooth within each
    panel; doubling ``panels`` then moves the result by
    O(panel width^(2 nodes)), far below any tolerance used in this package.
    """
    if x_max <= 0:
        raise ValueError("x_max must be positive")
    gl_x, gl_w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(0.0, x_max, panels + 1)
    cross = _sign_changes(fn, x_max, panels)
    if cross.size:
        edges = np.unique(np.concatenate([edges, cross]))
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    pts = (mid[:, None] + half[:, None] * gl_x[None, :]).ravel()
    vals = np.abs(np.asarray(fn(pts), dtype=float))
    if not np.all(np.isfinite(vals)):
        bad = pts[~np.isfinite(vals)][0]
        raise NumericError(f"non-finite sample in norm1 at x={bad!r}")
    w = (half[:, None] * gl_w[None, :]).ravel()
    return float(vals @ w)


# ---------------------------------------------------------------------------
# pointwise error and residual


def error_function(sol: Solution, reference: ReferenceSolution | None = None) -> Callable:
    """x -> y_m(x) - y_ref(x) on [0, M]."""
    ref = reference if reference is not None else get_reference(sol.problem)

    def err(x):
        return sol.y_eval(x) - ref.eval(np.asarray(x, dtype=float))

    return err


def residual_pointwise(sol: Solution) -> Callable:
    """x -> x y'' + 2 y' + x f(x) g(y) for the computed solution.

    Uses the true g, not its series stand-in, so this measures the quality
    of the solution against the actual equation in both modes.
    """
    problem = sol.problem

    def res(x):
        x = np.asarray(x, dtype=float)
        return (
            x * sol.y_second_deriv(x)
            + 2.0 * sol.y_deriv(x)
            + x * f_eval(problem, x) * g_eval(problem, sol.y_eval(x))
        )

    return res


def assembled_residual_function(sol: Solution) -> Callable:
    """x -> R(c)^T psi_max_num(x / M): the residual as the solver assembled it.

    In "eom" mode this is the same polynomial the Galerkin reduction saw; it
    differs from :func:`residual_pointwise` only by the series truncation of
    g (zero for integer powers).  Used as a consistency cross-check.
    """
    e = series_setup(sol.problem)[0] if sol.problem.uses_series else None
    system = ResidualSystem(sol.problem, sol.m, sol.mode, e)
    row = system.residual_row(sol.c)
    m_tr = float(sol.problem.m_trunc)

    def fn(x):
        s = np.clip(np.asarray(x, dtype=float) / m_tr, 0.0, 1.0)
        return kernels.decasteljau(row, s)

    return fn


# ---------------------------------------------------------------------------
# sweeps


@dataclass
class SweepRecord:
    m: int
    residual_norm1: float
    error_norm1: float
    newton_iters: int
    wall_time_ms: float
    failure: str | None = None


@dataclass
class SweepReport:
    """Convergence study of one problem in one mode over a list of degrees."""

    problem: str
    mode: str
    n_series: int
    m_trunc: float
    records: list[SweepRecord] = field(default_factory=list)
    grid: np.ndarray | None = None
    abs_error: np.ndarray | None = None
    abs_residual: np.ndarray | None = None
    solutions: dict[int, Solution] = field(default_factory=dict)

    def record_for(self, m: int) -> SweepRecord:
        for r in self.records:
            if r.m == m:
                return r
        raise KeyError(f"no record for m={m}")


def _sweep_one_mode(
    problem: ProblemSpec,
    m_values: Sequence[int],
    mode: str,
    newton_tol: float,
    keep_solutions: bool,
) -> SweepReport:
    report = SweepReport(
        problem=problem.name, mode=mode, n_series=problem.n_series,
        m_trunc=float(problem.m_trunc),
    )
    ref = get_reference(problem)
    m_tr = float(problem.m_trunc)
    c_prev = None
    last_sol = None
    for m in sorted(m_values):
        t0 = time.perf_counter()
        # stale guesses from before a failed degree are useless as warm
        # starts, and oom solves seed themselves from the matching eom root
        warm = c_prev if c_prev is not None and len(c_prev) in (m, m + 1) else None
        if mode == "oom":
            warm = None
        try:
            sol = solve(
                problem,
                SolveConfig(m=m, mode=mode, newton_tol=newton_tol),
                initial_c=warm,
            )
        except SolverError as exc:
            wall = 1e3 * (time.perf_counter() - t0)
            report.records.append(
                SweepRecord(m, float("nan"), float("nan"), 0, wall, failure=str(exc))
            )
            continue
        wall = 1e3 * (time.perf_counter() - t0)
        res_n = norm1(residual_pointwise(sol), m_tr)
        err_n = norm1(error_function(sol, ref), m_tr)
        report.records.append(SweepRecord(m, res_n, err_n, sol.newton_iters, wall))
        c_prev = sol.c
        last_sol = sol
        if keep_solutions:
            report.solutions[m] = sol
    if last_sol is not None:
        grid = np.linspace(0.0, m_tr, GRID_POINTS)
        report.grid = grid
        report.abs_error = np.abs(error_function(last_sol, ref)(grid))
        report.abs_residual = np.abs(residual_pointwise(last_sol)(grid))
    return report


def run_sweep(
    problem: ProblemSpec,
    m_values: Iterable[int] = range(2, 9),
    modes: Sequence[str] = ("eom", "oom"),
    newton_tol: float = 1e-12,
    keep_solutions: bool = False,
) -> dict[str, SweepReport]:
    """Solve over ascending degrees in each mode, reusing each converged c
    as the next initial guess.  Individual solve failures are recorded on
    the report without aborting the sweep.

    Set EOM_THREADS > 1 to run the modes concurrently.
    """
    m_values = sorted(set(int(m) for m in m_values))
    if not m_values:
        raise ValueError("m_values must be non-empty")
    threads = int(os.environ.get("EOM_THREADS", "1") or "1")
    if problem.uses_series:
        series_setup(problem)  # fit once before any parallel work
    if threads > 1 and len(modes) > 1:
        with ThreadPoolExecutor(max_workers=min(threads, len(modes))) as pool:
            futures = {
                mode: pool.submit(
                    _sweep_one_mode, problem, m_values, mode, newton_tol, keep_solutions
                )
                for mode in modes
            }
            return {mode: fut.result() for mode, fut in futures.items()}
    return {
        mode: _sweep_one_mode(problem, m_values, mode, newton_tol, keep_solutions)
        for mode in modes
    }


# ---------------------------------------------------------------------------
# emission


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _log10_clamped(values: np.ndarray) -> np.ndarray:
    return np.log10(np.maximum(np.abs(values), 1e-16))


def emit(
    reports: dict[str, SweepReport] | Sequence[SweepReport],
    out_dir: str,
    formats: Sequence[str] = ("csv", "json", "plotdata"),
) -> list[str]:
    """Write one file set per report into out_dir; returns the paths written.

    csv      <problem>_<mode>_sweep.csv   (m, residual_norm1, error_norm1,
                                           newton_iters, wall_time_ms)
    json     <problem>_<mode>_sweep.json  (full report incl. pointwise data)
    plotdata <problem>_<mode>_norms.dat   (m, log10 residual, log10 error)
             <problem>_<mode>_pointwise.dat (x, log10 |error|, log10 |residual|)

    All floats carry 17 significant digits, so a parse round-trips exactly.
    """
    if isinstance(reports, dict):
        reports = list(reports.values())
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for rep in reports:
        stem = f"{rep.problem}_{rep.mode}"
        if "csv" in formats:
            path = os.path.join(out_dir, f"{stem}_sweep.csv")
            lines = ["m,residual_norm1,error_norm1,newton_iters,wall_time_ms"]
            for r in rep.records:
                lines.append(
                    f"{r.m},{_fmt(r.residual_norm1)},{_fmt(r.error_norm1)},"
                    f"{r.newton_iters},{_fmt(r.wall_time_ms)}"
                )
            with open(path, "w") as fh:
                fh.write("\n".join(lines) + "\n")
            written.append(path)
        if "json" in formats:
            path = os.path.join(out_dir, f"{stem}_sweep.json")
            payload = {
                "problem": rep.problem,
                "mode": rep.mode,
                "N": rep.n_series,
                "M": rep.m_trunc,
                "records": [
                    {
                        "m": r.m,
                        "residual_norm1": r.residual_norm1,
                        "error_norm1": r.error_norm1,
                        "newton_iters": r.newton_iters,
                        "wall_time_ms": r.wall_time_ms,
                        "failure": r.failure,
                    }
                    for r in rep.records
                ],
                "pointwise": None
                if rep.grid is None
                else {
                    "x": rep.grid.tolist(),
                    "abs_error": rep.abs_error.tolist(),
                    "abs_residual": rep.abs_residual.tolist(),
                },
            }
            with open(path, "w") as fh:
                json.dump(payload, fh, indent=1)
                fh.write("\n")
            written.append(path)
        if "plotdata" in formats:
            path = os.path.join(out_dir, f"{stem}_norms.dat")
            with open(path, "w") as fh:
                fh.write("# m log10_residual_norm1 log10_error_norm1\n")
                for r in rep.records:
                    fh.write(
                        f"{r.m} {_fmt(_log10_clamped(np.array(r.residual_norm1)))} "
                        f"{_fmt(_log10_clamped(np.array(r.error_norm1)))}\n"
                    )
            written.append(path)
            if rep.grid is not None:
                path = os.path.join(out_dir, f"{stem}_pointwise.dat")
                le = _log10_clamped(rep.abs_error)
                lr = _log10_clamped(rep.abs_residual)
                with open(path, "w") as fh:
                    fh.write("# x log10_abs_error log10_abs_residual\n")
                    for x, a, b in zip(rep.grid, le, lr):
                        fh.write(f"{_fmt(x)} {_fmt(a)} {_fmt(b)}\n")
                written.append(path)
    return written
