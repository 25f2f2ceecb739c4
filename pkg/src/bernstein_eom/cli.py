"""Command-line interface.

Subcommands
-----------
solve      solve one problem at one degree and print a summary
sweep      run a convergence study over a range of degrees and emit files
matrices   dump any operational matrix with exact rational entries
reference  tabulate the reference solution (closed form or RK)

Problems are named registry entries (``--problem lane-emden-p1``) or paths
to JSON problem files (see ``problems.load_problem_file``).  Exit codes:
0 success, 2 usage error, 3 solver non-convergence.

``EOM_THREADS`` caps sweep parallelism across modes (default 1);
``EOM_KERNEL`` picks the kernel backend (auto/compiled/python).
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import metrics, problems
from .basis import increaser, k_matrices, matrix_a, matrix_a_inv
from .errors import ConfigurationError, NumericError, SolverError
from .operators import diff_matrix, gram_matrix, int_matrix
from .reference import get_reference
from .solver import SolveConfig, solve

USAGE_ERROR, NONCONVERGENCE = 2, 3


def _get_problem(args) -> problems.ProblemSpec:
    name = args.problem
    if name.endswith(".json") or os.path.exists(name):
        spec = problems.load_problem_file(name)
        return spec.with_overrides(m_trunc=args.M, n_series=args.N)
    return problems.get_problem(name, m_trunc=args.M, n_series=args.N)


def _parse_m_list(text: str) -> list[int]:
    """Accept '4', '2..8', or '2,4,6'."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(tok) for tok in text.split(",") if tok]


def _cmd_solve(args) -> int:
    problem = _get_problem(args)
    config = SolveConfig(m=args.m, mode=args.mode, newton_tol=args.tol)
    sol = solve(problem, config)
    m_tr = float(problem.m_trunc)
    res_n = metrics.norm1(metrics.residual_pointwise(sol), m_tr)
    print(f"problem          {problem.name}")
    print(f"mode             {sol.mode}")
    print(f"m                {sol.m}")
    print(f"M                {m_tr:.12g}")
    print(f"N                {problem.n_series}")
    print(f"newton_iters     {sol.newton_iters} (exit: {sol.exit_reason})")
    print(f"reduced_norm     {sol.final_residual_norm:.6e}")
    print(f"residual_norm1   {res_n:.6e}")
    try:
        err_n = metrics.norm1(metrics.error_function(sol), m_tr)
        print(f"error_norm1      {err_n:.6e}")
    except (NumericError, SolverError):
        pass
    print(f"y(0)             {float(sol.y_eval(0.0)):.12g}")
    print(f"y(M)             {float(sol.y_eval(m_tr)):.12g}")
    if sol.series_interval is not None:
        lo, hi = sol.series_interval
        print(f"series_interval  [{lo:.6g}, {hi:.6g}]")
    return 0


def _cmd_sweep(args) -> int:
    problem = _get_problem(args)
    m_values = _parse_m_list(args.m)
    modes = tuple(tok for tok in args.modes.split(",") if tok)
    for mode in modes:
        if mode not in ("eom", "oom"):
            raise ConfigurationError(f"unknown mode {mode!r}")
    reports = metrics.run_sweep(problem, m_values, modes, newton_tol=args.tol)
    formats = tuple(tok for tok in args.format.split(",") if tok)
    paths = metrics.emit(reports, args.out, formats)
    for mode in modes:
        rep = reports[mode]
        for rec in rep.records:
            status = "ok" if rec.failure is None else f"FAILED: {rec.failure}"
            print(
                f"{problem.name} {mode} m={rec.m} residual_norm1={rec.residual_norm1:.3e} "
                f"error_norm1={rec.error_norm1:.3e} iters={rec.newton_iters} {status}"
            )
    for p in paths:
        print(f"wrote {p}")
    return 0


def _cmd_matrices(args) -> int:
    kind = args.kind
    if kind == "A":
        mat = matrix_a(args.m)
    elif kind == "Ainv":
        mat = matrix_a_inv(args.m)
    elif kind == "D":
        mat = diff_matrix(args.m)
    elif kind == "P":
        mat = int_matrix(args.m)
    elif kind == "E":
        mat = increaser(args.m, args.gap)
    elif kind == "K":
        mat = k_matrices(args.m, args.gap)[0]
    elif kind == "Kprime":
        mat = k_matrices(args.m, args.gap)[1]
    else:  # Q
        if args.big is None or args.small is None:
            raise ConfigurationError("kind Q needs --big and --small")
        mat = gram_matrix(args.big, args.small)
    for row in mat.data:
        print(" ".join(str(x) for x in row))
    return 0


def _cmd_reference(args) -> int:
    problem = _get_problem(args)
    ref = get_reference(problem)
    m_tr = float(problem.m_trunc)
    xs = np.linspace(0.0, m_tr, args.points)
    ys = ref.eval(xs)
    dys = ref.deriv(xs)
    print(f"# {problem.name} reference ({ref.kind}), M={m_tr:.12g}")
    print("# x y yprime")
    for x, y, dy in zip(xs, ys, dys):
        print(f"{x:.17g} {y:.17g} {dy:.17g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bernstein-eom",
        description="Galerkin solver for x y'' + 2 y' + x f(x) g(y) = 0 "
        "over exact Bernstein operational matrices",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_problem_opts(p):
        p.add_argument("--problem", required=True,
                       help="registry name or JSON problem file")
        p.add_argument("--N", type=int, default=None, help="series degree override")
        p.add_argument("--M", type=float, default=None, help="domain length override")
        p.add_argument("--tol", type=float, default=1e-12, help="Newton tolerance")

    p_solve = sub.add_parser("solve", help="solve at a single degree")
    add_problem_opts(p_solve)
    p_solve.add_argument("--m", type=int, required=True, help="working degree (>= 2)")
    p_solve.add_argument("--mode", choices=("eom", "oom"), default="eom")
    p_solve.set_defaults(fn=_cmd_solve)

    p_sweep = sub.add_parser("sweep", help="convergence study over degrees")
    add_problem_opts(p_sweep)
    p_sweep.add_argument("--m", default="2..8", help="degrees: '2..8' or '2,4,6'")
    p_sweep.add_argument("--modes", default="eom,oom", help="comma list of modes")
    p_sweep.add_argument("--out", default=".", help="output directory")
    p_sweep.add_argument("--format", default="csv,json,plotdata",
                         help="comma list of csv,json,plotdata")
    p_sweep.set_defaults(fn=_cmd_sweep)

    p_mat = sub.add_parser("matrices", help="dump an operational matrix (exact)")
    p_mat.add_argument("--kind", required=True,
                       choices=("A", "Ainv", "D", "P", "E", "K", "Kprime", "Q"))
    p_mat.add_argument("--m", type=int, default=4, help="degree / row count")
    p_mat.add_argument("--gap", type=int, default=1, help="degree gap or padding")
    p_mat.add_argument("--big", type=int, default=None, help="row degree for Q")
    p_mat.add_argument("--small", type=int, default=None, help="column degree for Q")
    p_mat.set_defaults(fn=_cmd_matrices)

    p_ref = sub.add_parser("reference", help="tabulate the reference solution")
    add_problem_opts(p_ref)
    p_ref.add_argument("--points", type=int, default=101)
    p_ref.set_defaults(fn=_cmd_reference)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return NONCONVERGENCE
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return NONCONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
