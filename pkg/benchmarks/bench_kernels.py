"""Compare the compiled kernel backend against the pure-Python one.

Times the two hot kernels (band-product accumulation and de Casteljau
evaluation) in isolation, then an end-to-end Newton solve.  Run after
installing with the extension built:

    python benchmarks/bench_kernels.py
"""

from __future__ import annotations

import time

import numpy as np

from bernstein_eom.kernels import py_backend
from bernstein_eom.operators import band_float
from bernstein_eom.problems import get_problem
from bernstein_eom.solver import SolveConfig, solve

try:
    from bernstein_eom.kernels import _core as compiled
except ImportError:
    compiled = None


def _time(fn, *args, repeat: int = 5, inner: int = 50) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(inner):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / inner)
    return best


def bench_band(backend, q: int, n: int) -> float:
    rng = np.random.default_rng(0)
    vec = rng.standard_normal(q + 1)
    row = rng.standard_normal(n + 1)
    band = band_float(q, n)
    out = np.zeros(q + n + 1)

    def run():
        out[:] = 0.0
        backend.band_accumulate(vec, band, row, out, 1.0)

    return _time(run)


def bench_decasteljau(backend, degree: int, points: int) -> float:
    rng = np.random.default_rng(1)
    coeffs = rng.standard_normal(degree + 1)
    ts = np.linspace(0.0, 1.0, points)
    return _time(backend.decasteljau, coeffs, ts)


def bench_solve() -> float:
    problem = get_problem("lane-emden-p5")
    t0 = time.perf_counter()
    solve(problem, SolveConfig(m=8))
    return time.perf_counter() - t0


def main() -> None:
    from bernstein_eom.kernels import BACKEND

    print(f"active backend: {BACKEND}")
    if compiled is None:
        print("compiled extension not built; python timings only")
    cases = [("band q=10 n=30", bench_band, (10, 30)),
             ("band q=30 n=90", bench_band, (30, 90)),
             ("decasteljau d=10 x401", bench_decasteljau, (10, 401)),
             ("decasteljau d=40 x2000", bench_decasteljau, (40, 2000))]
    print(f"{'kernel':28s} {'python':>12s} {'compiled':>12s} {'speedup':>9s}")
    for label, fn, args in cases:
        t_py = fn(py_backend, *args)
        if compiled is not None:
            t_c = fn(compiled, *args)
            print(f"{label:28s} {t_py * 1e6:10.1f}us {t_c * 1e6:10.1f}us "
                  f"{t_py / t_c:8.1f}x")
        else:
            print(f"{label:28s} {t_py * 1e6:10.1f}us {'n/a':>12s}")
    t_solve = bench_solve()
    print(f"end-to-end solve (p=5, m=8, backend={BACKEND}): {t_solve * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
