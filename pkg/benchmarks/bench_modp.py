"""Benchmark of the prime-field elimination kernels: numba against the
pure numpy fallback, on synthetic matrices and on a real graded
construction.

Run:  python benchmarks/bench_modp.py
"""

import time

import numpy as np

from nwalgebra import modp
from nwalgebra.coxeter import RootSystem, cartan_data
from nwalgebra.exactlinalg import DEFAULT_PRIME, PrimeField
from nwalgebra.nichols_core import AlgebraState


def bench_greedy_solve(shape, seed=0, repeats=3):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, DEFAULT_PRIME, size=shape, dtype=np.int64)
    p = np.int64(DEFAULT_PRIME)

    # warm the jit before timing
    modp._greedy_solve_kernel(np.ascontiguousarray(a[:10, :10]), p)

    best_kernel = min(
        _timed(lambda: modp._greedy_solve_kernel(np.ascontiguousarray(a), p))
        for _ in range(repeats))
    best_numpy = min(
        _timed(lambda: modp._greedy_solve_numpy(a, int(p)))
        for _ in range(repeats))
    return best_kernel, best_numpy


def _timed(fn):
    t = time.perf_counter()
    fn()
    return time.perf_counter() - t


def bench_construction():
    sys4 = RootSystem(cartan_data("A", 3))
    t = time.perf_counter()
    state = AlgebraState(sys4, field=PrimeField())
    state.construct_all()
    return time.perf_counter() - t, sum(state.dims())


def main():
    label = "numba" if modp.USE_NUMBA else "numpy fallback (NWALGEBRA_NO_NUMBA set)"
    print(f"active kernel path: {label}")
    print(f"{'shape':>12} {'numba kernel':>14} {'numpy fallback':>15} {'speedup':>9}")
    for shape in ((100, 100), (300, 300), (600, 600)):
        tk, tn = bench_greedy_solve(shape)
        print(f"{shape!s:>12} {tk:>13.4f}s {tn:>14.4f}s {tn / tk:>8.1f}x")
    dt, total = bench_construction()
    print(f"full prime-field construction of the 576-dimensional algebra: {dt:.2f}s")


if __name__ == "__main__":
    main()
