#!/usr/bin/env python3
"""Benchmark the numba-jitted kernels against their pure-numpy twins.

Run:  python3 benchmarks/bench_kernels.py

The first numba call includes JIT compilation; a warmup call is timed out of
band so the table reflects steady-state throughput.
"""

import time

import numpy as np

from cvqutrit._backend import HAVE_NUMBA
from cvqutrit._kernels import conv_power_numpy, jacobi_diag_numpy

if HAVE_NUMBA:
    from cvqutrit._kernels import conv_power_numba, jacobi_diag_numba


def timeit(fn, *args, repeats=5):
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def random_block(seed=0):
    rng = np.random.default_rng(seed)
    raw = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    return np.ascontiguousarray((raw + raw.conj().T) / 4.0)


def random_symmetric(n, seed=1):
    rng = np.random.default_rng(seed)
    raw = rng.normal(size=(n, n))
    return (raw + raw.T) / 2.0


def bench_conv():
    print("conv_power (3x3 block, N-fold convolution to a (2N+1)^2 grid)")
    print(f"{'N':>4}  {'numpy [ms]':>12}  {'numba [ms]':>12}  {'speedup':>8}")
    block = random_block()
    for n_arms in (3, 10, 30, 64):
        size = 2 * n_arms + 1
        t_np = timeit(conv_power_numpy, block, n_arms, size)
        if HAVE_NUMBA:
            conv_power_numba(block, n_arms, size)  # warmup / compile
            t_nb = timeit(conv_power_numba, block, n_arms, size)
            print(
                f"{n_arms:>4}  {t_np * 1e3:>12.3f}  {t_nb * 1e3:>12.3f}"
                f"  {t_np / t_nb:>7.1f}x"
            )
        else:
            print(f"{n_arms:>4}  {t_np * 1e3:>12.3f}  {'-':>12}  {'-':>8}")


def bench_jacobi():
    print()
    print("jacobi_diag (real symmetric, tol 1e-13, sweep cap 100)")
    print(f"{'n':>4}  {'numpy [ms]':>12}  {'numba [ms]':>12}  {'speedup':>8}")
    for n in (18, 42, 90, 128):
        mat = random_symmetric(n)
        t_np = timeit(lambda m=mat: jacobi_diag_numpy(m.copy(), 1e-13, 100))
        if HAVE_NUMBA:
            jacobi_diag_numba(mat.copy(), 1e-13, 100)  # warmup / compile
            t_nb = timeit(lambda m=mat: jacobi_diag_numba(m.copy(), 1e-13, 100))
            print(
                f"{n:>4}  {t_np * 1e3:>12.3f}  {t_nb * 1e3:>12.3f}"
                f"  {t_np / t_nb:>7.1f}x"
            )
        else:
            print(f"{n:>4}  {t_np * 1e3:>12.3f}  {'-':>12}  {'-':>8}")


if __name__ == "__main__":
    print(f"numba available: {HAVE_NUMBA}")
    bench_conv()
    bench_jacobi()
    if not HAVE_NUMBA:
        print("\ninstall the 'accel' extra (pip install cvqutrit[accel]) "
              "or unset CVQUTRIT_BACKEND to benchmark the jitted kernels")
