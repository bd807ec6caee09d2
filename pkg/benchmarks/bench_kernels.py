#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallbacks.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Imports both kernel modules directly, so the TICKNOISE_NO_NUMBA flag has no
effect here; it only steers which one the package itself uses.
"""

import argparse
import time

import numpy as np

from ticknoise import _kernels_numpy

try:
    from ticknoise import _kernels_numba

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False


def timeit(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    cases = []

    for n, j in ((100_000, 2_000), (1_000_000, 10_000)):
        u = rng.standard_normal(n + j)
        a = rng.standard_normal(j + 1)
        cases.append((f"ma_convolve n={n:.0e} J={j:.0e}", "ma_convolve", (u, a)))

    x = rng.standard_normal(2_000_000)
    cases.append(("lagged_products n=2e6 lags=50", "lagged_products", (x, 50)))

    if HAS_NUMBA:
        # trigger compilation outside the timed region
        _kernels_numba.ma_convolve(rng.standard_normal(64), rng.standard_normal(8))
        _kernels_numba.lagged_products(rng.standard_normal(64), 4)

    print(f"{'case':36s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s}")
    for label, name, call_args in cases:
        t_np = timeit(getattr(_kernels_numpy, name), *call_args, repeat=args.repeat)
        if HAS_NUMBA:
            t_nb = timeit(getattr(_kernels_numba, name), *call_args, repeat=args.repeat)
            print(f"{label:36s} {t_np:9.3f}s {t_nb:9.3f}s {t_np / t_nb:7.1f}x")
        else:
            print(f"{label:36s} {t_np:9.3f}s {'n/a':>10s} {'n/a':>8s}")


if __name__ == "__main__":
    main()
