#!/usr/bin/env python3
"""Benchmark the absorption-grid kernel: numba @njit vs pure numpy.

Builds synthetic line sets of growing size, evaluates the total
absorption coefficient over a dense frequency grid with both backends,
checks they agree, and prints a timing table.

    python benchmarks/bench_kernels.py [--points 20000] [--repeats 5]
"""

import argparse
import time

import numpy as np

from thzlink.kernels import (NUMBA_AVAILABLE, LineArrays, kappa_totals,
                             kappa_totals_numpy)


def synthetic_lines(n_lines: int, rng: np.random.Generator) -> LineArrays:
    f_c0 = np.sort(rng.uniform(0.3e12, 3.5e12, n_lines))
    return LineArrays(
        f_c0=f_c0,
        intensity=10.0 ** rng.uniform(10.5, 12.8, n_lines),
        alpha_air=rng.uniform(2.0e9, 3.2e9, n_lines),
        alpha_self=rng.uniform(0.9e10, 1.5e10, n_lines),
        temp_exponent=rng.uniform(0.6, 0.8, n_lines),
        pressure_shift=rng.uniform(-1.5e8, 1.5e8, n_lines),
        q=rng.uniform(0.01, 0.3, n_lines),
    )


def timed(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--points", type=int, default=20000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(42)
    freqs = np.linspace(0.5e12, 3.0e12, args.points)

    if not NUMBA_AVAILABLE:
        print("numba is not importable; nothing to compare")
        return

    # trigger compilation outside the timed region
    warmup = synthetic_lines(4, rng)
    kappa_totals(freqs[:16], warmup, 296.0, 1.0, np.inf, backend="numba")

    print(f"{args.points} grid points, best of {args.repeats} runs")
    print(f"{'lines':>7} {'numpy [ms]':>12} {'numba [ms]':>12} "
          f"{'speedup':>8} {'max rel diff':>14}")
    for n_lines in (16, 64, 256, 1024):
        lines = synthetic_lines(n_lines, rng)
        t_np, out_np = timed(
            lambda: kappa_totals_numpy(freqs, lines, 296.0, 1.0, np.inf),
            args.repeats)
        t_nb, out_nb = timed(
            lambda: kappa_totals(freqs, lines, 296.0, 1.0, np.inf,
                                 backend="numba"),
            args.repeats)
        rel = float(np.max(np.abs(out_nb - out_np)
                           / np.maximum(np.abs(out_np), 1e-300)))
        print(f"{n_lines:>7} {t_np * 1e3:>12.2f} {t_nb * 1e3:>12.2f} "
              f"{t_np / t_nb:>8.2f} {rel:>14.2e}")
        if rel > 1e-10:
            raise SystemExit("backends disagree beyond tolerance")


if __name__ == "__main__":
    main()
