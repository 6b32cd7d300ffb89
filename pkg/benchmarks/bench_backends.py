#!/usr/bin/env python3
"""Timing comparison of the numba and numpy kernel backends.

Runs every kernel on a representative workload under each available
backend and prints a table.  The numba numbers exclude JIT compilation
(one warmup call per kernel).

    python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import time

import numpy as np

from hcn import kernels

WORKLOADS = [
    ("hurwitz6_table(20000)", "hurwitz6_table", (20000,)),
    ("r3_table(20000)", "r3_table", (20000,)),
    ("r3_point(41**2 * 35)", "r3_point", (41 * 41 * 35,)),
    ("theta_counts(x^2+y^2+z^2, 5000)", "theta_counts", (1, 1, 1, 0, 0, 0, 5000)),
    ("theta_counts(N=35 genus form, 2000)", "theta_counts",
     (11, 15, 39, -10, -6, -10, 2000)),
    ("ternary_candidates(19600)", "ternary_candidates", (19600,)),
]


def bench(fn, args, repeat):
    fn(*args)  # warmup (JIT compile on the numba path)
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

    backends = sorted(kernels.IMPLS)
    print(f"active backend: {kernels.BACKEND}; comparing: {', '.join(backends)}")
    header = f"{'workload':42s}" + "".join(f"{b:>12s}" for b in backends)
    print(header)
    print("-" * len(header))
    for label, name, fnargs in WORKLOADS:
        times = {}
        results = {}
        for backend in backends:
            fn = kernels.IMPLS[backend][name]
            times[backend] = bench(fn, fnargs, args.repeat)
            results[backend] = fn(*fnargs)
        first, *rest = backends
        for other in rest:
            a, b = results[first], results[other]
            same = np.array_equal(a, b) if isinstance(a, np.ndarray) else a == b
            if name == "ternary_candidates":
                same = (set(map(tuple, np.asarray(a).tolist()))
                        == set(map(tuple, np.asarray(b).tolist())))
            assert same, f"backend mismatch on {label}"
        row = f"{label:42s}" + "".join(
            f"{times[b] * 1000:10.2f}ms" for b in backends
        )
        print(row)
    print("all backends agree on every workload")


if __name__ == "__main__":
    main()
