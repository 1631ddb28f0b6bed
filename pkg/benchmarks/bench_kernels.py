"""Benchmark the compiled weight-table kernel against the numpy fallback.

Usage:
    python benchmarks/bench_kernels.py [--sizes 256 1024 4096] [--repeats 5]

For each mesh size the lower-triangular product-integration weight table
is built with both backends on a uniform and a graded mesh, timings and
the maximum absolute disagreement are printed.
"""

import argparse
import time

import numpy as np

from fraclab import _kernels_py
from fraclab.funcspace import graded_nodes

try:
    from fraclab import _kernels
except ImportError:
    _kernels = None


def _best_time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+",
                        default=[256, 1024, 4096])
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--alpha", type=float, default=0.5)
    args = parser.parse_args()

    if _kernels is None:
        print("compiled extension not available; timing the fallback only")
    print(f"{'mesh':>18} {'n':>6} {'python (s)':>12} {'compiled (s)':>13} "
          f"{'speedup':>8} {'max |diff|':>11}")
    for n in args.sizes:
        meshes = {
            "uniform": np.linspace(0.0, 1.0, n),
            "graded (r=6)": graded_nodes(0.0, 1.0, n, 6.0,
                                         exclude_start=True),
        }
        for label, nodes in meshes.items():
            t_py = _best_time(
                lambda: _kernels_py.weight_table(nodes, args.alpha),
                args.repeats)
            if _kernels is None:
                print(f"{label:>18} {n:>6} {t_py:>12.4f} {'-':>13} "
                      f"{'-':>8} {'-':>11}")
                continue
            t_cy = _best_time(
                lambda: _kernels.weight_table(nodes, args.alpha),
                args.repeats)
            w_py = _kernels_py.weight_table(nodes, args.alpha)
            w_cy = _kernels.weight_table(nodes, args.alpha)
            diff = np.abs(w_py - w_cy).max()
            print(f"{label:>18} {n:>6} {t_py:>12.4f} {t_cy:>13.4f} "
                  f"{t_py / t_cy:>7.1f}x {diff:>11.2e}")


if __name__ == "__main__":
    main()
