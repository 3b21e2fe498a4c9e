"""Benchmark the seriation kernels: numba @njit vs pure-numpy fallback.

Usage:
    python3 benchmarks/bench_kernels.py [--sizes 50,100,200,400] [--repeat 3]

The numpy path is what you get with NFTDISK_NO_NUMBA=1; this script runs
both in-process by toggling the env var between timings.
"""

from __future__ import annotations

import argparse
import os
import time

import numpy as np

from nftdisk import _kernels
from nftdisk.seriation import DistanceMatrix, cluster_addresses, optimal_leaf_order


def random_matrix(n: int, rng) -> DistanceMatrix:
    d = rng.random((n, n))
    d = (d + d.T) / 2.0
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(labels=tuple(range(n)), values=d)


def run_pipeline(m: DistanceMatrix) -> float:
    tree = cluster_addresses(m)
    return optimal_leaf_order(tree, m).cost


def time_backend(name: str, sizes: list[int], repeat: int, rng) -> dict[int, float]:
    if name == "numpy":
        os.environ["NFTDISK_NO_NUMBA"] = "1"
    else:
        os.environ.pop("NFTDISK_NO_NUMBA", None)
        _kernels.warmup()
    assert _kernels.backend_name() == name
    out = {}
    for n in sizes:
        m = random_matrix(n, rng)
        best = min(
            _timed(run_pipeline, m) for _ in range(repeat)
        )
        out[n] = best
    return out


def _timed(fn, *args) -> float:
    start = time.perf_counter()
    fn(*args)
    return time.perf_counter() - start


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="50,100,200,400")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    rng = np.random.default_rng(7)
    results = {}
    for backend in ("numba", "numpy"):
        rng_b = np.random.default_rng(7)  # same instances for both backends
        results[backend] = time_backend(backend, sizes, args.repeat, rng_b)

    print(f"{'n':>6} {'numba (s)':>12} {'numpy (s)':>12} {'speedup':>9}")
    for n in sizes:
        tn, tp = results["numba"][n], results["numpy"][n]
        print(f"{n:>6} {tn:>12.4f} {tp:>12.4f} {tp / tn:>8.1f}x")


if __name__ == "__main__":
    main()
