#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-numpy fallbacks.

Two workloads, matching how the package actually spends time:
  * all-pairs rainbow connectivity on random 4-colorings of dense graphs,
  * the canonical-coloring search on two-color-band instances.

Run after installing the package:  python3 benchmarks/bench_kernels.py
"""

from __future__ import annotations

import time

import numpy as np

from rcgraph._kernels import numba_impl, numpy_impl
from rcgraph.generators import random_connected
from rcgraph.verify import EdgeColoring, _dense_csr, search_csr


def median_time(fn, args_list, repeat=3):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        for args in args_list:
            fn(*args)
        times.append(time.perf_counter() - start)
    return sorted(times)[len(times) // 2]


def bench_verify():
    rng = np.random.default_rng(42)
    cases = []
    for _ in range(300):
        n = int(rng.integers(6, 10))
        m = int(rng.integers(2 * n, n * (n - 1) // 2 + 1))
        g = random_connected(n, m, seed=int(rng.integers(0, 10**6)))
        colors = [int(rng.integers(1, 5)) for _ in range(g.m)]
        c = EdgeColoring.from_sequence(g, colors, k=4)
        indptr, nbrs, ecol, d = _dense_csr(g, c)
        cases.append((indptr, nbrs, ecol, d))
    numba_impl.rainbow_connected(*cases[0])  # warm the JIT
    t_nb = median_time(numba_impl.rainbow_connected, cases)
    t_np = median_time(numpy_impl.rainbow_connected, cases)
    return "all-pairs verify (300 colored graphs, n=6..9)", t_nb, t_np


def bench_search():
    rng = np.random.default_rng(43)
    cases = []
    for _ in range(12):
        n = 6
        m = int(rng.integers(11, 15))
        g = random_connected(n, m, seed=int(rng.integers(0, 10**6)))
        indptr, nbrs, eidx = search_csr(g)
        cases.append((indptr, nbrs, eidx, g.m, 2, 10**8))
    numba_impl.find_canonical_coloring(*cases[0])
    t_nb = median_time(numba_impl.find_canonical_coloring, cases)
    t_np = median_time(numpy_impl.find_canonical_coloring, cases)
    return "canonical 2-coloring search (12 band graphs, n=6)", t_nb, t_np


def main():
    print(f"{'workload':<55} {'numba':>10} {'numpy':>10} {'speedup':>9}")
    for bench in (bench_verify, bench_search):
        label, t_nb, t_np = bench()
        print(f"{label:<55} {t_nb * 1e3:>8.3f}ms {t_np * 1e3:>8.3f}ms "
              f"{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
