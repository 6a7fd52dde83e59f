from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest

from rcgraph import backend_name
from rcgraph._kernels import numpy_impl
from rcgraph._kernels.rgs import (first_rgs, next_rgs,
                                  restricted_growth_strings, stirling2)
from rcgraph.generators import random_connected
from rcgraph.graph import make_graph
from rcgraph.verify import EdgeColoring, _dense_csr, search_csr

numba_impl = pytest.importorskip("rcgraph._kernels.numba_impl")


def _random_colored(rng):
    n = int(rng.integers(2, 8))
    m = int(rng.integers(n - 1, n * (n - 1) // 2 + 1))
    g = random_connected(n, m, seed=int(rng.integers(0, 10**6)))
    k = int(rng.integers(1, 5))
    colors = [int(rng.integers(1, k + 1)) for _ in range(g.m)]
    return g, EdgeColoring.from_sequence(g, colors, k=k)


def test_backends_agree_on_connectivity():
    rng = np.random.default_rng(101)
    for _ in range(200):
        g, c = _random_colored(rng)
        indptr, nbrs, ecol, d = _dense_csr(g, c)
        compiled = numba_impl.rainbow_connected(indptr, nbrs, ecol, d)
        fallback = numpy_impl.rainbow_connected(indptr, nbrs, ecol, d)
        assert bool(compiled) == bool(fallback)


def test_backends_agree_on_pairs():
    rng = np.random.default_rng(202)
    for _ in range(100):
        g, c = _random_colored(rng)
        indptr, nbrs, ecol, d = _dense_csr(g, c)
        for u in range(g.n):
            for v in range(u + 1, g.n):
                a = numba_impl.rainbow_pair(indptr, nbrs, ecol, d, u, v)
                b = numpy_impl.rainbow_pair(indptr, nbrs, ecol, d, u, v)
                assert bool(a) == bool(b)


def test_backends_agree_on_search():
    rng = np.random.default_rng(303)
    for _ in range(30):
        n = int(rng.integers(3, 7))
        m = int(rng.integers(n - 1, n * (n - 1) // 2 + 1))
        g = random_connected(n, m, seed=int(rng.integers(0, 10**6)))
        indptr, nbrs, eidx = search_csr(g)
        for k in (1, 2, 3):
            sa, ca, xa, _ = numba_impl.find_canonical_coloring(
                indptr, nbrs, eidx, g.m, k, 10**8)
            sb, cb, xb, _ = numpy_impl.find_canonical_coloring(
                indptr, nbrs, eidx, g.m, k, 10**8)
            assert sa == sb
            assert xa == xb
            if sa == 1:
                assert list(ca) == list(cb)


@pytest.mark.parametrize("m,k", [(m, k) for m in range(1, 9) for k in range(1, min(m, 5) + 1)])
def test_compiled_rgs_order_matches_generator(m, k):
    expected = list(restricted_growth_strings(m, k))
    got = numba_impl.rgs_sequence(m, k, limit=len(expected) + 5)
    assert got == expected


def test_python_rgs_successor_roundtrip():
    for m, k in [(4, 2), (5, 3), (6, 4)]:
        a = first_rgs(m, k)
        seen = [tuple(a)]
        while next_rgs(a, k):
            seen.append(tuple(a))
        assert seen == list(restricted_growth_strings(m, k))
        assert len(seen) == stirling2(m, k)


def test_budget_abort_status():
    g = make_graph(6, [(i, (i + 1) % 6) for i in range(6)])
    indptr, nbrs, eidx = search_csr(g)
    status, _, _, _ = numba_impl.find_canonical_coloring(indptr, nbrs, eidx, g.m, 2, 3)
    assert status == -1


def test_env_flag_selects_backend():
    for flag, expected in (("numpy", "numpy"), ("numba", "numba")):
        out = subprocess.run(
            [sys.executable, "-c", "import rcgraph; print(rcgraph.backend_name())"],
            env={**os.environ, "RCGRAPH_KERNEL": flag},
            capture_output=True, text=True, check=True,
        )
        assert out.stdout.strip() == expected


def test_default_backend_is_reported():
    assert backend_name() in ("numba", "numpy")
