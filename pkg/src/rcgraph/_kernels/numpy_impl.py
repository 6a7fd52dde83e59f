"""Pure-numpy fallbacks for the compiled kernels.

Reachability is a dynamic program over color subsets: ``reach[mask]`` is the
boolean matrix of vertex pairs joined by a rainbow path using exactly the
colors in ``mask``.  Since every step adds a color, masks form a DAG and one
ascending pass suffices.  Results are bit-identical to the compiled versions;
only the speed differs.
"""

from __future__ import annotations

import numpy as np

from .rgs import first_rgs, next_rgs

name = "numpy"


def _color_matrices(indptr, nbrs, ecol, k):
    n = len(indptr) - 1
    mats = np.zeros((k, n, n), dtype=np.uint8)
    for v in range(n):
        for j in range(indptr[v], indptr[v + 1]):
            mats[ecol[j], v, nbrs[j]] = 1
    return mats


def _pair_reach(indptr, nbrs, ecol, k):
    """Boolean matrix: rainbow path exists between each ordered vertex pair."""
    n = len(indptr) - 1
    mats = _color_matrices(indptr, nbrs, ecol, k)
    size = 1 << k
    reach = np.zeros((size, n, n), dtype=bool)
    np.fill_diagonal(reach[0], True)
    total = np.eye(n, dtype=bool)
    for mask in range(size):
        layer = reach[mask]
        if not layer.any():
            continue
        step_base = layer.astype(np.uint8)
        for c in range(k):
            bit = 1 << c
            if mask & bit:
                continue
            reach[mask | bit] |= (step_base @ mats[c]) > 0
        total |= layer
    return total


def rainbow_connected(indptr, nbrs, ecol, k) -> bool:
    n = len(indptr) - 1
    if n <= 1:
        return True
    return bool(_pair_reach(indptr, nbrs, ecol, k).all())


def rainbow_pair(indptr, nbrs, ecol, k, src, dst) -> bool:
    if src == dst:
        return True
    return bool(_pair_reach(indptr, nbrs, ecol, k)[src, dst])


def find_canonical_coloring(indptr, nbrs, eidx, m, k, budget):
    """Same contract and enumeration order as the compiled search."""
    n = len(indptr) - 1
    colors = np.zeros(m, dtype=np.int64)
    a = first_rgs(m, k)
    if a is None:
        return 0, colors, 0, 0
    examined = 0
    expansions = 0
    per_check = max(1, (n - 1) * (1 << k))  # coarse stand-in for queue pops
    ecol = np.zeros(len(nbrs), dtype=np.int64)
    eidx_arr = np.asarray(eidx)
    while True:
        examined += 1
        arr = np.asarray(a, dtype=np.int64)
        ecol[:] = arr[eidx_arr] - 1
        expansions += per_check
        if rainbow_connected(indptr, nbrs, ecol, k):
            colors[:] = arr
            return 1, colors, examined, expansions
        if expansions > budget:
            return -1, colors, examined, expansions
        if not next_rgs(a, k):
            return 0, colors, examined, expansions
