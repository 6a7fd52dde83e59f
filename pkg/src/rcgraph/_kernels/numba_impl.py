"""Compiled hot kernels: rainbow reachability and canonical coloring search.

State space for reachability is (vertex, set-of-colors-used); a state is only
expanded when its color set is not a superset of one already recorded at that
vertex, so per vertex only the minimal color sets survive.  All kernels take
flat CSR arrays (``indptr``, neighbor list, one color per half-edge) and are
compiled once with on-disk caching.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_JIT = {"cache": True, "nogil": True}

name = "numba"


@njit(**_JIT)
def _reach_all_from(indptr, nbrs, ecol, k, src, need_mask,
                    seen, minimal, mincnt, reach, stamp, qv, qm):
    """Single-source rainbow reachability.

    Returns (reached_everything_in_need_mask, expansions).  Buffers are
    generation-stamped so callers can reuse them without clearing.
    """
    n = indptr.shape[0] - 1
    head = 0
    tail = 0
    qv[tail] = src
    qm[tail] = 0
    tail += 1
    seen[src, 0] = stamp
    minimal[src, 0] = 0
    mincnt[src] = 1
    reach[src] = stamp
    remaining = 0
    for v in range(n):
        if (need_mask >> v) & 1 and v != src:
            remaining += 1
    expansions = 0
    while head < tail and remaining > 0:
        v = qv[head]
        mask = qm[head]
        head += 1
        expansions += 1
        for j in range(indptr[v], indptr[v + 1]):
            w = nbrs[j]
            bit = np.int64(1) << ecol[j]
            if mask & bit:
                continue
            nm = mask | bit
            if seen[w, nm] == stamp:
                continue
            if reach[w] != stamp:
                cnt = 0
            else:
                cnt = mincnt[w]
            dominated = False
            for t in range(cnt):
                prev = minimal[w, t]
                if prev & nm == prev:
                    dominated = True
                    break
            if dominated:
                seen[w, nm] = stamp
                continue
            seen[w, nm] = stamp
            if reach[w] != stamp:
                reach[w] = stamp
                mincnt[w] = 0
                if (need_mask >> w) & 1:
                    remaining -= 1
            # drop recorded sets that the new one is contained in
            cnt = mincnt[w]
            t = 0
            while t < cnt:
                prev = minimal[w, t]
                if prev & nm == nm:
                    cnt -= 1
                    minimal[w, t] = minimal[w, cnt]
                else:
                    t += 1
            minimal[w, cnt] = nm
            mincnt[w] = cnt + 1
            qv[tail] = w
            qm[tail] = nm
            tail += 1
    return remaining == 0, expansions


@njit(**_JIT)
def _alloc(n, k):
    size = np.int64(1) << k
    seen = np.zeros((n, size), dtype=np.int64)
    minimal = np.zeros((n, size), dtype=np.int64)
    mincnt = np.zeros(n, dtype=np.int64)
    reach = np.zeros(n, dtype=np.int64)
    cap = n * size + 1
    qv = np.zeros(cap, dtype=np.int64)
    qm = np.zeros(cap, dtype=np.int64)
    return seen, minimal, mincnt, reach, qv, qm


@njit(**_JIT)
def rainbow_connected(indptr, nbrs, ecol, k):
    """True when every vertex pair is joined by a path with distinct edge colors."""
    n = indptr.shape[0] - 1
    if n <= 1:
        return True
    seen, minimal, mincnt, reach, qv, qm = _alloc(n, k)
    full = (np.int64(1) << n) - 1
    stamp = np.int64(0)
    for src in range(n - 1):
        stamp += 1
        ok, _ = _reach_all_from(indptr, nbrs, ecol, k, src, full,
                                seen, minimal, mincnt, reach, stamp, qv, qm)
        if not ok:
            return False
    return True


@njit(**_JIT)
def rainbow_pair(indptr, nbrs, ecol, k, src, dst):
    """True when some src-dst path has pairwise distinct edge colors."""
    if src == dst:
        return True
    n = indptr.shape[0] - 1
    seen, minimal, mincnt, reach, qv, qm = _alloc(n, k)
    need = np.int64(1) << dst
    ok, _ = _reach_all_from(indptr, nbrs, ecol, k, src, need,
                            seen, minimal, mincnt, reach, np.int64(1), qv, qm)
    return ok


@njit(**_JIT)
def _first_rgs(a, m, k):
    for i in range(m - k + 1):
        a[i] = 1
    for j in range(k - 1):
        a[m - k + 1 + j] = j + 2


@njit(**_JIT)
def _next_rgs(a, pmax, m, k):
    for i in range(m - 1, 0, -1):
        room = m - 1 - i
        lo = a[i] + 1
        if pmax[i - 1] >= k - room:
            cand = lo
        else:
            cand = max(lo, k - room)
        hi = min(pmax[i - 1] + 1, k)
        if cand <= hi:
            a[i] = cand
            used = max(pmax[i - 1], cand)
            pmax[i] = used
            deficit = k - used
            for j in range(i + 1, m - deficit):
                a[j] = 1
                pmax[j] = used
            val = used
            for j in range(m - deficit, m):
                val += 1
                a[j] = val
                pmax[j] = val
            return True
    return False


@njit(**_JIT)
def find_canonical_coloring(indptr, nbrs, eidx, m, k, budget):
    """First restricted-growth k-coloring making the graph rainbow connected.

    Returns ``(status, colors, examined, expansions)`` with status 1 when a
    coloring was found, 0 when the enumeration was exhausted, and -1 when the
    expansion budget ran out first.  ``colors`` is 1-based, positioned by the
    normalized edge order; ``eidx`` maps each half-edge to its edge position.
    """
    n = indptr.shape[0] - 1
    colors = np.zeros(m, dtype=np.int64)
    if k < 1 or k > m:
        return 0, colors, np.int64(0), np.int64(0)
    a = np.zeros(m, dtype=np.int64)
    pmax = np.zeros(m, dtype=np.int64)
    _first_rgs(a, m, k)
    run = np.int64(0)
    for i in range(m):
        if a[i] > run:
            run = a[i]
        pmax[i] = run
    seen, minimal, mincnt, reach, qv, qm = _alloc(n, k)
    ecol = np.zeros(nbrs.shape[0], dtype=np.int64)
    full = (np.int64(1) << n) - 1
    stamp = np.int64(0)
    examined = np.int64(0)
    expansions = np.int64(0)
    while True:
        examined += 1
        for j in range(nbrs.shape[0]):
            ecol[j] = a[eidx[j]] - 1
        ok = True
        for src in range(n - 1):
            stamp += 1
            good, used = _reach_all_from(indptr, nbrs, ecol, k, src, full,
                                         seen, minimal, mincnt, reach, stamp, qv, qm)
            expansions += used
            if not good:
                ok = False
                break
        if ok:
            for i in range(m):
                colors[i] = a[i]
            return 1, colors, examined, expansions
        if expansions > budget:
            return -1, colors, examined, expansions
        if not _next_rgs(a, pmax, m, k):
            return 0, colors, examined, expansions


def rgs_sequence(m: int, k: int, limit: int):
    """Enumerate the compiled kernel's RGS order (testing hook)."""
    out = []
    a = np.zeros(m, dtype=np.int64)
    pmax = np.zeros(m, dtype=np.int64)
    if k < 1 or k > m:
        return out
    _first_rgs(a, m, k)
    run = 0
    for i in range(m):
        run = max(run, a[i])
        pmax[i] = run
    out.append(tuple(int(x) for x in a))
    while len(out) < limit and _next_rgs(a, pmax, m, k):
        out.append(tuple(int(x) for x in a))
    return out
