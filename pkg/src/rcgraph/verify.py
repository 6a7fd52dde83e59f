"""Rainbow connectivity checking and witness extraction.

This is the ground-truth side of the package: everything the constructive
colorers and the exact solver produce is re-checked here.  The check is
fixed-parameter in the number of distinct colors d: a search over states
(vertex, set of colors used) visits at most ``n * 2**d`` states, keeping only
set-minimal color subsets per vertex.  Above a configurable cap the state
space is abandoned for a plain DFS over simple paths, which is what trees
with nearly all-distinct colors need.

All functions are pure; inputs are immutable and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import InputError
from .graph import Edge, Graph, _norm_edge, is_connected

SUBSET_SEARCH_CAP = 16


@dataclass(frozen=True)
class EdgeColoring:
    """Total assignment of colors ``1..k`` to the edges of a bound graph.

    ``colors`` is aligned with ``graph.edges``; k may exceed the number of
    distinct colors actually used.
    """

    graph: Graph
    colors: tuple[int, ...]
    k: int
    _index: dict[Edge, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.colors) != self.graph.m:
            raise InputError(
                f"coloring has {len(self.colors)} entries for {self.graph.m} edges"
            )
        if self.k < 1 and self.graph.m > 0:
            raise InputError(f"palette size must be at least 1, got {self.k}")
        for c in self.colors:
            if not 1 <= c <= self.k:
                raise InputError(f"color {c} outside palette 1..{self.k}")
        object.__setattr__(
            self, "_index", {e: i for i, e in enumerate(self.graph.edges)}
        )

    @classmethod
    def from_map(cls, graph: Graph, assignment: dict[tuple[int, int], int], k: int | None = None) -> "EdgeColoring":
        normalized = {_norm_edge(u, v): c for (u, v), c in assignment.items()}
        missing = [e for e in graph.edges if e not in normalized]
        if missing:
            raise InputError(f"coloring misses edges, first: {missing[0]}")
        if len(normalized) != graph.m:
            extra = sorted(set(normalized) - set(graph.edges))
            raise InputError(f"coloring mentions non-edges, first: {extra[0]}")
        colors = tuple(normalized[e] for e in graph.edges)
        return cls(graph, colors, max(colors, default=1) if k is None else k)

    @classmethod
    def from_sequence(cls, graph: Graph, colors, k: int | None = None) -> "EdgeColoring":
        colors = tuple(int(c) for c in colors)
        return cls(graph, colors, max(colors, default=1) if k is None else k)

    def color_of(self, u: int, v: int) -> int:
        e = _norm_edge(u, v)
        if e not in self._index:
            raise InputError(f"{e} is not an edge of the bound graph")
        return self.colors[self._index[e]]

    def as_map(self) -> dict[Edge, int]:
        return dict(zip(self.graph.edges, self.colors))

    def used(self) -> int:
        return len(set(self.colors))

    def rebind(self, k: int) -> "EdgeColoring":
        """Same assignment under a (possibly larger) palette."""
        return EdgeColoring(self.graph, self.colors, k)


@dataclass(frozen=True)
class RainbowWitness:
    """A concrete rainbow path: vertex sequence plus the colors along it."""

    path: tuple[int, ...]
    colors: tuple[int, ...]

    def check(self, g: Graph, c: EdgeColoring) -> bool:
        """Re-validate against the graph and coloring, independent of any search."""
        if len(self.colors) != len(self.path) - 1 and self.path:
            return False
        if len(set(self.colors)) != len(self.colors):
            return False
        for i, col in enumerate(self.colors):
            u, v = self.path[i], self.path[i + 1]
            if not g.has_edge(u, v) or c.color_of(u, v) != col:
                return False
        return True


def _require_bound(g: Graph, c: EdgeColoring) -> None:
    if c.graph != g:
        raise InputError("coloring is not bound to this graph")


def _dense_csr(g: Graph, c: EdgeColoring):
    """CSR arrays with colors remapped onto 0..d-1 by first appearance."""
    remap: dict[int, int] = {}
    dense = []
    for col in c.colors:
        if col not in remap:
            remap[col] = len(remap)
        dense.append(remap[col])
    n = g.n
    deg = [0] * n
    for u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    indptr = np.zeros(n + 1, dtype=np.int64)
    for v in range(n):
        indptr[v + 1] = indptr[v] + deg[v]
    nbrs = np.zeros(2 * g.m, dtype=np.int64)
    ecol = np.zeros(2 * g.m, dtype=np.int64)
    cursor = indptr[:-1].copy()
    for i, (u, v) in enumerate(g.edges):
        nbrs[cursor[u]] = v
        ecol[cursor[u]] = dense[i]
        cursor[u] += 1
        nbrs[cursor[v]] = u
        ecol[cursor[v]] = dense[i]
        cursor[v] += 1
    return indptr, nbrs, ecol, len(remap)


def search_csr(g: Graph):
    """CSR arrays plus a half-edge -> edge-position map, for the search kernels."""
    n = g.n
    deg = [0] * n
    for u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    indptr = np.zeros(n + 1, dtype=np.int64)
    for v in range(n):
        indptr[v + 1] = indptr[v] + deg[v]
    nbrs = np.zeros(2 * g.m, dtype=np.int64)
    eidx = np.zeros(2 * g.m, dtype=np.int64)
    cursor = indptr[:-1].copy()
    for i, (u, v) in enumerate(g.edges):
        nbrs[cursor[u]] = v
        eidx[cursor[u]] = i
        cursor[u] += 1
        nbrs[cursor[v]] = u
        eidx[cursor[v]] = i
        cursor[v] += 1
    return indptr, nbrs, eidx


def _dfs_pair(g: Graph, c: EdgeColoring, u: int, v: int) -> bool:
    """Simple-path DFS with color-reuse pruning, for palettes past the cap."""
    color_bit: dict[int, int] = {}
    for col in set(c.colors):
        color_bit[col] = 1 << len(color_bit)
    target = v
    stack = [(u, 1 << u, 0)]
    while stack:
        x, visited, used = stack.pop()
        for y in sorted(g.neighbors(x), reverse=True):
            if visited >> y & 1:
                continue
            bit = color_bit[c.color_of(x, y)]
            if used & bit:
                continue
            if y == target:
                return True
            stack.append((y, visited | 1 << y, used | bit))
    return False


def rainbow_path_exists(g: Graph, c: EdgeColoring, u: int, v: int,
                        subset_cap: int = SUBSET_SEARCH_CAP) -> bool:
    """Whether some u-v path uses pairwise distinct edge colors.

    ``u == v`` counts as connected via the empty path.
    """
    _require_bound(g, c)
    g.check_vertex(u)
    g.check_vertex(v)
    if u == v:
        return True
    if g.m == 0:
        return False
    indptr, nbrs, ecol, d = _dense_csr(g, c)
    if d > subset_cap:
        return _dfs_pair(g, c, u, v)
    return bool(_kernels.rainbow_pair(indptr, nbrs, ecol, d, u, v))


def is_rainbow_connected(g: Graph, c: EdgeColoring,
                         subset_cap: int = SUBSET_SEARCH_CAP) -> bool:
    """Whether every vertex pair is joined by a rainbow path.

    Disconnected graphs with at least two vertices are never rainbow
    connected.  Pair checks are independent, so the conjunction is
    order-insensitive.
    """
    _require_bound(g, c)
    if g.n <= 1:
        return True
    if g.m == 0:
        return False
    indptr, nbrs, ecol, d = _dense_csr(g, c)
    if d > subset_cap:
        if not is_connected(g):
            return False
        return all(
            _dfs_pair(g, c, u, v)
            for u in range(g.n) for v in range(u + 1, g.n)
        )
    return bool(_kernels.rainbow_connected(indptr, nbrs, ecol, d))


def rainbow_witness(g: Graph, c: EdgeColoring, u: int, v: int,
                    subset_cap: int = SUBSET_SEARCH_CAP) -> RainbowWitness | None:
    """A shortest rainbow u-v path, or None.

    Reconstructed from breadth-first search parents; ties break toward the
    smallest next vertex id, so reports are deterministic.
    """
    _require_bound(g, c)
    g.check_vertex(u)
    g.check_vertex(v)
    if u == v:
        return RainbowWitness((u,), ())
    distinct = len(set(c.colors))
    if distinct > subset_cap:
        return _deepening_witness(g, c, u, v)
    start = (u, frozenset())
    parent: dict[tuple[int, frozenset], tuple[int, frozenset]] = {start: start}
    queue = [start]
    while queue:
        nxt: list[tuple[int, frozenset]] = []
        for x, used in queue:
            for y in sorted(g.neighbors(x)):
                col = c.color_of(x, y)
                if col in used:
                    continue
                state = (y, used | {col})
                if state in parent:
                    continue
                parent[state] = (x, used)
                if y == v:
                    return _unwind(parent, state, c)
                nxt.append(state)
        queue = nxt
    return None


def _unwind(parent, state, c: EdgeColoring) -> RainbowWitness:
    path = [state[0]]
    while parent[state] != state:
        state = parent[state]
        path.append(state[0])
    path.reverse()
    cols = tuple(c.color_of(path[i], path[i + 1]) for i in range(len(path) - 1))
    return RainbowWitness(tuple(path), cols)


def _deepening_witness(g: Graph, c: EdgeColoring, u: int, v: int) -> RainbowWitness | None:
    """Iterative-deepening DFS used above the subset cap; still shortest-first."""
    for depth in range(1, g.n):
        found = _bounded_dfs(g, c, u, v, depth, (u,), frozenset())
        if found is not None:
            cols = tuple(c.color_of(found[i], found[i + 1]) for i in range(len(found) - 1))
            return RainbowWitness(found, cols)
    return None


def _bounded_dfs(g, c, x, target, depth, path, used):
    if x == target:
        return path
    if depth == 0:
        return None
    for y in sorted(g.neighbors(x)):
        if y in path:
            continue
        col = c.color_of(x, y)
        if col in used:
            continue
        found = _bounded_dfs(g, c, y, target, depth - 1, path + (y,), used | {col})
        if found is not None:
            return found
    return None


def first_failing_pair(g: Graph, c: EdgeColoring) -> tuple[int, int] | None:
    """Lexicographically first pair with no rainbow path (diagnostics)."""
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if not rainbow_path_exists(g, c, u, v):
                return (u, v)
    return None


def permute_colors(c: EdgeColoring, perm: dict[int, int]) -> EdgeColoring:
    """Apply a color permutation; palette size is preserved."""
    return EdgeColoring(c.graph, tuple(perm.get(x, x) for x in c.colors), c.k)
