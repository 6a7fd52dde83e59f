"""Immutable simple undirected graphs and their distance/neighborhood toolkit.

Vertices are dense integer ids ``0..n-1``.  Graphs are value objects: every
derived graph (vertex deletion, edge deletion, induced subgraph) is a new
object and the parent stays intact, which is what the inductive coloring
procedures need.  Deletions that relabel vertices also return the relabeling
map so colorings computed on the derived graph can be pulled back to the
parent's ids.

Adjacency is kept twice: as the normalized edge tuple and as one bitmask row
per vertex, so neighborhood intersections such as ``N(v) & N(w)`` are single
word operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import DisconnectedError, InputError

Edge = tuple[int, int]


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1`` with a normalized edge set."""

    n: int
    edges: tuple[Edge, ...]
    adj: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rows = [0] * self.n
        for u, v in self.edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        object.__setattr__(self, "adj", tuple(rows))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1) if u != v else False

    def check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise InputError(f"vertex id {v!r} out of range 0..{self.n - 1}")


def make_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a normalized :class:`Graph`, rejecting loops, duplicates and bad ids."""
    if n < 0:
        raise InputError(f"vertex count must be nonnegative, got {n}")
    seen: set[Edge] = set()
    normalized: list[Edge] = []
    for u, v in edges:
        if not (isinstance(u, int) and isinstance(v, int)):
            raise InputError(f"edge endpoints must be integers, got ({u!r}, {v!r})")
        if u == v:
            raise InputError(f"self-loop at vertex {u} is not allowed")
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u}, {v}) references ids outside 0..{n - 1}")
        e = _norm_edge(u, v)
        if e in seen:
            raise InputError(f"duplicate edge {e}")
        seen.add(e)
        normalized.append(e)
    return Graph(n, tuple(sorted(normalized)))


def from_normalized(n: int, edges: tuple[Edge, ...]) -> Graph:
    """Trusted constructor for edges already normalized and sorted.

    Used by enumeration loops that build millions of graphs; skips validation.
    """
    return Graph(n, edges)


def _bfs_layers(g: Graph, start_mask: int) -> list[int]:
    """Masks of vertices at BFS distance 0, 1, 2, ... from the start set."""
    layers = [start_mask]
    seen = start_mask
    frontier = start_mask
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= frontier
        if frontier:
            layers.append(frontier)
    return layers


def distance(g: Graph, u: int, v: int) -> int | None:
    """Length of a shortest u-v path; ``None`` when v is unreachable from u."""
    g.check_vertex(u)
    g.check_vertex(v)
    if u == v:
        return 0
    target = 1 << v
    seen = 1 << u
    frontier = seen
    d = 0
    while frontier:
        nxt = 0
        for w in _bits(frontier):
            nxt |= g.adj[w]
        frontier = nxt & ~seen
        seen |= frontier
        d += 1
        if frontier & target:
            return d
    return None


def k_step_neighborhood(g: Graph, members: Iterable[int], k: int) -> frozenset[int]:
    """Vertices at BFS distance exactly ``k`` from the vertex set.

    Distance to a set is the minimum over its members, so the layers partition
    the set of vertices reachable from it; layer 0 is the set itself.
    """
    sset = frozenset(members)
    if not sset:
        raise InputError("k-step neighborhood of the empty set is undefined")
    if k < 0:
        raise InputError(f"step count must be nonnegative, got {k}")
    mask = 0
    for v in sset:
        g.check_vertex(v)
        mask |= 1 << v
    layers = _bfs_layers(g, mask)
    if k >= len(layers):
        return frozenset()
    return frozenset(_bits(layers[k]))


def complement_neighborhood(g: Graph, v: int) -> frozenset[int]:
    """All vertices other than ``v`` that are not adjacent to it."""
    g.check_vertex(v)
    full = (1 << g.n) - 1
    mask = full & ~g.adj[v] & ~(1 << v)
    return frozenset(_bits(mask))


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << g.n) - 1


def diameter(g: Graph) -> int:
    """Largest pairwise BFS distance; requires a connected graph."""
    if g.n == 0:
        raise InputError("diameter of the empty graph is undefined")
    if not is_connected(g):
        raise DisconnectedError("diameter is undefined for disconnected graphs")
    best = 0
    for u in range(g.n):
        layers = _bfs_layers(g, 1 << u)
        best = max(best, len(layers) - 1)
    return best


def eccentricity_layers(g: Graph, v: int) -> list[frozenset[int]]:
    """BFS layers from a single vertex, as vertex sets (layer 0 is ``{v}``)."""
    g.check_vertex(v)
    return [frozenset(_bits(mask)) for mask in _bfs_layers(g, 1 << v)]


def min_degree_vertex(g: Graph) -> tuple[int, int]:
    """A vertex of minimum degree and its degree; ties break to the smallest id."""
    if g.n < 1:
        raise InputError("graph has no vertices")
    best_v = 0
    best_d = g.degree(0)
    for v in range(1, g.n):
        d = g.degree(v)
        if d < best_d:
            best_v, best_d = v, d
    return best_v, best_d


def components(g: Graph) -> list[frozenset[int]]:
    """Connected components as vertex sets, ordered by smallest member id."""
    out: list[frozenset[int]] = []
    assigned = 0
    for v in range(g.n):
        if assigned >> v & 1:
            continue
        seen = 1 << v
        frontier = seen
        while frontier:
            nxt = 0
            for w in _bits(frontier):
                nxt |= g.adj[w]
            frontier = nxt & ~seen
            seen |= frontier
        assigned |= seen
        out.append(frozenset(_bits(seen)))
    return out


def delete_vertex(g: Graph, v: int) -> tuple[Graph, dict[int, int]]:
    """Remove a vertex, relabel the rest to ``0..n-2`` and return the id map."""
    g.check_vertex(v)
    relabel = {old: (old if old < v else old - 1) for old in range(g.n) if old != v}
    edges = tuple(sorted(
        _norm_edge(relabel[a], relabel[b]) for a, b in g.edges if v not in (a, b)
    ))
    return Graph(g.n - 1, edges), relabel


def delete_edges(g: Graph, edges: Iterable[tuple[int, int]]) -> Graph:
    """Remove the listed edges (all must be present); vertex ids are unchanged."""
    drop: set[Edge] = set()
    for u, v in edges:
        g.check_vertex(u)
        g.check_vertex(v)
        e = _norm_edge(u, v)
        if not g.has_edge(*e):
            raise InputError(f"edge {e} is not in the graph")
        if e in drop:
            raise InputError(f"edge {e} listed twice")
        drop.add(e)
    return Graph(g.n, tuple(e for e in g.edges if e not in drop))


def induced(g: Graph, members: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on the given vertices, relabeled; returns the id map."""
    sset = sorted(set(members))
    for v in sset:
        g.check_vertex(v)
    relabel = {old: i for i, old in enumerate(sset)}
    keep = set(sset)
    edges = tuple(sorted(
        (relabel[a], relabel[b]) for a, b in g.edges if a in keep and b in keep
    ))
    return Graph(len(sset), edges), relabel


def is_complete(g: Graph) -> bool:
    return g.m == g.n * (g.n - 1) // 2


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)
