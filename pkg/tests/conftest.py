from __future__ import annotations

import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rcgraph.graph import make_graph

settings.register_profile(
    "rcgraph",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("rcgraph")


@st.composite
def connected_graphs(draw, min_n: int = 2, max_n: int = 7):
    """Random connected labeled graph: a random spanning tree plus extras."""
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for v in range(1, n):
        p = draw(st.integers(0, v - 1))
        edges.add((p, v))
    slots = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in edges]
    if slots:
        picks = draw(st.lists(st.integers(0, len(slots) - 1), max_size=len(slots)))
        edges.update(slots[i] for i in set(picks))
    return make_graph(n, sorted(edges))


@st.composite
def colored_graphs(draw, min_n: int = 2, max_n: int = 7, max_k: int = 4):
    from rcgraph.verify import EdgeColoring

    g = draw(connected_graphs(min_n, max_n))
    k = draw(st.integers(1, max_k))
    colors = [draw(st.integers(1, k)) for _ in range(g.m)]
    return g, EdgeColoring.from_sequence(g, colors, k=k)


def seeded_random_graph(rng: random.Random, n: int, m: int):
    """Connected G(n, m) by rejection on a plain Random instance."""
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    from rcgraph.graph import is_connected

    while True:
        edges = tuple(sorted(rng.sample(slots, m)))
        g = make_graph(n, edges)
        if is_connected(g):
            return g
