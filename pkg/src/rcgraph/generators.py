"""Deterministic graph generators for the command line and the test suite."""

from __future__ import annotations

from math import comb

import numpy as np

from .errors import InputError
from .graph import Graph, make_graph
from .thresholds import all_edge_slots, lollipop, _connected_edges


def complete(n: int) -> Graph:
    if n < 1:
        raise InputError(f"complete graph needs n >= 1, got {n}")
    return make_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def path(n: int) -> Graph:
    if n < 1:
        raise InputError(f"path needs n >= 1, got {n}")
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise InputError(f"cycle needs n >= 3, got {n}")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(n: int) -> Graph:
    if n < 2:
        raise InputError(f"star needs n >= 2, got {n}")
    return make_graph(n, [(0, i) for i in range(1, n)])


def random_connected(n: int, m: int, seed: int | None = None) -> Graph:
    """Uniform connected G(n, m) by rejection, reproducible from the seed."""
    if n < 1 or m < n - 1 or m > comb(n, 2):
        raise InputError(
            f"connected graph needs n-1 <= m <= C(n,2); got n={n}, m={m}"
        )
    rng = np.random.default_rng(seed)
    slots = all_edge_slots(n)
    while True:
        picks = rng.choice(len(slots), size=m, replace=False)
        edges = tuple(sorted(slots[i] for i in picks))
        if _connected_edges(n, edges):
            return make_graph(n, edges)


def generate(kind: str, params: list[int], seed: int | None = None) -> Graph:
    """Dispatch for the CLI ``gen`` command."""
    try:
        if kind == "complete":
            (n,) = params
            return complete(n)
        if kind == "path":
            (n,) = params
            return path(n)
        if kind == "cycle":
            (n,) = params
            return cycle(n)
        if kind == "star":
            (n,) = params
            return star(n)
        if kind == "lollipop":
            n, k = params
            return lollipop(n, k)
        if kind == "random":
            n, m = params
            return random_connected(n, m, seed)
    except ValueError as exc:
        raise InputError(f"wrong parameter count for {kind!r}: {params}") from exc
    raise InputError(
        f"unknown kind {kind!r}; choose complete, path, cycle, star, lollipop, random"
    )
