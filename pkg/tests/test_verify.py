from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import colored_graphs, connected_graphs
from rcgraph.errors import InputError
from rcgraph.generators import complete, cycle, path
from rcgraph.graph import is_connected, make_graph
from rcgraph.verify import (EdgeColoring, is_rainbow_connected, permute_colors,
                            rainbow_path_exists, rainbow_witness)


def all_simple_paths_rainbow(g, c, u, v):
    """Independent oracle: enumerate every simple path and test its colors."""
    if u == v:
        return True
    found = []

    def dfs(x, visited, colors):
        if x == v:
            found.append(True)
            return True
        for y in sorted(g.neighbors(x)):
            if y in visited:
                continue
            col = c.color_of(x, y)
            if col in colors:
                continue
            if dfs(y, visited | {y}, colors | {col}):
                return True
        return False

    return dfs(u, {u}, set())


def test_single_edge_paths():
    k3 = complete(3)
    c = EdgeColoring.from_sequence(k3, [1, 1, 1])
    assert rainbow_path_exists(k3, c, 0, 1) is True


def test_forced_repeat_blocks():
    p3 = path(3)
    c = EdgeColoring.from_sequence(p3, [1, 1], k=2)
    assert rainbow_path_exists(p3, c, 0, 2) is False


def test_c4_alternating_two_colors():
    c4 = cycle(4)
    c = EdgeColoring.from_map(c4, {(0, 1): 1, (1, 2): 2, (2, 3): 1, (0, 3): 2})
    expected = all_simple_paths_rainbow(c4, c, 0, 2)
    assert expected is True
    assert rainbow_path_exists(c4, c, 0, 2) is expected


def test_is_rainbow_connected_examples():
    k4 = complete(4)
    assert is_rainbow_connected(k4, EdgeColoring.from_sequence(k4, [1] * 6))
    p4 = path(4)
    assert is_rainbow_connected(p4, EdgeColoring.from_sequence(p4, [1, 2, 3]))
    assert not is_rainbow_connected(p4, EdgeColoring.from_sequence(p4, [1, 2, 1]))


def test_disconnected_never_rainbow_connected():
    g = make_graph(4, [(0, 1), (2, 3)])
    c = EdgeColoring.from_sequence(g, [1, 2])
    assert not is_rainbow_connected(g, c)


def test_same_vertex_is_connected():
    p3 = path(3)
    c = EdgeColoring.from_sequence(p3, [1, 1], k=2)
    assert rainbow_path_exists(p3, c, 1, 1)
    w = rainbow_witness(p3, c, 1, 1)
    assert w.path == (1,) and w.colors == ()


def test_binding_is_checked():
    p3, p3b = path(3), path(4)
    c = EdgeColoring.from_sequence(p3, [1, 2])
    with pytest.raises(InputError):
        is_rainbow_connected(p3b, c)


def test_witness_examples():
    k3 = complete(3)
    c = EdgeColoring.from_sequence(k3, [1, 1, 1])
    w = rainbow_witness(k3, c, 0, 1)
    assert w.path == (0, 1) and w.colors == (1,)
    assert w.check(k3, c)

    p3 = path(3)
    c = EdgeColoring.from_sequence(p3, [1, 2])
    w = rainbow_witness(p3, c, 0, 2)
    assert w.path == (0, 1, 2) and w.colors == (1, 2)

    c = EdgeColoring.from_sequence(p3, [1, 1], k=2)
    assert rainbow_witness(p3, c, 0, 2) is None


def test_witness_is_deterministic_and_shortest():
    g = complete(4)
    c = EdgeColoring.from_map(g, {(0, 1): 1, (0, 2): 2, (0, 3): 3,
                                  (1, 2): 1, (1, 3): 2, (2, 3): 3})
    w1 = rainbow_witness(g, c, 0, 3)
    w2 = rainbow_witness(g, c, 0, 3)
    assert w1 == w2
    assert len(w1.path) == 2  # adjacent, so the direct edge wins


@given(colored_graphs(max_n=6))
def test_permutation_invariance(gc):
    g, c = gc
    perm = {i: (i % c.k) + 1 for i in range(1, c.k + 1)}
    assert is_rainbow_connected(g, c) == is_rainbow_connected(g, permute_colors(c, perm))


@given(connected_graphs(max_n=7))
def test_all_distinct_coloring_connects(g):
    if g.m == 0:
        return
    c = EdgeColoring.from_sequence(g, range(1, g.m + 1))
    assert is_rainbow_connected(g, c)


@given(colored_graphs(max_n=6))
def test_agrees_with_path_enumeration(gc):
    g, c = gc
    for u in range(g.n):
        for v in range(u + 1, g.n):
            assert rainbow_path_exists(g, c, u, v) == all_simple_paths_rainbow(g, c, u, v)


@given(colored_graphs(max_n=6))
def test_connected_pairs_have_valid_witnesses(gc):
    g, c = gc
    if not is_rainbow_connected(g, c):
        return
    for u in range(g.n):
        for v in range(u + 1, g.n):
            w = rainbow_witness(g, c, u, v)
            assert w is not None and w.check(g, c)
            assert w.path[0] == u and w.path[-1] == v


def test_tree_case_matches_unique_paths():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(2, 9)
        edges = [(rng.randint(0, v - 1), v) for v in range(1, n)]
        g = make_graph(n, edges)
        colors = [rng.randint(1, max(1, g.m)) for _ in range(g.m)]
        c = EdgeColoring.from_sequence(g, colors, k=max(1, g.m))
        expected = all(
            all_simple_paths_rainbow(g, c, u, v)
            for u in range(n) for v in range(u + 1, n)
        )
        assert is_rainbow_connected(g, c) == expected


def test_high_palette_falls_back_to_dfs():
    # 18 distinct colors exceeds the subset cap; tree paths still verify
    g = path(19)
    c = EdgeColoring.from_sequence(g, range(1, 19))
    assert is_rainbow_connected(g, c)
    c2 = EdgeColoring.from_sequence(g, [1] + list(range(1, 18)), k=18)
    assert not is_rainbow_connected(g, c2)
    assert rainbow_witness(g, c, 0, 18).path == tuple(range(19))


def test_coloring_validation():
    p3 = path(3)
    with pytest.raises(InputError):
        EdgeColoring.from_sequence(p3, [1], k=1)
    with pytest.raises(InputError):
        EdgeColoring.from_sequence(p3, [1, 5], k=2)
    with pytest.raises(InputError):
        EdgeColoring.from_map(p3, {(0, 1): 1})
