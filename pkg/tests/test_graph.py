from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import connected_graphs
from rcgraph.errors import DisconnectedError, InputError
from rcgraph.generators import complete, cycle, path, star
from rcgraph.graph import (complement_neighborhood, components, delete_edges,
                           delete_vertex, diameter, distance, induced,
                           is_connected, k_step_neighborhood, make_graph,
                           min_degree_vertex)


def test_make_graph_normalizes():
    g = make_graph(3, [(2, 0), (1, 2), (0, 1)])
    assert g.edges == ((0, 1), (0, 2), (1, 2))
    assert g.m == 3


def test_make_graph_path():
    g = make_graph(4, [(0, 1), (1, 2), (2, 3)])
    assert g.m == 3
    assert g.degree(0) == 1 and g.degree(1) == 2


@pytest.mark.parametrize("edges,err", [
    ([(0, 0)], "self-loop"),
    ([(0, 1), (1, 0)], "duplicate"),
    ([(0, 3)], "outside"),
])
def test_make_graph_rejects(edges, err):
    with pytest.raises(InputError, match=err):
        make_graph(3, edges)


def test_distance_examples():
    p4 = path(4)
    assert distance(p4, 0, 3) == 3
    assert distance(p4, 2, 2) == 0
    k4 = complete(4)
    assert all(distance(k4, u, v) == 1 for u in range(4) for v in range(4) if u != v)
    two_comp = make_graph(4, [(0, 1), (2, 3)])
    assert distance(two_comp, 0, 3) is None


def test_distance_bad_ids():
    with pytest.raises(InputError):
        distance(path(3), 0, 5)


def test_k_step_neighborhood_examples():
    p5 = path(5)
    assert k_step_neighborhood(p5, {0}, 2) == {2}
    assert k_step_neighborhood(p5, {0, 3}, 0) == {0, 3}
    assert k_step_neighborhood(complete(4), {0}, 1) == {1, 2, 3}
    assert k_step_neighborhood(p5, {0}, 9) == frozenset()


def test_k_step_neighborhood_empty_set():
    with pytest.raises(InputError):
        k_step_neighborhood(path(3), set(), 1)


def test_complement_neighborhood_examples():
    assert complement_neighborhood(complete(4), 0) == frozenset()
    assert complement_neighborhood(path(4), 0) == {2, 3}
    assert complement_neighborhood(make_graph(3, []), 0) == {1, 2}


def test_diameter_examples():
    assert diameter(cycle(6)) == 3
    assert diameter(complete(5)) == 1
    assert diameter(path(4)) == 3
    with pytest.raises(DisconnectedError):
        diameter(make_graph(4, [(0, 1), (2, 3)]))


def test_min_degree_vertex_examples():
    assert min_degree_vertex(star(5)) == (1, 1)
    assert min_degree_vertex(complete(4)) == (0, 3)
    assert min_degree_vertex(path(4)) == (0, 1)


def test_components_examples():
    assert components(cycle(5)) == [frozenset(range(5))]
    g = make_graph(4, [(0, 1), (0, 2), (1, 2)])
    assert components(g) == [frozenset({0, 1, 2}), frozenset({3})]
    assert components(make_graph(3, [])) == [frozenset({0}), frozenset({1}), frozenset({2})]


def test_delete_and_induced_examples():
    k4 = complete(4)
    g, relabel = delete_vertex(k4, 3)
    assert g.edges == ((0, 1), (0, 2), (1, 2))
    assert relabel == {0: 0, 1: 1, 2: 2}

    c4 = cycle(4)
    p = delete_edges(c4, [(0, 1)])
    assert sorted(p.degree(v) for v in range(4)) == [1, 1, 2, 2]

    sub, mapping = induced(k4, {0, 1})
    assert sub.n == 2 and sub.edges == ((0, 1),)
    assert mapping == {0: 0, 1: 1}


def test_delete_edges_requires_presence():
    with pytest.raises(InputError):
        delete_edges(path(3), [(0, 2)])


def test_delete_vertex_relabels_and_maps():
    g = make_graph(5, [(0, 4), (1, 4), (2, 3)])
    h, relabel = delete_vertex(g, 1)
    assert relabel == {0: 0, 2: 1, 3: 2, 4: 3}
    assert h.edges == ((0, 3), (1, 2))


@given(connected_graphs(max_n=7))
def test_degree_complement_identity(g):
    for v in range(g.n):
        assert g.degree(v) + len(complement_neighborhood(g, v)) == g.n - 1


@given(connected_graphs(max_n=7))
def test_layers_partition_reachable(g):
    seen = set()
    k = 0
    while True:
        layer = k_step_neighborhood(g, {0}, k)
        if not layer:
            break
        assert not (layer & seen)
        seen |= layer
        k += 1
    assert seen == set(range(g.n))  # connected, so every vertex is in a layer


@given(connected_graphs(max_n=6), st.integers(0, 5), st.integers(0, 5), st.integers(0, 5))
def test_triangle_inequality(g, a, b, c):
    u, v, w = a % g.n, b % g.n, c % g.n
    assert distance(g, u, w) <= distance(g, u, v) + distance(g, v, w)


@given(connected_graphs(max_n=7), st.integers(0, 6))
def test_delete_vertex_edge_count(g, raw):
    v = raw % g.n
    h, _ = delete_vertex(g, v)
    assert h.m == g.m - g.degree(v)


@given(connected_graphs(max_n=7))
def test_components_cover_and_disjoint(g):
    comps = components(g)
    all_vertices = sorted(v for comp in comps for v in comp)
    assert all_vertices == list(range(g.n))
    assert is_connected(g) == (len(comps) == 1)
