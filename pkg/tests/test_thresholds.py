from __future__ import annotations

from math import comb

import pytest

from rcgraph.errors import InputError
from rcgraph.exact import rc_exact
from rcgraph.graph import is_connected
from rcgraph.thresholds import (STATUS_EXACT, STATUS_LOWER_BOUND,
                                connected_graph_stream, exhaustive_verify,
                                f_threshold, lollipop, prop_lower_bound,
                                sample_connected_graphs, sharpness_witness)


def test_f_threshold_examples():
    assert f_threshold(10, 2).value == 37
    assert f_threshold(10, 3).value == 30
    assert f_threshold(5, 4).value == 4
    entry = f_threshold(10, 6)
    assert entry.value == 15 and entry.status == STATUS_LOWER_BOUND


def test_f_threshold_range_check():
    with pytest.raises(InputError):
        f_threshold(5, 0)
    with pytest.raises(InputError):
        f_threshold(5, 5)


def test_f_threshold_statuses():
    for n in range(5, 13):
        for k in range(1, n):
            entry = f_threshold(n, k)
            expected_exact = k in (1, 2, 3, 4, n - 2, n - 1)
            assert (entry.status == STATUS_EXACT) == expected_exact
            assert entry.value >= prop_lower_bound(n, k)


def test_f_threshold_decreasing_in_k():
    for n in range(8, 13):
        ks = [1, 2, 3, 4, n - 2, n - 1]
        values = [f_threshold(n, k).value for k in ks]
        assert values == sorted(values, reverse=True)
        assert len(set(values)) == len(values)


def test_lollipop_examples():
    g = lollipop(4, 3)
    assert g.m == 3 and sorted(g.degree(v) for v in range(4)) == [1, 1, 2, 2]
    assert lollipop(5, 2).m == 7
    assert lollipop(6, 3).m == 8


def test_lollipop_counts_and_rc():
    for n, k in [(4, 3), (5, 2), (6, 3), (6, 2), (7, 3), (6, 4)]:
        g = lollipop(n, k)
        assert g.m == prop_lower_bound(n, k)
        assert is_connected(g)
        assert rc_exact(g).value == k


def test_sharpness_witnesses():
    rep = sharpness_witness(4, 2)
    assert rep.witness is not None
    assert rep.witness.edges == ((0, 1), (1, 2), (2, 3))  # the path itself

    for n, k in [(5, 2), (6, 3)]:
        rep = sharpness_witness(n, k)
        g = rep.witness
        assert g is not None and is_connected(g)
        assert g.m == f_threshold(n, k).value - 1
        assert rc_exact(g).value >= k + 1
        assert not rep.inconclusive


def test_sharpness_budget_marks_inconclusive():
    rep = sharpness_witness(6, 3, budget=0)
    assert rep.witness is None and rep.inconclusive


def test_stream_counts_small():
    # connected labeled graphs on 4 vertices with at least 3 edges
    count = sum(1 for _ in connected_graph_stream(4, 3))
    assert count == 38


def test_sampling_is_reproducible():
    a = [g.edges for g in sample_connected_graphs(6, 8, 20, seed=9)]
    b = [g.edges for g in sample_connected_graphs(6, 8, 20, seed=9)]
    assert a == b
    assert all(is_connected(g) for g in sample_connected_graphs(6, 8, 5, seed=2))


def test_exhaustive_verify_small():
    rep = exhaustive_verify(5, 2)
    assert rep.failures == [] and rep.instances_checked == 176
    rep = exhaustive_verify(5, 3)
    assert rep.failures == []
    rep = exhaustive_verify(6, 4)
    assert rep.failures == []


def test_exhaustive_verify_guards():
    with pytest.raises(InputError):
        exhaustive_verify(5, 5)
    with pytest.raises(InputError):
        exhaustive_verify(12, 3)
    with pytest.raises(InputError):
        exhaustive_verify(6, 3, mode="sample")  # missing seed/count


def test_sample_sweep_runs():
    rep = exhaustive_verify(8, 3, mode="sample", seed=3, sample_size=50)
    assert rep.instances_checked == 50 and rep.failures == []
    again = exhaustive_verify(8, 3, mode="sample", seed=3, sample_size=50)
    assert rep.to_dict()["failures"] == again.to_dict()["failures"]


def test_parallel_sweep_matches_sequential():
    seq = exhaustive_verify(5, 2)
    par = exhaustive_verify(5, 2, workers=2)
    assert par.instances_checked == seq.instances_checked
    assert par.failures == seq.failures
