from __future__ import annotations

import pytest

from mpspanner.fault_tolerant import (
    FtParams,
    InnerAlgorithm,
    ft_spanner,
    iteration_count,
    participates,
    verify_fault_tolerance,
)
from mpspanner.graph import RandomGraphSpec, WeightedGraph, gen_fig1_fixture, gen_random
from mpspanner.hop_spanner import cluster_hop_spanner, greedy_hop_spanner, is_b_hop_spanner
from mpspanner.metrics import GuardExceeded


def graph(seed: int, n: int = 12):
    return gen_random(RandomGraphSpec(n, 0.45, (1, 10), seed))


def test_iteration_count():
    assert iteration_count(100, 0, 1.0) == 1
    assert iteration_count(100, 1, 1.0) == 37
    assert iteration_count(1, 3, 1.0) == 1
    assert iteration_count(100, 2, 0.001) == 1


def test_r0_is_single_inner_run():
    g = graph(3, 30)
    greedy = InnerAlgorithm("greedy-hop", 2)
    assert ft_spanner(g, FtParams(0, inner=greedy)).edge_set == greedy_hop_spanner(g, 2).edge_set
    cluster = InnerAlgorithm("cluster-hop", 2)
    h = ft_spanner(g, FtParams(0, seed=9, inner=cluster))
    assert h.edge_set == cluster_hop_spanner(g, 2, 2.0, 9).edge_set


def test_deterministic():
    g = graph(4, 25)
    params = FtParams(1, 1.0, 17, InnerAlgorithm("cluster-hop", 2))
    assert ft_spanner(g, params).edge_set == ft_spanner(g, params).edge_set


def test_prefix_property():
    g = graph(5, 25)
    params = FtParams(1, 1.0, 3, InnerAlgorithm("cluster-hop", 2))
    small = ft_spanner(g, params, iterations=5)
    large = ft_spanner(g, params, iterations=6)
    assert small.edge_set <= large.edge_set
    assert len(large) <= sum(large.meta["iteration_sizes"])


def test_participation_rate():
    hits = sum(participates(1, j, v, 1) for j in range(20) for v in range(200))
    assert 0.45 < hits / 4000 < 0.55


@pytest.mark.parametrize("seed", range(6))
def test_greedy_inner_single_fault(seed):
    g = graph(seed)
    h = ft_spanner(g, FtParams(1, 1.0, seed, InnerAlgorithm("greedy-hop", 2)))
    assert verify_fault_tolerance(g, h, 1, 3) == (True, None)
    assert is_b_hop_spanner(g, h, 3, 3)[0]


def test_identity_always_tolerant():
    g = graph(1, 10)
    assert verify_fault_tolerance(g, g, 2, 1)[0]


def test_counterexample_reported():
    g = WeightedGraph(5, [(0, 1, 1), (1, 2, 10), (2, 3, 10), (3, 4, 10), (0, 4, 10)])
    h = g.without_edge(0, 1)
    ok, (faults, a, b) = verify_fault_tolerance(g, h, 1, 3)
    assert not ok and faults == () and (a, b) == (0, 1)


def test_fixture_is_one_fault_tolerant():
    fx = gen_fig1_fixture(8, 3)
    assert verify_fault_tolerance(fx.g, fx.h, 1, 6)[0]


def test_guard():
    g = graph(0, 16)
    with pytest.raises(GuardExceeded):
        verify_fault_tolerance(g, g, 1, 3)
    with pytest.raises(GuardExceeded):
        verify_fault_tolerance(graph(0, 6), graph(0, 6), 3, 3)
    assert verify_fault_tolerance(g, g, 1, 3, guard_n=16)[0]


def test_guard_env(monkeypatch):
    g = graph(0, 16)
    monkeypatch.setenv("MPS_GUARD_N", "20")
    assert verify_fault_tolerance(g, g, 1, 3)[0]


def test_bad_params():
    with pytest.raises(ValueError):
        FtParams(-1)
    with pytest.raises(ValueError):
        InnerAlgorithm("nope", 2)
