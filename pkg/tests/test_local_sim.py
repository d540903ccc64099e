from __future__ import annotations

import pytest

from mpspanner.fault_tolerant import FtParams, InnerAlgorithm, ft_spanner
from mpspanner.graph import RandomGraphSpec, gen_random, path_graph
from mpspanner.hop_spanner import cluster_hop_spanner
from mpspanner.local_sim import (
    ClusterProtocol,
    FloodProtocol,
    FtProtocol,
    LocalityError,
    NullProtocol,
    RoundBudgetExceeded,
    payload_units,
    protocol_cluster_spanner,
    protocol_ft_wrapper,
    run_protocol,
)


def graph(seed: int, n: int = 40):
    return gen_random(RandomGraphSpec(n, 0.2, (1, 20), seed))


def test_null():
    h, trace = run_protocol(graph(0), NullProtocol(), 0)
    assert h.m == 0 and trace.rounds_used == 0
    assert trace.to_csv() == "round,messages,total_payload_units\n"


@pytest.mark.parametrize("d", [1, 3, 5])
def test_flood_depth(d):
    h, trace = run_protocol(path_graph(10), FloodProtocol(d), 20)
    assert trace.rounds_used == d
    assert h.edge_set == {(i, i + 1) for i in range(d)}


def test_budget_error_keeps_partial_trace():
    with pytest.raises(RoundBudgetExceeded) as err:
        run_protocol(path_graph(10), FloodProtocol(5), 2)
    assert err.value.trace.rounds_used == 2
    assert err.value.edges == {(0, 1), (1, 2)}


def test_locality_enforced():
    class Rogue:
        idle = False

        def send(self, rnd):
            return {99: "hello"}

        def receive(self, rnd, inbox):
            pass

        def output(self):
            return set()

    class RogueProtocol:
        name = "rogue"

        def program(self, view, seed):
            return Rogue()

    with pytest.raises(LocalityError):
        run_protocol(path_graph(3), RogueProtocol(), 5)


def test_deterministic_traces():
    g = graph(1)
    a = run_protocol(g, ClusterProtocol(3), 9, 4)
    b = run_protocol(g, ClusterProtocol(3), 9, 4)
    assert a[0].edge_set == b[0].edge_set and a[1] == b[1]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("seed", range(3))
def test_cluster_matches_sequential(k, seed):
    g = graph(seed + 10)
    h, trace = run_protocol(g, protocol_cluster_spanner(k), 3 * k, seed)
    assert trace.rounds_used <= 3 * k
    assert h.edge_set == cluster_hop_spanner(g, k, 2.0, seed).edge_set
    if k == 1:
        assert h.edge_set == g.edge_set


@pytest.mark.parametrize("r", [0, 1, 2])
def test_ft_wrapper(r):
    g = graph(5, 25)
    bare = ClusterProtocol(2)
    h0, t0 = run_protocol(g, bare, 6, 3)
    h1, t1 = run_protocol(g, protocol_ft_wrapper(bare, r), 6, 3)
    assert t1.rounds_used == t0.rounds_used
    assert t1.messages == t0.messages
    seq = ft_spanner(g, FtParams(r, 1.0, 3, InnerAlgorithm("cluster-hop", 2)))
    assert h1.edge_set == seq.edge_set
    if r == 0:
        assert t1.payload == t0.payload and h1.edge_set == h0.edge_set
    else:
        assert sum(t1.payload) > sum(t0.payload)


def test_payload_units():
    assert payload_units((1, None, True)) == 3
    assert payload_units({0: (1, 2, False), 3: (4, 5, True)}) == 6
    assert payload_units({}) == 0


def test_ft_protocol_name():
    assert FtProtocol(ClusterProtocol(2), 1).name == "ft-cluster"
