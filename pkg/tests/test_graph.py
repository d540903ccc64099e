from __future__ import annotations

import pytest
from hypothesis import given, settings

from conftest import small_graphs
from mpspanner.graph import (
    GraphError,
    ParseError,
    RandomGraphSpec,
    WeightedGraph,
    bicomponent_of,
    complete_graph,
    cycle_graph,
    gen_fig1_fixture,
    gen_random,
    load_graph,
    neighbors,
    parse_edge_list,
    path_graph,
    remove_vertices,
    save_graph,
    subgraph_vertices,
)
from mpspanner.metrics import dijkstra, multipath_cost, multipath_cost_bruteforce


def test_load_simple(tmp_path):
    f = tmp_path / "g.el"
    f.write_text("0 1 3\n1 2 4")
    g = load_graph(f)
    assert (g.n, g.m, g.max_weight) == (3, 2, 4)


@pytest.mark.parametrize("text", ["2 2 1", "0 1 0", "0 1 -3"])
def test_load_invariant_errors(text):
    with pytest.raises(GraphError):
        parse_edge_list(text)


@pytest.mark.parametrize("text", ["0 1", "a b c", "0 1 2 3"])
def test_load_malformed(text):
    with pytest.raises(ParseError):
        parse_edge_list(text)


def test_parallel_edges_collapse_or_fail():
    g = parse_edge_list("0 1 5\n1 0 2\n")
    assert g.weight(0, 1) == 2
    with pytest.raises(GraphError):
        parse_edge_list("0 1 5\n1 0 2\n", strict=True)


def test_header_keeps_isolated_vertices():
    g = parse_edge_list("# n=5\n0 1 1\n")
    assert g.n == 5 and g.m == 1


def test_empty_graph_round_trip(tmp_path):
    f = tmp_path / "e.el"
    save_graph(WeightedGraph(0), f)
    assert f.read_text() == "# n=0\n"
    assert load_graph(f) == WeightedGraph(0)


def test_large_weights_preserved(tmp_path):
    g = WeightedGraph(3, [(0, 1, 10**6), (1, 2, 999_999)])
    f = tmp_path / "w.el"
    save_graph(g, f)
    assert load_graph(f) == g


@settings(max_examples=50, deadline=None)
@given(small_graphs(max_n=10, max_w=1000))
def test_round_trip(tmp_path_factory, g):
    f = tmp_path_factory.mktemp("rt") / "g.el"
    save_graph(g, f, ["note"])
    assert load_graph(f) == g


def test_gen_random_extremes():
    for seed in range(4):
        assert gen_random(RandomGraphSpec(5, 1.0, (1, 1), seed)) == complete_graph(5)
        assert gen_random(RandomGraphSpec(5, 0.0, (1, 9), seed)).m == 0


def test_gen_random_deterministic():
    spec = RandomGraphSpec(30, 0.3, (1, 50), 11)
    assert gen_random(spec) == gen_random(spec)
    assert gen_random(spec) != gen_random(RandomGraphSpec(30, 0.3, (1, 50), 12))


@pytest.mark.parametrize("bad", [dict(n=-1, edge_prob=0.5), dict(n=3, edge_prob=1.5),
                                 dict(n=3, edge_prob=0.5, weight_range=(0, 2))])
def test_random_spec_validation(bad):
    with pytest.raises(GraphError):
        RandomGraphSpec(**bad)


def test_graph_rejects_bad_edges():
    with pytest.raises(GraphError):
        WeightedGraph(2, [(0, 1, 1), (1, 0, 2)])
    with pytest.raises(GraphError):
        WeightedGraph(2, [(0, 2, 1)])
    with pytest.raises(GraphError):
        WeightedGraph(3, [(0, 1, 1)], removed=[1])


def test_neighbors_and_removal():
    assert len(neighbors(complete_graph(4), 2)) == 3
    c4 = cycle_graph(4)
    assert remove_vertices(c4, []) is c4
    p3 = remove_vertices(c4, [3])
    assert p3.edge_set == path_graph(3).edge_set
    assert p3.vertices == [0, 1, 2] and p3.n == 4
    with pytest.raises(GraphError):
        neighbors(p3, 3)


def test_bicomponents():
    c4 = cycle_graph(4)
    assert bicomponent_of(c4, 0, 1).edge_set == c4.edge_set
    assert bicomponent_of(path_graph(3), 0, 1) is None
    bowtie = WeightedGraph(5, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (2, 3, 1), (3, 4, 1), (2, 4, 1)])
    block = bicomponent_of(bowtie, 0, 1)
    assert subgraph_vertices(block) == {0, 1, 2}
    with pytest.raises(GraphError):
        bicomponent_of(bowtie, 0, 4)


def test_fixture_shape():
    n, s = 8, 3
    fx = gen_fig1_fixture(n, s)
    assert fx.uv == (0, n)
    assert fx.g.m == n + 1 + (n - 1)
    assert fx.g.weight(0, n) == n
    assert fx.h.edge_set == fx.g.edge_set - {(0, n)}
    # removing any inner vertex keeps u and v at distance w(uv)
    for z in range(1, n):
        assert dijkstra(fx.g, 0, {z})[n] == fx.g.weight(0, n)


def test_fixture_flow_equals_bruteforce():
    fx = gen_fig1_fixture(6, 2)
    assert multipath_cost(fx.g, 2, 0, 6)[0] == multipath_cost_bruteforce(fx.g, 2, 0, 6)


@pytest.mark.parametrize("n,s", [(3, 2), (8, 1), (8, 8)])
def test_fixture_range(n, s):
    with pytest.raises(GraphError):
        gen_fig1_fixture(n, s)
