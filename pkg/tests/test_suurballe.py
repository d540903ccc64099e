from __future__ import annotations

import random

from hypothesis import given, settings

from conftest import small_graphs
from mpspanner.metrics import INF, multipath_cost
from mpspanner.suurballe import Digraph, bipath_costs_from, split_digraph, suurballe_all, suurballe_pair


def random_digraph(rng: random.Random, n: int, arcs: int, zero_prob: float = 0.2) -> Digraph:
    out = []
    for _ in range(arcs):
        a, b = rng.sample(range(n), 2)
        out.append((a, b, 0 if rng.random() < zero_prob else rng.randint(1, 9)))
    return Digraph.from_arcs(n, out)


def test_forced_pair():
    d = Digraph.from_arcs(4, [(0, 1, 1), (1, 3, 2), (0, 2, 2), (2, 3, 3)])
    cost, paths = suurballe_pair(d, 0, 3)
    assert cost == 8
    assert sorted(map(sorted, paths)) == [[0, 1], [2, 3]]


def test_single_route_is_infinite():
    d = Digraph.from_arcs(3, [(0, 1, 1), (1, 2, 1)])
    assert suurballe_pair(d, 0, 2) == (INF, None)
    assert suurballe_all(d, 0).pair_cost[2] == INF


def test_one_to_all_matches_per_target():
    for seed in range(300):
        rng = random.Random(seed)
        n = rng.randint(2, 9)
        d = random_digraph(rng, n, rng.randint(0, 3 * n))
        res = suurballe_all(d, 0)
        arcs = res.structure_arcs()
        sub = Digraph.from_arcs(n, [(d.tails[a], d.heads[a], d.costs[a]) for a in sorted(arcs)])
        for t in range(1, n):
            expect = suurballe_pair(d, 0, t)[0]
            assert res.pair_cost[t] == expect, (seed, t)
            # the two-parent structure alone already carries an optimal pair
            assert suurballe_pair(sub, 0, t)[0] == expect, (seed, t)


@settings(max_examples=60, deadline=None)
@given(small_graphs(min_n=2, max_n=9))
def test_split_reduction_matches_flow(g):
    for u in range(g.n):
        costs = bipath_costs_from(g, u)
        for v in range(g.n):
            if v != u:
                assert costs[v] == multipath_cost(g, 2, u, v)[0]


def test_split_layout():
    from mpspanner.graph import path_graph

    d = split_digraph(path_graph(3), terminals={0})
    assert d.n == 6
    assert (0, 1) not in set(zip(d.tails, d.heads))
    assert (2, 3) in set(zip(d.tails, d.heads))
