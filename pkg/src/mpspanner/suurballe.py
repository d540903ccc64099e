"""Shortest pairs of arc-disjoint paths (Suurballe, Suurballe-Tarjan).

``suurballe_pair`` answers one source/target query with two augmenting
shortest-path passes.  ``suurballe_all`` answers every target from one
source at once and returns the two-parent structure: each vertex keeps
its shortest-path-tree parent arc plus one extra arc, and the optimal
pair for every target lives inside the union of those arcs.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .flow import FlowNetwork
from .graph import WeightedGraph

INF = math.inf


@dataclass
class Digraph:
    """Arc list over nodes ``0..n-1``; arc ``i`` is ``(tails[i], heads[i], costs[i])``."""

    n: int
    tails: list[int]
    heads: list[int]
    costs: list[int]

    @classmethod
    def from_arcs(cls, n: int, arcs) -> "Digraph":
        arcs = list(arcs)
        return cls(n, [a for a, _, _ in arcs], [b for _, b, _ in arcs], [c for _, _, c in arcs])

    def out_arcs(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for i, t in enumerate(self.tails):
            out[t].append(i)
        return out

    def in_arcs(self) -> list[list[int]]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, h in enumerate(self.heads):
            inc[h].append(i)
        return inc


def suurballe_pair(d: Digraph, src: int, dst: int) -> tuple[int | float, list[list[int]] | None]:
    """Cheapest two arc-disjoint ``src -> dst`` paths, as arc-index lists."""
    if src == dst:
        return 0, [[], []]
    net = FlowNetwork(d.n)
    ids = [net.add_arc(t, h, 1, c) for t, h, c in zip(d.tails, d.heads, d.costs)]
    shipped, cost = net.min_cost_flow(src, dst, 2)
    if shipped < 2:
        return INF, None
    used = {i for i, a in enumerate(ids) if net.flow_on(a) > 0}
    out: dict[int, list[int]] = {}
    for i in sorted(used):
        out.setdefault(d.tails[i], []).append(i)
    paths = []
    for _ in range(2):
        x, path = src, []
        while x != dst:
            i = out[x].pop(0)
            path.append(i)
            x = d.heads[i]
        paths.append(path)
    return cost, paths


@dataclass
class DisjointPairTree:
    """Result of :func:`suurballe_all`.

    ``dist`` holds shortest distances, ``pair_cost`` the cheapest total
    for two arc-disjoint paths (``inf`` if none), ``tree_arc`` and
    ``extra_arc`` the two parent arcs of each node (``-1`` if absent).
    """

    source: int
    dist: list
    pair_cost: list
    tree_arc: list[int]
    extra_arc: list[int]

    def structure_arcs(self) -> set[int]:
        arcs = {a for a in self.tree_arc if a >= 0}
        arcs.update(a for a in self.extra_arc if a >= 0)
        return arcs


def _shortest_tree(d: Digraph, out: list[list[int]], src: int) -> tuple[list, list[int]]:
    dist = [INF] * d.n
    parent = [-1] * d.n
    dist[src] = 0
    heap = [(0, src)]
    heads, costs = d.heads, d.costs
    while heap:
        dx, x = heapq.heappop(heap)
        if dx > dist[x]:
            continue
        for a in out[x]:
            y = heads[a]
            nd = dx + costs[a]
            # ties keep the first parent found, which is deterministic
            if nd < dist[y]:
                dist[y] = nd
                parent[y] = a
                heapq.heappush(heap, (nd, y))
    return dist, parent


def suurballe_all(d: Digraph, src: int) -> DisjointPairTree:
    """One-to-all shortest disjoint pairs.

    Works on reduced costs ``c(x,y) + dist(x) - dist(y)``, which vanish on
    the shortest-path tree.  For a target ``t`` the second path is a
    shortest path once the tree path to ``t`` is reversed.  Targets are
    settled in increasing order of that second length; settling ``v``
    deletes it from the forest of unsettled tree vertices, and every arc
    that now joins two different forest trees, with its tail in the tree
    that held ``v``, offers its head a second path through ``v``.
    """
    out = d.out_arcs()
    dist, parent = _shortest_tree(d, out, src)
    n = d.n
    tails, heads, costs = d.tails, d.heads, d.costs

    children: list[list[int]] = [[] for _ in range(n)]
    for y in range(n):
        if parent[y] >= 0:
            children[tails[parent[y]]].append(y)

    reach = [dist[x] < INF for x in range(n)]
    # forest bookkeeping: tree id per unsettled reachable node
    tree = [0 if reach[x] else -1 for x in range(n)]
    next_tree = 1
    settled = [False] * n
    second = [INF] * n
    extra = [-1] * n
    in_arcs = d.in_arcs()

    def reduced(a: int) -> int:
        return costs[a] + dist[tails[a]] - dist[heads[a]]

    def members(root: int) -> list[int]:
        found = []
        stack = [root]
        while stack:
            x = stack.pop()
            found.append(x)
            stack.extend(c for c in children[x] if not settled[c])
        return found

    heap: list[tuple[int, int]] = []
    second[src] = 0
    heapq.heappush(heap, (0, src))
    while heap:
        sv, v = heapq.heappop(heap)
        if settled[v] or sv > second[v]:
            continue
        old = tree[v]
        region = [x for x in range(n) if tree[x] == old and not settled[x]]
        settled[v] = True
        tree[v] = -1
        for c in children[v]:
            if settled[c]:
                continue
            for x in members(c):
                tree[x] = next_tree
            next_tree += 1
        for x in region:
            for a in out[x]:
                y = heads[a]
                if settled[y] or not reach[y] or parent[y] == a:
                    continue
                if tree[y] == tree[x] and x != v:
                    continue
                nd = sv + reduced(a)
                if nd < second[y]:
                    second[y] = nd
                    extra[y] = a
                    heapq.heappush(heap, (nd, y))

    pair = [INF] * n
    for y in range(n):
        if y == src:
            pair[y] = 0
        elif second[y] < INF:
            pair[y] = 2 * dist[y] + second[y]
    return DisjointPairTree(src, dist, pair, parent, extra)


# -- undirected graphs through the vertex-split reduction ----------------


def split_digraph(g: WeightedGraph, terminals=()) -> Digraph:
    """Node ``2x`` is the in-copy of ``x`` and ``2x+1`` its out-copy.

    Each undirected edge gives two opposite arcs out-copy -> in-copy.
    Vertices in ``terminals`` get no in->out arc.
    """
    terminals = set(terminals)
    arcs = []
    for x in g.vertices:
        if x not in terminals:
            arcs.append((2 * x, 2 * x + 1, 0))
    for x, y, w in g.edges():
        arcs.append((2 * x + 1, 2 * y, w))
        arcs.append((2 * y + 1, 2 * x, w))
    return Digraph.from_arcs(2 * g.n, arcs)


def bipath_costs_from(g: WeightedGraph, u: int) -> list:
    """``delta^2(u, y)`` for every vertex ``y`` (``inf`` where undefined)."""
    d = split_digraph(g, {u})
    res = suurballe_all(d, 2 * u + 1)
    costs = [res.pair_cost[2 * y] for y in range(g.n)]
    costs[u] = INF
    for y in g.removed:
        costs[y] = INF
    return costs
