"""Exact graph metrics: distances, p-multipath costs, edge-rooted cycle costs.

Costs are ints, with ``math.inf`` standing for "no such structure".
The brute-force oracles at the bottom are test equipment and refuse to
run on graphs above a small size guard.
"""

from __future__ import annotations

import csv
import heapq
import io
import itertools
import math
import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .flow import FlowNetwork
from .graph import GraphError, Subgraph, WeightedGraph, as_graph, norm_edge

INF = math.inf

BRUTE_FORCE_GUARD = 12


class GuardExceeded(RuntimeError):
    """An exhaustive oracle was asked to run on an oversized instance."""


def guard_limit(default: int) -> int:
    """Oracle size guard, overridable through ``MPS_GUARD_N``."""
    raw = os.environ.get("MPS_GUARD_N")
    return int(raw) if raw else default


def _check_guard(g: WeightedGraph, limit: int | None) -> None:
    limit = guard_limit(BRUTE_FORCE_GUARD) if limit is None else limit
    if g.live_count() > limit:
        raise GuardExceeded(f"{g.live_count()} vertices exceed the oracle guard of {limit}")


# -- distances -----------------------------------------------------------


def dijkstra(g: WeightedGraph, src: int, skip: frozenset[int] | set[int] = frozenset()) -> list:
    """Single-source weighted distances, ``inf`` where unreachable."""
    dist = [INF] * g.n
    if src in skip:
        return dist
    dist[src] = 0
    heap = [(0, src)]
    adj = g.adj
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist[x]:
            continue
        for y, w in adj[x].items():
            if y in skip:
                continue
            nd = d + w
            if nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return dist


def shortest_path_cost(g: WeightedGraph | Subgraph, u: int, v: int) -> int | float:
    g = as_graph(g)
    g.check_vertex(u)
    g.check_vertex(v)
    if u == v:
        return 0
    return dijkstra(g, u)[v]


def hop_distances(g: WeightedGraph, src: int, limit: int | None = None) -> dict[int, int]:
    """BFS hop counts from ``src``, truncated at ``limit`` hops."""
    seen = {src: 0}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        dx = seen[x]
        if limit is not None and dx >= limit:
            continue
        for y in g.adj[x]:
            if y not in seen:
                seen[y] = dx + 1
                queue.append(y)
    return seen


def hop_ball(g: WeightedGraph | Subgraph, u: int, r: int) -> set[int]:
    """Vertices within ``r`` hops of ``u`` (weights ignored)."""
    g = as_graph(g)
    g.check_vertex(u)
    if r < 0:
        raise ValueError("radius must be non-negative")
    return set(hop_distances(g, u, r))


# -- p-multipath cost ----------------------------------------------------


@dataclass(frozen=True)
class PathSet:
    """``p`` internally vertex-disjoint u-v paths and their total cost."""

    endpoints: tuple[int, int]
    paths: tuple[tuple[int, ...], ...]
    total_cost: int

    def validate(self, g: WeightedGraph) -> None:
        u, v = self.endpoints
        inner: set[int] = set()
        total = 0
        used: set[tuple[int, int]] = set()
        for path in self.paths:
            if path[0] != u or path[-1] != v:
                raise AssertionError(f"path {path} does not join {u} and {v}")
            if len(set(path)) != len(path):
                raise AssertionError(f"path {path} is not simple")
            mid = set(path[1:-1])
            if mid & inner:
                raise AssertionError("paths share an internal vertex")
            inner |= mid
            for a, b in zip(path, path[1:]):
                e = norm_edge(a, b)
                if e in used:
                    raise AssertionError(f"edge {e} used twice")
                used.add(e)
                total += g.weight(a, b)
        if total != self.total_cost:
            raise AssertionError(f"witness cost {total} != declared {self.total_cost}")


def _split_network(g: WeightedGraph, terminals: Iterable[int]) -> FlowNetwork:
    """Vertex-split digraph: ``x`` becomes ``2x -> 2x+1`` with capacity 1.

    ``terminals`` get no in->out arc, so no path can pass through them.
    Node ``2n`` is left free for a super-sink.
    """
    terminals = set(terminals)
    net = FlowNetwork(2 * g.n + 1)
    for x in g.vertices:
        if x not in terminals:
            net.add_arc(2 * x, 2 * x + 1, 1, 0)
    for x in g.vertices:
        for y, w in g.adj[x].items():
            net.add_arc(2 * x + 1, 2 * y, 1, w)
    return net


def _decompose(net: FlowNetwork, start: int, stop: int, units: int) -> list[list[int]]:
    """Split an integral flow into ``units`` node sequences of the split graph.

    Among arcs carrying flow, the one towards the smallest vertex id is
    followed first so witnesses are reproducible.
    """
    remaining: dict[int, int] = {}
    for x in range(net.size):
        for a in net.out[x]:
            if a % 2 == 0 and net.flow_on(a) > 0:
                remaining[a] = net.flow_on(a)
    paths = []
    for _ in range(units):
        seq = [start]
        x = start
        while x != stop:
            options = [a for a in net.out[x] if remaining.get(a, 0) > 0]
            a = min(options, key=lambda arc: net.head[arc])
            remaining[a] -= 1
            x = net.head[a]
            seq.append(x)
        paths.append(seq)
    return paths


def multipath_cost(
    g: WeightedGraph | Subgraph, p: int, u: int, v: int
) -> tuple[int | float, PathSet | None]:
    """Minimum total weight of ``p`` internally vertex-disjoint u-v paths."""
    g = as_graph(g)
    if p < 1:
        raise ValueError("p must be at least 1")
    g.check_vertex(u)
    g.check_vertex(v)
    if u == v:
        raise ValueError("endpoints must differ")
    net = _split_network(g, {u, v})
    shipped, cost = net.min_cost_flow(2 * u + 1, 2 * v, p)
    if shipped < p:
        return INF, None
    paths = []
    for seq in _decompose(net, 2 * u + 1, 2 * v, p):
        vertices = [seq[0] // 2] + [node // 2 for node in seq[1:] if node % 2 == 0]
        paths.append(tuple(vertices))
    paths.sort()
    return cost, PathSet((u, v), tuple(paths), cost)


def multipath_value(g: WeightedGraph | Subgraph, p: int, u: int, v: int) -> int | float:
    g = as_graph(g)
    net = _split_network(g, {u, v})
    shipped, cost = net.min_cost_flow(2 * u + 1, 2 * v, p)
    return cost if shipped == p else INF


def cycle_cost_through_edge(
    g: WeightedGraph | Subgraph, u: int, v: int, w: int, *, cost_limit: float = INF
) -> int | float:
    """Cheapest simple cycle through edge ``uv`` and vertex ``w``.

    With ``cost_limit`` set, any value above the limit may be reported as
    ``inf``.
    """
    g = as_graph(g)
    if not g.has_edge(u, v):
        raise GraphError(f"({u},{v}) is not an edge")
    g.check_vertex(w)
    wuv = g.adj[u][v]
    rest = g.without_edge(u, v)
    if w in (u, v):
        d = dijkstra(rest, u)[v]
        total = wuv + d
        return total if total <= cost_limit else INF
    net = _split_network(rest, {u, v, w})
    sink = 2 * g.n
    net.add_arc(2 * u, sink, 1, 0)
    net.add_arc(2 * v, sink, 1, 0)
    shipped, cost = net.min_cost_flow(2 * w + 1, sink, 2, cost_limit=cost_limit - wuv)
    if shipped < 2 or cost == INF:
        return INF
    return wuv + cost


def two_ball(g: WeightedGraph | Subgraph, u: int, v: int, r: int | float) -> set[int]:
    """``{w : cycle_cost_through_edge(g, uv, w) <= r}``."""
    g = as_graph(g)
    if not g.has_edge(u, v):
        raise GraphError(f"({u},{v}) is not an edge")
    return {
        w for w in g.vertices if cycle_cost_through_edge(g, u, v, w, cost_limit=r) <= r
    }


# -- brute-force oracles -------------------------------------------------


def simple_paths(
    g: WeightedGraph, u: int, v: int, max_edges: int | None = None
) -> list[tuple[tuple[int, ...], int]]:
    """All simple u-v paths with their costs (exponential; small graphs only)."""
    limit = g.n if max_edges is None else max_edges
    found = []
    path = [u]
    on_path = {u}

    def extend(x: int, cost: int) -> None:
        if x == v:
            found.append((tuple(path), cost))
            return
        if len(path) - 1 >= limit:
            return
        for y, w in g.adj[x].items():
            if y not in on_path:
                path.append(y)
                on_path.add(y)
                extend(y, cost + w)
                path.pop()
                on_path.discard(y)

    extend(u, 0)
    return found


def multipath_cost_bruteforce(
    g: WeightedGraph | Subgraph, p: int, u: int, v: int, *, guard: int | None = None
) -> int | float:
    """Exhaustive search over p-tuples of internally disjoint simple paths."""
    g = as_graph(g)
    _check_guard(g, guard)
    if p < 1:
        raise ValueError("p must be at least 1")
    if u == v:
        raise ValueError("endpoints must differ")
    paths = sorted(simple_paths(g, u, v), key=lambda pc: pc[1])
    masks = []
    for path, cost in paths:
        mask = 0
        for x in path[1:-1]:
            mask |= 1 << x
        masks.append((mask, cost, len(path) == 2))
    best = INF

    def search(start: int, left: int, used: int, direct: bool, cost: int) -> None:
        nonlocal best
        if left == 0:
            best = min(best, cost)
            return
        for i in range(start, len(masks)):
            mask, c, is_edge = masks[i]
            # costs are sorted, so the cheapest completion uses the next entries
            if cost + c * left >= best:
                return
            if mask & used or (is_edge and direct):
                continue
            search(i + 1, left - 1, used | mask, direct or is_edge, cost + c)

    search(0, p, 0, False, 0)
    return best


def mu_s(g: WeightedGraph | Subgraph, u: int, v: int, s: int, *, guard: int | None = None) -> int:
    """Maximum number of internally disjoint u-v paths with at most ``s`` edges."""
    g = as_graph(g)
    _check_guard(g, guard)
    masks = []
    for path, _ in simple_paths(g, u, v, s):
        mask = 0
        for x in path[1:-1]:
            mask |= 1 << x
        masks.append(mask)
    # the direct edge has an empty interior and may be used once
    masks.sort(key=lambda m: bin(m).count("1"))
    best = 0

    def search(start: int, used: int, count: int, edge_used: bool) -> None:
        nonlocal best
        best = max(best, count)
        if count + (len(masks) - start) <= best:
            return
        for i in range(start, len(masks)):
            mask = masks[i]
            if mask == 0:
                if edge_used:
                    continue
                search(i + 1, used, count + 1, True)
            elif not mask & used:
                search(i + 1, used | mask, count + 1, edge_used)

    search(0, 0, 0, False)
    return best


def kappa_s(g: WeightedGraph | Subgraph, u: int, v: int, s: int, *, guard: int | None = None) -> int:
    """Fewest inner vertices whose deletion leaves no u-v path of at most ``s`` edges."""
    g = as_graph(g)
    _check_guard(g, guard)
    if u == v or g.has_edge(u, v):
        raise ValueError("kappa_s needs distinct non-adjacent endpoints")
    others = [x for x in g.vertices if x not in (u, v)]
    for size in range(len(others) + 1):
        for cut in itertools.combinations(others, size):
            blocked = set(cut)
            dist = {u: 0}
            queue = deque([u])
            while queue:
                x = queue.popleft()
                if dist[x] >= s:
                    continue
                for y in g.adj[x]:
                    if y not in dist and y not in blocked:
                        dist[y] = dist[x] + 1
                        queue.append(y)
            if v not in dist:
                return size
    return len(others)


# -- stretch verification ------------------------------------------------


@dataclass
class StretchReport:
    """All-pairs comparison of a metric on ``g`` and a subgraph ``h``."""

    p: int
    alpha: Fraction
    beta: int
    rows: list[tuple[int, int, int | float, int | float]] = field(default_factory=list)
    worst_ratio: Fraction | float | None = None
    worst_pair: tuple[int, int] | None = None
    violations: list[tuple[int, int]] = field(default_factory=list)
    reversed_pairs: list[tuple[int, int]] = field(default_factory=list)

    @property
    def additive_slack(self) -> int:
        return self.beta

    @property
    def ok(self) -> bool:
        return not self.violations and not self.reversed_pairs

    def ratio(self, dg: int | float, dh: int | float) -> Fraction | float | None:
        if dg == INF:
            return None
        if dh == INF:
            return INF
        return Fraction(dh, dg)

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["u", "v", "delta_g", "delta_h", "ratio"])
        for u, v, dg, dh in self.rows:
            r = self.ratio(dg, dh)
            out.writerow([u, v, _fmt(dg), _fmt(dh), "" if r is None else _fmt(r)])
        return buf.getvalue()


def _fmt(x) -> str:
    if x == INF:
        return "inf"
    if isinstance(x, Fraction):
        return f"{float(x):.6f}"
    return str(x)


def all_pairs_multipath(g: WeightedGraph, p: int) -> dict[tuple[int, int], int | float]:
    """``delta^p`` for every unordered pair of live vertices."""
    verts = g.vertices
    table: dict[tuple[int, int], int | float] = {}
    if p == 1:
        for u in verts:
            dist = dijkstra(g, u)
            for v in verts:
                if u < v:
                    table[(u, v)] = dist[v]
    elif p == 2:
        from .suurballe import bipath_costs_from

        for u in verts:
            costs = bipath_costs_from(g, u)
            for v in verts:
                if u < v:
                    table[(u, v)] = costs[v]
    else:
        for u, v in itertools.combinations(verts, 2):
            table[(u, v)] = multipath_value(g, p, u, v)
    return table


def verify_stretch(
    g: WeightedGraph | Subgraph,
    h: WeightedGraph | Subgraph,
    p: int,
    alpha: Fraction | int | float | str,
    beta: int = 0,
    *,
    g_table: dict | None = None,
    h_table: dict | None = None,
) -> StretchReport:
    """Check ``delta^p_h <= alpha * delta^p_g + beta`` on every vertex pair.

    Pairs with ``delta^p_g = inf`` are kept in the table but excluded from
    the ratio; a finite ``delta^p_h`` against an infinite ``delta^p_g``
    would mean ``h`` is not a subgraph and is recorded separately.
    """
    g = as_graph(g)
    h = as_graph(h)
    alpha = Fraction(alpha) if not isinstance(alpha, float) else Fraction(str(alpha))
    report = StretchReport(p, alpha, beta)
    gt = g_table if g_table is not None else all_pairs_multipath(g, p)
    ht = h_table if h_table is not None else all_pairs_multipath(h, p)
    worst_key = None
    for (u, v), dg in sorted(gt.items()):
        dh = ht[(u, v)]
        report.rows.append((u, v, dg, dh))
        if dg == INF:
            if dh != INF:
                report.reversed_pairs.append((u, v))
            continue
        if dh == INF or dh > alpha * dg + beta:
            report.violations.append((u, v))
        r = report.ratio(dg, dh)
        if worst_key is None or r > worst_key:
            worst_key = r
            report.worst_pair = (u, v)
    report.worst_ratio = worst_key
    return report
