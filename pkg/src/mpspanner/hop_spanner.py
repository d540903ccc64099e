"""Bounded-hop spanners.

An s-spanner ``h`` of ``g`` is b-hop when every edge uv of ``g`` is
replaced in ``h`` by a path of at most b edges costing at most
``s * w(uv)``.  Two constructions give (2k-1)-hop spanners: a greedy pass
that keeps an edge only when no short-hop path exists yet, and a
randomized clustering that only ever looks k hops away.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import rng
from .graph import Edge, Subgraph, WeightedGraph, as_graph, norm_edge

_FAR = np.int64(1) << 62


@dataclass(frozen=True)
class HopSpannerParams:
    k: int
    c: float = 2.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be at least 1")

    @property
    def s(self) -> int:
        return 2 * self.k - 1


def _reachable_within(adj: list[set[int]], u: int, v: int, hops: int) -> bool:
    if u == v:
        return True
    seen = {u}
    frontier = [u]
    for _ in range(hops):
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if y == v:
                    return True
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if not nxt:
            return False
        frontier = nxt
    return False


def greedy_hop_spanner(g: WeightedGraph, k: int) -> Subgraph:
    """Keep an edge iff its endpoints are more than 2k-1 hops apart so far.

    Edges are visited by weight, then smaller endpoint, then larger one.
    The output has girth at least 2k+1.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    hops = 2 * k - 1
    adj: list[set[int]] = [set() for _ in range(g.n)]
    kept: list[Edge] = []
    for w, u, v in sorted((w, u, v) for u, v, w in g.edges()):
        if not _reachable_within(adj, u, v, hops):
            adj[u].add(v)
            adj[v].add(u)
            kept.append((u, v))
    return Subgraph.of(g, kept, algorithm="greedy-hop", k=k)


# -- clustered construction ---------------------------------------------


def sampling_probability(n: int, k: int, c: float) -> float:
    if n <= 1:
        return 0.0
    return min(1.0, (c * math.log(n) / n) ** (1.0 / k))


def sample_level(seed: int, v: int, k: int, q: float) -> int:
    """Promote from level 0 while a coin with bias ``q`` lands, up to k-1."""
    gen = rng.substream(seed, rng.LEVEL, v)
    level = 0
    while level < k - 1 and gen.random() < q:
        level += 1
    return level


def cluster_hop_spanner(g: WeightedGraph, k: int, c: float = 2.0, seed: int = 0) -> Subgraph:
    """Randomized clustering spanner with a deterministic (2k-1)-hop guarantee.

    Levels are drawn locally; a cluster formed in phase i-1 survives
    phase i when its centre has level >= i.  A vertex whose cluster dies
    joins the adjacent surviving cluster over its lightest edge, keeps the
    lightest edge to every cluster reachable by something lighter still,
    and drops the rest of its edges into those clusters.  A vertex with no
    surviving neighbour keeps one lightest edge per adjacent cluster and
    leaves the clustering.  After k-1 phases every vertex keeps one lightest
    edge per adjacent cluster.

    Edges left alive at a clustered vertex are never lighter than its tree
    edge, so tree paths only get lighter towards the centre and every
    dropped edge uv has a replacement of at most 2k-1 edges, each no
    heavier than uv.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    q = sampling_probability(g.n, k, c)
    levels = {v: sample_level(seed, v, k, q) for v in g.vertices}
    kept = _cluster_phases(g, k, levels)
    return Subgraph.of(g, kept, algorithm="cluster-hop", k=k, c=c, seed=seed)


def _cluster_phases(g: WeightedGraph, k: int, levels: dict[int, int]) -> set[Edge]:
    live = g.vertices
    center: dict[int, int | None] = {v: v for v in live}
    alive = {v: dict(g.adj[v]) for v in live}
    kept: set[Edge] = set()

    def lightest_per_cluster(v: int) -> dict[int, tuple[int, int]]:
        best: dict[int, tuple[int, int]] = {}
        for x, w in alive[v].items():
            cx = center[x]
            key = (w, x)
            if cx not in best or key < best[cx]:
                best[cx] = key
        return best

    for phase in range(1, k):
        new_center: dict[int, int | None] = {}
        dropped: list[Edge] = []
        for v in live:
            cv = center[v]
            if cv is None or levels[cv] >= phase:
                new_center[v] = cv
                continue
            best = lightest_per_cluster(v)
            joins = [(key, cx) for cx, key in best.items() if levels[cx] >= phase]
            if not joins:
                new_center[v] = None
                cut = set(best)
            else:
                join_key, target = min(joins)
                new_center[v] = target
                cut = {cx for cx, key in best.items() if key < join_key}
                cut.add(target)
            for cx in cut:
                kept.add(norm_edge(v, best[cx][1]))
            dropped.extend((v, x) for x in alive[v] if center[x] in cut)
        for v, x in dropped:
            alive[v].pop(x, None)
            alive[x].pop(v, None)
        center = new_center
        for v in live:
            if center[v] is None:
                continue
            for x in [x for x in alive[v] if center[x] == center[v]]:
                del alive[v][x]
    for v in live:
        for _, x in lightest_per_cluster(v).values():
            kept.add(norm_edge(v, x))
    return kept


# -- verification ---------------------------------------------------------


def _arc_arrays(h: WeightedGraph):
    src, dst, wt = [], [], []
    for u, v, w in h.edges():
        src += (u, v)
        dst += (v, u)
        wt += (w, w)
    order = np.argsort(np.asarray(dst, dtype=np.int64), kind="stable")
    src = np.asarray(src, dtype=np.int64)[order]
    dst = np.asarray(dst, dtype=np.int64)[order]
    wt = np.asarray(wt, dtype=np.int64)[order]
    return src, dst, wt


def hop_bounded_costs(h: WeightedGraph | Subgraph, sources: list[int], b: int) -> np.ndarray:
    """Cheapest cost using at most ``b`` edges, one row per source.

    Synchronous Bellman-Ford: round j only extends round j-1 values, so
    row ``i`` column ``x`` is exact for paths of at most ``b`` edges.
    Unreachable entries hold ``2**62``.
    """
    h = as_graph(h)
    src, dst, wt = _arc_arrays(h)
    out = np.full((len(sources), h.n), _FAR, dtype=np.int64)
    if not sources:
        return out
    out[np.arange(len(sources)), sources] = 0
    if src.size == 0:
        return out
    udst, starts = np.unique(dst, return_index=True)
    chunk = max(1, int(2e7 // src.size))
    for lo in range(0, len(sources), chunk):
        block = out[lo : lo + chunk]
        for _ in range(b):
            cand = block[:, src] + wt
            best = np.minimum.reduceat(cand, starts, axis=1)
            block[:, udst] = np.minimum(block[:, udst], best)
    return out


def is_b_hop_spanner(
    g: WeightedGraph | Subgraph, h: WeightedGraph | Subgraph, b: int, s
) -> tuple[bool, Edge | None]:
    """Check the b-hop s-spanner condition; return the first failing edge."""
    g = as_graph(g)
    h = as_graph(h)
    s = Fraction(s) if not isinstance(s, float) else Fraction(str(s))
    sources = [u for u in g.vertices if g.adj[u]]
    table = hop_bounded_costs(h, sources, b)
    row = {u: i for i, u in enumerate(sources)}
    for u, v, w in g.edges():
        cost = int(table[row[u], v])
        if cost >= _FAR or cost * s.denominator > s.numerator * w:
            return False, (u, v)
    return True, None


def girth(g: WeightedGraph | Subgraph, limit: int | None = None) -> int | float:
    """Length in edges of a shortest cycle (``inf`` for forests).

    With ``limit`` set, searches stop at depth ``limit`` and any girth
    above ``2 * limit + 1`` is reported as ``inf``.
    """
    g = as_graph(g)
    best = math.inf
    for root in g.vertices:
        dist = {root: 0}
        par = {root: -1}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] >= best:
                break
            if limit is not None and dist[x] >= limit:
                continue
            for y in g.adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    par[y] = x
                    queue.append(y)
                elif par[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best
