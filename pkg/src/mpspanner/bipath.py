"""2-multipath spanners with additive stretch.

The construction repeatedly picks an edge uv whose 2-ball (vertices on a
cheap cycle through uv) meets many neighbours of u and v, keeps a
shortest 2-path spanning tree rooted at uv together with depth-2 BFS
trees at both ends, and deletes the ball.  Whatever survives the loop is
sparse and is kept whole.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import asdict, dataclass, field

from .graph import (
    Edge,
    GraphError,
    Subgraph,
    WeightedGraph,
    bicomponent_of,
    norm_edge,
    remove_vertices,
    subgraph_vertices,
)
from .suurballe import Digraph, suurballe_all, suurballe_pair  # noqa: F401  (re-export)

INF = math.inf


@dataclass
class Spst2:
    root_edge: tuple[int, int, int]
    tree_edges: frozenset[Edge]
    costs: dict[int, int]

    @property
    def nu(self) -> int:
        return len(self.costs)


def _near_edge(g: WeightedGraph, u: int, v: int, radius: float) -> list[int]:
    """Vertices within ``radius`` of {u, v} in ``g`` minus edge uv."""
    dist = {u: 0, v: 0}
    heap = [(0, u), (0, v)]
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist[x]:
            continue
        for y, w in g.adj[x].items():
            if {x, y} == {u, v}:
                continue
            nd = d + w
            if nd <= radius and nd < dist.get(y, INF):
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return sorted(dist)


def edge_cycle_structure(
    g: WeightedGraph, u: int, v: int, region: list[int] | None = None, limit: float = INF
) -> tuple[dict[int, int], set[Edge]]:
    """Cheapest cycle through edge uv and each vertex, plus the two-parent edges.

    Edge uv is subdivided by a midpoint (weights are doubled so the halves
    stay integral), every vertex is split into an in-copy and an out-copy,
    and one-to-all disjoint pairs are taken from the midpoint's out-copy.
    With ``limit`` finite only vertices that can lie on a cycle of cost at
    most ``limit`` are examined, and only costs up to ``limit`` are reported.
    """
    if not g.has_edge(u, v):
        raise GraphError(f"({u},{v}) is not an edge")
    wuv = g.adj[u][v]
    if region is None:
        # every vertex of a cycle of cost C through uv is within (C - w(uv)) / 2 of u or v
        region = _near_edge(g, u, v, (limit - wuv) / 2) if limit < INF else g.vertices
    index = {x: i for i, x in enumerate(region)}
    mid = len(region)
    tails: list[int] = []
    heads: list[int] = []
    costs: list[int] = []
    origin: list[Edge | None] = []

    def arc(a: int, b: int, c: int, e: Edge | None) -> None:
        tails.append(a)
        heads.append(b)
        costs.append(c)
        origin.append(e)

    for i in range(mid + 1):
        arc(2 * i, 2 * i + 1, 0, None)
    root = norm_edge(u, v)
    for x in region:
        i = index[x]
        for y, w in g.adj[x].items():
            j = index.get(y)
            if j is None or norm_edge(x, y) == root:
                continue
            arc(2 * i + 1, 2 * j, 2 * w, norm_edge(x, y))
    for x in (u, v):
        i = index[x]
        arc(2 * mid + 1, 2 * i, wuv, root)
        arc(2 * i + 1, 2 * mid, wuv, root)

    res = suurballe_all(Digraph(2 * (mid + 1), tails, heads, costs), 2 * mid + 1)
    out = {}
    for x, i in index.items():
        c = res.pair_cost[2 * i]
        if c < INF and c // 2 <= limit:
            out[x] = c // 2
    edges = {origin[a] for a in res.structure_arcs() if origin[a] is not None}
    return out, edges


def spst2(g: WeightedGraph, u: int, v: int) -> Spst2:
    """Shortest 2-path spanning tree of root uv inside the block of uv."""
    block = bicomponent_of(g, u, v)
    if block is None:
        raise GraphError(f"({u},{v}) is a cut-edge")
    x = block.graph
    costs, edges = edge_cycle_structure(x, u, v, sorted(subgraph_vertices(block)))
    return Spst2((min(u, v), max(u, v), g.adj[u][v]), frozenset(edges), costs)


def edge_ball(g: WeightedGraph, u: int, v: int, radius: int) -> set[int]:
    """``B^2(uv, radius)``: vertices on a cycle through uv of cost at most ``radius``."""
    costs, _ = edge_cycle_structure(g, u, v, limit=radius)
    return set(costs)


def bfs_tree(g: WeightedGraph, root: int, depth: int = 2) -> set[Edge]:
    """Hop BFS tree; each vertex hangs off its smallest-id parent."""
    seen = {root}
    frontier = [root]
    edges: set[Edge] = set()
    for _ in range(depth):
        nxt: dict[int, int] = {}
        for x in sorted(frontier):
            for y in g.adj[x]:
                if y not in seen and y not in nxt:
                    nxt[y] = x
        for y, x in nxt.items():
            edges.add(norm_edge(x, y))
        seen.update(nxt)
        frontier = list(nxt)
    return edges


@dataclass
class BipathStep:
    edge: tuple[int, int]
    ball_size: int
    removed: list[int]
    edges_added: int


@dataclass
class BipathTrace:
    n: int
    max_weight: int
    steps: list[BipathStep] = field(default_factory=list)
    residual_edges: int = 0
    residual: WeightedGraph | None = field(default=None, repr=False, compare=False)

    def to_jsonl(self) -> str:
        lines = [json.dumps({"iteration": i, **asdict(s)}) for i, s in enumerate(self.steps)]
        lines.append(json.dumps({"residual_edges": self.residual_edges}))
        return "\n".join(lines) + "\n"


def bipath_spanner(
    g: WeightedGraph, *, spst_on: str = "current", bfs_on: str = "current"
) -> tuple[Subgraph, BipathTrace]:
    """2-multipath spanner with stretch (2, 24W).

    ``spst_on`` and ``bfs_on`` choose whether the trees are taken in the
    current working graph or in the untouched input.
    """
    for flag in (spst_on, bfs_on):
        if flag not in ("current", "input"):
            raise ValueError(f"expected 'current' or 'input', got {flag!r}")
    n = g.live_count()
    radius = 4 * g.max_weight
    trace = BipathTrace(n, g.max_weight)
    kept: set[Edge] = set()
    cur = g
    order = [(u, v) for u, v, _ in g.edges()]
    i = 0
    while i < len(order):
        u, v = order[i]
        if not cur.has_edge(u, v):
            i += 1
            continue
        ball = edge_ball(cur, u, v, radius) & (set(cur.adj[u]) | set(cur.adj[v]))
        if len(ball) ** 2 <= n:
            i += 1
            continue
        before = len(kept)
        tree_host = cur if spst_on == "current" else g
        kept |= spst2(tree_host, u, v).tree_edges
        bfs_host = cur if bfs_on == "current" else g
        kept |= bfs_tree(bfs_host, u) | bfs_tree(bfs_host, v)
        trace.steps.append(BipathStep((u, v), len(ball), sorted(ball), len(kept) - before))
        cur = remove_vertices(cur, ball)
    kept |= cur.edge_set
    trace.residual_edges = cur.m
    trace.residual = cur
    h = Subgraph.of(g, kept, algorithm="bipath", spst_on=spst_on, bfs_on=bfs_on)
    return h, trace


# -- residual sparsity certificate ---------------------------------------


@dataclass
class CertificateReport:
    n: int
    k: int
    hypothesis_ok: bool
    witness: tuple[int, int, int] | None
    edges: int
    bound_ok: bool | None
    steps: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.hypothesis_ok and bool(self.bound_ok)


def _hop_ball(adj: dict[int, set[int]], u: int, r: int) -> set[int]:
    seen = {u}
    frontier = [u]
    for _ in range(r):
        frontier = [y for x in frontier for y in adj[x] if y not in seen and not seen.add(y)]
    return seen


def residual_sparsity_certificate(g: WeightedGraph, k: int, n: int | None = None) -> CertificateReport:
    """Check the 2-ball hypothesis at radius 2k, then replay ball removal.

    Weights are ignored.  ``n`` defaults to the live vertex count; pass
    the size of the original graph when certifying a residual.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    unit = g.unit_weights()
    n = unit.live_count() if n is None else n
    for u, v, _ in unit.edges():
        ball = edge_ball(unit, u, v, 2 * k)
        for a, b in ((u, v), (v, u)):
            size = len(ball & set(unit.adj[a]))
            if size**k > n:
                return CertificateReport(n, k, False, (a, b, size), unit.m, None)

    adj = {x: set(unit.adj[x]) for x in unit.vertices}
    steps = []
    root = n ** (1.0 / k)
    for i in range(k - 1, -1, -1):
        while True:
            pick = None
            for x in sorted(adj):
                ball = _hop_ball(adj, x, i)
                if len(ball) ** k >= n**i:
                    pick = (x, ball)
                    break
            if pick is None:
                break
            x, ball = pick
            gone = sum(len(adj[y]) for y in ball) - sum(
                1 for y in ball for z in adj[y] if z in ball
            ) // 2
            reach = len(_hop_ball(adj, x, i + 1))
            steps.append(
                {
                    "level": i,
                    "center": x,
                    "ball": len(ball),
                    "edges_removed": gone,
                    "step_ok": gone <= root * len(ball) + reach + 1e-9,
                }
            )
            for y in ball:
                for z in adj.pop(y):
                    if z in adj:
                        adj[z].discard(y)
    bound_ok = unit.m**k <= 2**k * n ** (k + 1)
    return CertificateReport(n, k, True, None, unit.m, bound_ok, steps)
