"""Randomized r-fault-tolerant wrapper around any spanner algorithm.

Each iteration deletes a random vertex sample (every vertex is dropped
with probability ``1 - 1/(r+1)``) and unions the inner spanner of what
is left.  A fault set F and an edge uv are covered by any iteration that
kept u and v but dropped all of F.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import rng
from .graph import Subgraph, WeightedGraph, as_graph, remove_vertices
from .hop_spanner import cluster_hop_spanner, greedy_hop_spanner
from .metrics import GuardExceeded, dijkstra, guard_limit

INF = math.inf

FT_GUARD_N = 14
FT_GUARD_R = 2


@dataclass(frozen=True)
class InnerAlgorithm:
    """A (2k-1)-hop spanner construction usable inside the wrapper."""

    name: str = "greedy-hop"
    k: int = 2
    c: float = 2.0

    def __post_init__(self) -> None:
        if self.name not in ("greedy-hop", "cluster-hop"):
            raise ValueError(f"unknown inner algorithm {self.name!r}")
        if self.k < 1:
            raise ValueError("k must be at least 1")

    @property
    def s(self) -> int:
        return 2 * self.k - 1

    def run(self, g: WeightedGraph, seed: int) -> Subgraph:
        if self.name == "greedy-hop":
            return greedy_hop_spanner(g, self.k)
        return cluster_hop_spanner(g, self.k, self.c, seed)


@dataclass(frozen=True)
class FtParams:
    r: int
    c: float = 1.0
    seed: int = 0
    inner: InnerAlgorithm = field(default_factory=InnerAlgorithm)

    def __post_init__(self) -> None:
        if self.r < 0:
            raise ValueError("r must be non-negative")
        if self.c <= 0:
            raise ValueError("repeat constant must be positive")


def iteration_count(n: int, r: int, c: float) -> int:
    """``max(1, ceil(c (r+1)^3 ln n))``; a single run when r = 0."""
    if r == 0 or n <= 1:
        return 1
    return max(1, math.ceil(c * (r + 1) ** 3 * math.log(n)))


def participates(seed: int, iteration: int, v: int, r: int) -> bool:
    """Whether ``v`` survives the deletion sample of ``iteration``."""
    if r == 0:
        return True
    return bool(rng.substream(seed, rng.FT_SAMPLE, iteration, v).random() < 1.0 / (r + 1))


def inner_seed(seed: int, iteration: int) -> int:
    # iteration 0 reuses the run seed so that r = 0 reproduces the bare inner run
    return seed if iteration == 0 else rng.derive_seed(seed, rng.FT_INNER, iteration)


def ft_spanner(g: WeightedGraph, params: FtParams, iterations: int | None = None) -> Subgraph:
    q = iteration_count(g.n, params.r, params.c) if iterations is None else iterations
    kept: set = set()
    sizes = []
    for j in range(q):
        dropped = [v for v in g.vertices if not participates(params.seed, j, v, params.r)]
        part = params.inner.run(remove_vertices(g, dropped), inner_seed(params.seed, j))
        sizes.append(len(part))
        kept |= part.edge_set
    return Subgraph.of(
        g,
        kept,
        algorithm=f"ft[{params.inner.name}]",
        r=params.r,
        c=params.c,
        seed=params.seed,
        k=params.inner.k,
        inner_c=params.inner.c,
        iterations=q,
        iteration_sizes=sizes,
    )


def verify_fault_tolerance(
    g: WeightedGraph | Subgraph,
    h: WeightedGraph | Subgraph,
    r: int,
    s,
    *,
    guard_n: int | None = None,
    guard_r: int = FT_GUARD_R,
) -> tuple[bool, tuple[tuple[int, ...], int, int] | None]:
    """Exhaustively check ``d_{h-F}(u,v) <= s d_{g-F}(u,v)`` for all |F| <= r."""
    g = as_graph(g)
    h = as_graph(h)
    limit = guard_limit(FT_GUARD_N) if guard_n is None else guard_n
    if g.live_count() > limit or r > guard_r:
        raise GuardExceeded(
            f"fault enumeration limited to n <= {limit}, r <= {guard_r} "
            f"(got n={g.live_count()}, r={r})"
        )
    s = Fraction(s) if not isinstance(s, float) else Fraction(str(s))
    verts = g.vertices
    for size in range(r + 1):
        for faults in itertools.combinations(verts, size):
            skip = frozenset(faults)
            rest = [x for x in verts if x not in skip]
            for u in rest:
                dg = dijkstra(g, u, skip)
                dh = dijkstra(h, u, skip)
                for v in rest:
                    if v <= u or dg[v] == INF:
                        continue
                    if dh[v] == INF or dh[v] * s.denominator > s.numerator * dg[v]:
                        return False, (faults, u, v)
    return True, None
