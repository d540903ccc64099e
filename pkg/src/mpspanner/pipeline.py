"""p-multipath spanners from fault-tolerant bounded-hop spanners.

An s-hop (p-1)-fault-tolerant spanner is also a p-multipath spanner with
stretch ``phi(s, p) = s * p * r(s, p)``, where ``r(s, p)`` bounds the hop
length needed to find p disjoint short paths once no p-1 vertices can
cut all of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

from .fault_tolerant import FtParams, InnerAlgorithm, ft_spanner
from .graph import Edge, Subgraph, WeightedGraph, as_graph
from .metrics import INF, StretchReport, all_pairs_multipath, verify_stretch


def path_length_bound(s: int, p: int) -> int:
    """Hop bound ``r(s, p)`` on a cheapest p-multipath inside the union of short paths."""
    if s < 3:
        raise ValueError("the bound needs s >= 3")
    if p < 1:
        raise ValueError("p must be at least 1")
    if s == 3:
        return 3
    return comb(p + s - 2, s - 2) + comb(p + s - 3, s - 2)


def compute_phi(s: int, p: int) -> int:
    return s * p * path_length_bound(s, p)


@dataclass(frozen=True)
class PipelineParams:
    p: int
    k: int
    inner: str = "cluster-hop"
    cluster_c: float = 2.0
    ft_c: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.p < 1 or self.k < 1:
            raise ValueError("p and k must be at least 1")

    @property
    def s(self) -> int:
        return 2 * self.k - 1


def declared_stretch(p: int, k: int) -> int:
    # k = 1 forces every edge into a 1-hop spanner, so the multipath stretch is 1
    if k == 1:
        return 1
    return compute_phi(2 * k - 1, p)


def multipath_spanner(g: WeightedGraph, params: PipelineParams) -> tuple[Subgraph, int]:
    """(p-1)-fault-tolerant wrapper around a (2k-1)-hop spanner."""
    inner = InnerAlgorithm(params.inner, params.k, params.cluster_c)
    h = ft_spanner(g, FtParams(params.p - 1, params.ft_c, params.seed, inner))
    alpha = declared_stretch(params.p, params.k)
    h.meta.update(algorithm="pipeline", p=params.p, alpha_declared=alpha)
    return h, alpha


def verify_multipath_stretch(
    g: WeightedGraph | Subgraph, h: WeightedGraph | Subgraph, p: int, alpha, **kw
) -> StretchReport:
    return verify_stretch(g, h, p, alpha, 0, **kw)


def uncovered_edge_violations(
    g: WeightedGraph | Subgraph,
    h: WeightedGraph | Subgraph,
    p: int,
    alpha: int,
    h_table: dict | None = None,
) -> list[Edge]:
    """Edges uv of g missing from h with ``delta^p_h(u,v) > alpha * w(uv)``."""
    g = as_graph(g)
    hg = as_graph(h)
    table = h_table if h_table is not None else all_pairs_multipath(hg, p)
    bad = []
    for u, v, w in g.edges():
        if hg.has_edge(u, v):
            continue
        d = table[(u, v)]
        if d == INF or d > alpha * w:
            bad.append((u, v))
    return bad


def size_reference(n: int, p: int, k: int) -> float:
    """``k p^(2-1/k) n^(1+1/k) (ln n)^(2-1/k)``, the shape of the size bound."""
    if n <= 1:
        return 0.0
    e = 1.0 / k
    return k * p ** (2 - e) * n ** (1 + e) * math.log(n) ** (2 - e)
