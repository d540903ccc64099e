"""Undirected positively weighted graphs, edge-list I/O and generators.

Vertices are the integers ``0..n-1``.  Removing vertices tombstones them
instead of re-indexing, so ids stay stable across a sequence of removals.
Weights are plain Python ints; fractional weights must be scaled by the
caller before construction.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple

import numpy as np

INF = math.inf

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised when a graph invariant would be violated."""


class ParseError(GraphError):
    """Malformed edge-list input."""


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class WeightedGraph:
    """Immutable simple undirected graph with positive integer weights.

    ``adj[u]`` maps each neighbour of ``u`` to the edge weight.  It is
    exposed for speed inside the package and must not be mutated.
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int, int]] = (),
        removed: Iterable[int] = (),
    ) -> None:
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        self.n = n
        self.removed = frozenset(removed)
        adj: list[dict[int, int]] = [{} for _ in range(n)]
        for u, v, w in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if w <= 0:
                raise GraphError(f"non-positive weight {w} on edge ({u},{v})")
            if u in self.removed or v in self.removed:
                raise GraphError(f"edge ({u},{v}) touches a removed vertex")
            if v in adj[u]:
                raise GraphError(f"duplicate edge ({u},{v})")
            adj[u][v] = w
            adj[v][u] = w
        self.adj = tuple(adj)
        self.m = sum(len(a) for a in adj) // 2
        self.max_weight = max((w for a in adj for w in a.values()), default=0)

    # -- queries -------------------------------------------------------

    @property
    def vertices(self) -> list[int]:
        if not self.removed:
            return list(range(self.n))
        return [x for x in range(self.n) if x not in self.removed]

    def is_vertex(self, u: int) -> bool:
        return 0 <= u < self.n and u not in self.removed

    def check_vertex(self, u: int) -> None:
        if not self.is_vertex(u):
            raise GraphError(f"invalid vertex {u}")

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self.adj[u]

    def weight(self, u: int, v: int) -> int:
        try:
            return self.adj[u][v]
        except (KeyError, IndexError):
            raise GraphError(f"({u},{v}) is not an edge") from None

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Edges ``(u, v, w)`` with ``u < v`` in lexicographic order."""
        for u in range(self.n):
            for v in sorted(self.adj[u]):
                if u < v:
                    yield u, v, self.adj[u][v]

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset((u, v) for u, v, _ in self.edges())

    def live_count(self) -> int:
        return self.n - len(self.removed)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.removed == other.removed
            and self.adj == other.adj
        )

    def __hash__(self) -> int:
        return hash((self.n, self.removed, frozenset(self.edges())))

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m}, W={self.max_weight})"

    # -- derived graphs ------------------------------------------------

    def edge_subgraph(self, keep: Iterable[Edge]) -> "WeightedGraph":
        keep = {norm_edge(u, v) for u, v in keep}
        return WeightedGraph(
            self.n,
            ((u, v, w) for u, v, w in self.edges() if (u, v) in keep),
            self.removed,
        )

    def without_edge(self, u: int, v: int) -> "WeightedGraph":
        e = norm_edge(u, v)
        return WeightedGraph(
            self.n,
            ((a, b, w) for a, b, w in self.edges() if (a, b) != e),
            self.removed,
        )

    def with_edges(self, extra: Iterable[tuple[int, int, int]]) -> "WeightedGraph":
        return WeightedGraph(self.n, [*self.edges(), *extra], self.removed)

    def unit_weights(self) -> "WeightedGraph":
        return WeightedGraph(self.n, ((u, v, 1) for u, v, _ in self.edges()), self.removed)


def neighbors(g: WeightedGraph, u: int) -> set[int]:
    g.check_vertex(u)
    return set(g.adj[u])


def remove_vertices(g: WeightedGraph, s: Iterable[int]) -> WeightedGraph:
    """Delete ``s`` and incident edges; ids of other vertices are unchanged."""
    s = set(s)
    for x in s:
        g.check_vertex(x)
    if not s:
        return g
    return WeightedGraph(
        g.n,
        ((u, v, w) for u, v, w in g.edges() if u not in s and v not in s),
        g.removed | s,
    )


@dataclass(frozen=True)
class Subgraph:
    """A spanning subgraph of ``parent`` given by an edge subset."""

    parent: WeightedGraph
    edge_set: frozenset[Edge]
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self) -> None:
        bad = [e for e in self.edge_set if not self.parent.has_edge(*e)]
        if bad:
            raise GraphError(f"{bad[0]} is not an edge of the parent graph")

    @classmethod
    def of(cls, parent: WeightedGraph, edges: Iterable[Edge], **meta) -> "Subgraph":
        return cls(parent, frozenset(norm_edge(u, v) for u, v in edges), dict(meta))

    @cached_property
    def graph(self) -> WeightedGraph:
        return self.parent.edge_subgraph(self.edge_set)

    @property
    def m(self) -> int:
        return len(self.edge_set)

    def __len__(self) -> int:
        return len(self.edge_set)


def as_graph(x: WeightedGraph | Subgraph) -> WeightedGraph:
    return x.graph if isinstance(x, Subgraph) else x


# -- edge-list files ---------------------------------------------------


def format_edge_list(g: WeightedGraph, comments: Iterable[str] = ()) -> str:
    lines = [f"# n={g.n}"]
    lines.extend(f"# {c}" for c in comments)
    lines.extend(f"{u} {v} {w}" for u, v, w in g.edges())
    return "\n".join(lines) + "\n"


def save_graph(g: WeightedGraph, path: str | os.PathLike, comments: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(format_edge_list(g, comments))


def parse_edge_list(text: str, *, strict: bool = False) -> WeightedGraph:
    """Parse the ``# n=<n>`` / ``u v w`` format.

    Parallel edges collapse to their minimum weight unless ``strict``.
    """
    n = None
    best: dict[Edge, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            body = line[1:].strip()
            if n is None and body.startswith("n="):
                try:
                    n = int(body[2:])
                except ValueError:
                    raise ParseError(f"line {lineno}: bad header {raw!r}") from None
            continue
        if "#" in line:
            line = line[: line.index("#")].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 'u v w', got {raw!r}")
        try:
            u, v, w = (int(t) for t in parts)
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer field in {raw!r}") from None
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: negative vertex id")
        if u == v:
            raise GraphError(f"line {lineno}: self-loop at vertex {u}")
        if w <= 0:
            raise GraphError(f"line {lineno}: non-positive weight {w}")
        e = norm_edge(u, v)
        if e in best:
            if strict:
                raise GraphError(f"line {lineno}: duplicate edge {e}")
            w = min(w, best[e])
        best[e] = w
    top = max((v for _, v in best), default=-1) + 1
    if n is None:
        n = top
    elif top > n:
        raise ParseError(f"edge endpoint {top - 1} exceeds header n={n}")
    return WeightedGraph(n, ((u, v, w) for (u, v), w in sorted(best.items())))


def load_graph(path: str | os.PathLike, *, strict: bool = False) -> WeightedGraph:
    with open(path, encoding="utf-8") as f:
        return parse_edge_list(f.read(), strict=strict)


# -- generators ----------------------------------------------------------


@dataclass(frozen=True)
class RandomGraphSpec:
    n: int
    edge_prob: float
    weight_range: tuple[int, int] = (1, 1)
    seed: int = 0

    def __post_init__(self) -> None:
        lo, hi = self.weight_range
        if self.n < 0:
            raise GraphError("n must be non-negative")
        if not 0.0 <= self.edge_prob <= 1.0:
            raise GraphError("edge_prob must lie in [0, 1]")
        if lo < 1 or lo > hi:
            raise GraphError("weight range must satisfy 1 <= w_min <= w_max")


def gen_random(spec: RandomGraphSpec) -> WeightedGraph:
    """G(n, p) with uniform integer weights; a pure function of ``spec``."""
    rng = np.random.default_rng(spec.seed)
    iu, ju = np.triu_indices(spec.n, k=1)
    coins = rng.random(iu.size)
    lo, hi = spec.weight_range
    weights = rng.integers(lo, hi + 1, size=iu.size)
    # p == 1 must give the complete graph even though random() < 1 always holds.
    mask = coins < spec.edge_prob
    return WeightedGraph(
        spec.n,
        zip(iu[mask].tolist(), ju[mask].tolist(), weights[mask].tolist()),
    )


def path_graph(n: int, w: int = 1) -> WeightedGraph:
    return WeightedGraph(n, ((i, i + 1, w) for i in range(n - 1)))


def cycle_graph(n: int, w: int = 1) -> WeightedGraph:
    return WeightedGraph(n, ((i, (i + 1) % n, w) for i in range(n)))


def complete_graph(n: int, w: int = 1) -> WeightedGraph:
    return WeightedGraph(n, ((i, j, w) for i in range(n) for j in range(i + 1, n)))


def star_graph(leaves: int, w: int = 1) -> WeightedGraph:
    return WeightedGraph(leaves + 1, ((0, i, w) for i in range(1, leaves + 1)))


class Fig1Fixture(NamedTuple):
    g: WeightedGraph
    h: Subgraph
    uv: Edge


def gen_fig1_fixture(n: int, s: int) -> Fig1Fixture:
    """Cycle-with-chords graph whose ``G - uv`` is fault tolerant but not bipath-sparse.

    Vertices ``0..n`` form a cycle with ``u = 0`` and ``v = n``; the cycle
    edges ``i -- i+1`` weigh ``s/n`` and the closing edge ``uv`` weighs 1.
    The ``n - 1`` extra edges are the skip chords ``i -- i+2`` of weight
    ``s``, so deleting any single inner vertex leaves a bypass of cost
    ``s + (n-2)s/n``.  All weights are multiplied by ``n`` to stay integral.
    """
    if n < 4:
        raise GraphError("fixture needs n >= 4")
    if not 1 < s < n:
        raise GraphError("fixture needs 1 < s < n")
    edges = [(i, i + 1, s) for i in range(n)]
    edges.append((0, n, n))
    edges.extend((i, i + 2, s * n) for i in range(n - 1))
    g = WeightedGraph(n + 1, edges)
    h = Subgraph.of(
        g,
        [(a, b) for a, b, _ in g.edges() if (a, b) != (0, n)],
        algorithm="fig1-fixture",
        n=n,
        s=s,
        scale=n,
    )
    return Fig1Fixture(g, h, (0, n))


# -- structure -----------------------------------------------------------


def biconnected_edge_blocks(g: WeightedGraph) -> list[set[Edge]]:
    """Edge sets of the biconnected blocks (iterative Hopcroft-Tarjan)."""
    disc = [-1] * g.n
    low = [0] * g.n
    blocks: list[set[Edge]] = []
    clock = 0
    for root in g.vertices:
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack: list[Edge] = []
        work = [(root, -1, iter(sorted(g.adj[root])))]
        while work:
            x, parent, it = work[-1]
            advanced = False
            for y in it:
                if disc[y] == -1:
                    stack.append((x, y))
                    disc[y] = low[y] = clock
                    clock += 1
                    work.append((y, x, iter(sorted(g.adj[y]))))
                    advanced = True
                    break
                if y != parent and disc[y] < disc[x]:
                    stack.append((x, y))
                    low[x] = min(low[x], disc[y])
            if advanced:
                continue
            work.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[x])
            if low[x] >= disc[parent]:
                block: set[Edge] = set()
                while True:
                    a, b = stack.pop()
                    block.add(norm_edge(a, b))
                    if (a, b) == (parent, x):
                        break
                blocks.append(block)
    return blocks


def bicomponent_of(g: WeightedGraph, u: int, v: int) -> Subgraph | None:
    """The 2-connected block containing edge uv, or ``None`` for a cut-edge."""
    e = norm_edge(u, v)
    if not g.has_edge(*e):
        raise GraphError(f"{e} is not an edge")
    for block in biconnected_edge_blocks(g):
        if e in block:
            if len(block) == 1:
                return None
            return Subgraph.of(g, block)
    raise AssertionError("every edge lies in exactly one block")


def subgraph_vertices(h: Subgraph) -> set[int]:
    return {x for e in h.edge_set for x in e}
