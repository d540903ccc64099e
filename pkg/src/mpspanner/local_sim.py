"""Synchronous LOCAL-model simulator and distributed spanner protocols.

Each node runs a program that only sees its id, the global vertex-id
count n, its incident edge weights, and the messages it receives.  In
every round all active programs emit messages to neighbours, the harness
delivers them at once, and every program then processes its inbox.  A
run ends when all programs report idle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Mapping, Protocol as _Protocol

from .fault_tolerant import inner_seed, iteration_count, participates
from .graph import Edge, Subgraph, WeightedGraph, norm_edge
from .hop_spanner import sample_level, sampling_probability


class LocalityError(RuntimeError):
    """A program tried to message a vertex that is not its neighbour."""


@dataclass(frozen=True)
class NodeView:
    id: int
    n: int
    incident: Mapping[int, int]


class NodeProgram(_Protocol):
    idle: bool

    def send(self, rnd: int) -> dict[int, Any]: ...

    def receive(self, rnd: int, inbox: dict[int, Any]) -> None: ...

    def output(self) -> set[Edge]: ...


class LocalProtocol(_Protocol):
    name: str

    def program(self, view: NodeView, seed: int) -> NodeProgram: ...


def payload_units(msg: Any) -> int:
    if isinstance(msg, dict):
        return sum(payload_units(x) for x in msg.values())
    if isinstance(msg, (tuple, list)):
        return sum(payload_units(x) for x in msg)
    return 1


@dataclass
class RoundTrace:
    protocol: str
    rounds_used: int = 0
    messages: list[int] = field(default_factory=list)
    payload: list[int] = field(default_factory=list)

    def to_csv(self) -> str:
        rows = ["round,messages,total_payload_units"]
        rows += [f"{i + 1},{m},{p}" for i, (m, p) in enumerate(zip(self.messages, self.payload))]
        return "\n".join(rows) + "\n"


class RoundBudgetExceeded(RuntimeError):
    def __init__(self, trace: RoundTrace, edges: set[Edge]):
        super().__init__(f"{trace.protocol} still active after {trace.rounds_used} rounds")
        self.trace = trace
        self.edges = edges


def run_protocol(
    g: WeightedGraph, protocol: LocalProtocol, max_rounds: int, seed: int = 0
) -> tuple[Subgraph, RoundTrace]:
    if max_rounds < 0:
        raise ValueError("max_rounds must be non-negative")
    progs = {
        v: protocol.program(NodeView(v, g.n, MappingProxyType(dict(g.adj[v]))), seed)
        for v in g.vertices
    }
    trace = RoundTrace(protocol.name)

    def collect() -> set[Edge]:
        edges: set[Edge] = set()
        for v, prog in progs.items():
            for e in prog.output():
                if v not in e or not g.has_edge(*e):
                    raise LocalityError(f"node {v} output non-incident edge {e}")
                edges.add(norm_edge(*e))
        return edges

    rnd = 0
    while not all(p.idle for p in progs.values()):
        if rnd >= max_rounds:
            raise RoundBudgetExceeded(trace, collect())
        rnd += 1
        inboxes: dict[int, dict[int, Any]] = {v: {} for v in progs}
        count = units = 0
        for v, prog in progs.items():
            for y, msg in prog.send(rnd).items():
                if y not in g.adj[v]:
                    raise LocalityError(f"node {v} addressed non-neighbour {y}")
                inboxes[y][v] = msg
                count += 1
                units += payload_units(msg)
        for v, prog in progs.items():
            prog.receive(rnd, inboxes[v])
        trace.rounds_used = rnd
        trace.messages.append(count)
        trace.payload.append(units)
    return Subgraph.of(g, collect(), algorithm=protocol.name, seed=seed), trace


# -- simple protocols ----------------------------------------------------


class _NullNode:
    idle = True

    def send(self, rnd):
        return {}

    def receive(self, rnd, inbox):
        pass

    def output(self):
        return set()


class NullProtocol:
    name = "null"

    def program(self, view, seed):
        return _NullNode()


class _FloodNode:
    def __init__(self, view: NodeView, depth: int, root: int):
        self.view = view
        self.ttl = depth if view.id == root else None
        self.heard = view.id == root
        self.parent: int | None = None

    @property
    def idle(self) -> bool:
        return not self.ttl

    def send(self, rnd):
        if not self.ttl:
            return {}
        ttl, self.ttl = self.ttl, None
        return {y: ttl - 1 for y in self.view.incident}

    def receive(self, rnd, inbox):
        if self.heard or not inbox:
            return
        self.heard = True
        self.parent = min(inbox)
        self.ttl = inbox[self.parent]

    def output(self):
        return set() if self.parent is None else {norm_edge(self.view.id, self.parent)}


@dataclass(frozen=True)
class FloodProtocol:
    """Token flooded from ``root`` for ``depth`` hops; outputs the BFS tree."""

    depth: int
    root: int = 0

    @property
    def name(self) -> str:
        return f"flood-{self.depth}"

    def program(self, view, seed):
        return _FloodNode(view, self.depth, self.root)


# -- clustered hop spanner -----------------------------------------------


class _ClusterNode:
    """One vertex of the clustered (2k-1)-hop spanner.

    Round i carries (centre, centre level, dropped-edge flag) as of the end
    of phase i-1; phase i is decided right after round i, and the final
    lightest-edge pass after round k.  Neighbours that stay silent in
    round 1 are treated as absent.
    """

    def __init__(self, view: NodeView, k: int, c: float, seed: int, present: bool = True):
        self.view = view
        self.k = k
        self.present = present
        self.level = sample_level(seed, view.id, k, sampling_probability(view.n, k, c))
        self.center: int | None = view.id
        self.clevel: int | None = self.level
        self.alive = dict(view.incident) if present else {}
        self.dropped: set[int] = set()
        self.kept: set[Edge] = set()
        self.done = 0

    @property
    def idle(self) -> bool:
        return self.done >= self.k

    def send(self, rnd):
        if not self.present:
            return {}
        return {
            y: (self.center, self.clevel, y in self.dropped) for y in self.view.incident
        }

    def receive(self, rnd, inbox):
        self.done = rnd
        if not self.present:
            return
        me = self.view.id
        if rnd == 1:
            self.alive = {x: w for x, w in self.alive.items() if x in inbox}
        info = {}
        for x, (cx, lx, drop) in inbox.items():
            info[x] = (cx, lx)
            if drop:
                self.alive.pop(x, None)
        self.dropped = set()
        if self.center is not None:
            for x in [x for x in self.alive if info[x][0] == self.center]:
                del self.alive[x]

        best: dict[int | None, tuple[int, int]] = {}
        lvl: dict[int | None, int | None] = {}
        for x, w in self.alive.items():
            cx, lx = info[x]
            lvl[cx] = lx
            if cx not in best or (w, x) < best[cx]:
                best[cx] = (w, x)

        if rnd == self.k:
            self.kept.update(norm_edge(me, x) for _, x in best.values())
            return
        if self.center is None or self.clevel >= rnd:
            return
        joins = [(key, cx) for cx, key in best.items() if lvl[cx] >= rnd]
        if not joins:
            self.center = self.clevel = None
            cut = set(best)
        else:
            join_key, target = min(joins)
            self.center, self.clevel = target, lvl[target]
            cut = {cx for cx, key in best.items() if key < join_key}
            cut.add(target)
        for cx in cut:
            self.kept.add(norm_edge(me, best[cx][1]))
        self.dropped = {x for x in self.alive if info[x][0] in cut}
        for x in self.dropped:
            del self.alive[x]

    def output(self):
        return set(self.kept)


@dataclass(frozen=True)
class ClusterProtocol:
    k: int
    c: float = 2.0
    name: str = "cluster"

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be at least 1")

    @property
    def round_budget(self) -> int:
        return 3 * self.k

    def program(self, view, seed, present: bool = True):
        return _ClusterNode(view, self.k, self.c, seed, present)


class _FtNode:
    def __init__(self, view: NodeView, inner: ClusterProtocol, r: int, c: float, seed: int):
        q = iteration_count(view.n, r, c)
        self.view = view
        self.runs = [
            inner.program(view, inner_seed(seed, j), participates(seed, j, view.id, r))
            for j in range(q)
        ]

    @property
    def idle(self) -> bool:
        return all(p.idle for p in self.runs)

    def send(self, rnd):
        parts = [p.send(rnd) for p in self.runs]
        # one physical message per neighbour, concatenating every instance
        return {
            y: {j: part[y] for j, part in enumerate(parts) if y in part}
            for y in self.view.incident
        }

    def receive(self, rnd, inbox):
        for j, prog in enumerate(self.runs):
            prog.receive(rnd, {x: m[j] for x, m in inbox.items() if j in m})

    def output(self):
        out: set[Edge] = set()
        for p in self.runs:
            out |= p.output()
        return out


@dataclass(frozen=True)
class FtProtocol:
    """Runs all wrapper iterations of ``inner`` in lock-step."""

    inner: ClusterProtocol
    r: int
    c: float = 1.0

    @property
    def name(self) -> str:
        return f"ft-{self.inner.name}"

    @property
    def round_budget(self) -> int:
        return self.inner.round_budget

    def program(self, view, seed):
        return _FtNode(view, self.inner, self.r, self.c, seed)


def protocol_cluster_spanner(k: int, c: float = 2.0) -> ClusterProtocol:
    return ClusterProtocol(k, c)


def protocol_ft_wrapper(inner: ClusterProtocol, r: int, c: float = 1.0) -> FtProtocol:
    return FtProtocol(inner, r, c)
