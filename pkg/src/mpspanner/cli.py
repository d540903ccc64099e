"""Command line front end: gen, build, verify, sim, bench.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 oracle guard exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .bipath import bipath_spanner, residual_sparsity_certificate
from .fault_tolerant import FtParams, InnerAlgorithm, ft_spanner, verify_fault_tolerance
from .graph import (
    GraphError,
    RandomGraphSpec,
    Subgraph,
    WeightedGraph,
    format_edge_list,
    gen_fig1_fixture,
    gen_random,
    load_graph,
    save_graph,
)
from .hop_spanner import cluster_hop_spanner, greedy_hop_spanner, is_b_hop_spanner
from .local_sim import (
    ClusterProtocol,
    FloodProtocol,
    FtProtocol,
    NullProtocol,
    RoundBudgetExceeded,
    run_protocol,
)
from .metrics import GuardExceeded, verify_stretch
from .pipeline import PipelineParams, declared_stretch, multipath_spanner, size_reference

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _ratio_json(x):
    if x is None:
        return None
    if x == float("inf"):
        return "inf"
    return float(x)


def _comments(meta: dict) -> list[str]:
    return [f"{key}={json.dumps(meta[key], sort_keys=True)}" for key in sorted(meta)]


# -- gen -----------------------------------------------------------------


def cmd_gen(args) -> int:
    if args.fixture:
        if args.s is None:
            raise UsageError("--fixture fig1 needs --s")
        fx = gen_fig1_fixture(args.n, args.s)
        prefix = args.output or "fig1"
        save_graph(fx.g, f"{prefix}.g.el", [f"fixture=fig1 n={args.n} s={args.s} scale={args.n}"])
        save_graph(fx.h.graph, f"{prefix}.h.el", _comments(fx.h.meta))
        uv = {"u": fx.uv[0], "v": fx.uv[1], "weight": fx.g.weight(*fx.uv), "scale": args.n}
        Path(f"{prefix}.uv.json").write_text(json.dumps(uv, sort_keys=True) + "\n", encoding="utf-8")
        return EXIT_OK
    spec = RandomGraphSpec(args.n, args.p, (args.wmin, args.wmax), args.seed)
    note = f"gen n={spec.n} p={spec.edge_prob} w=[{args.wmin},{args.wmax}] seed={spec.seed}"
    _write(args.output, format_edge_list(gen_random(spec), [note]))
    return EXIT_OK


# -- build ---------------------------------------------------------------


def _build(g: WeightedGraph, args) -> tuple[Subgraph, int, int | Fraction, object]:
    """Return (spanner, p, declared stretch, optional trace)."""
    algo = args.algo
    if algo == "greedy-hop":
        return greedy_hop_spanner(g, args.k), 1, 2 * args.k - 1, None
    if algo == "cluster-hop":
        return cluster_hop_spanner(g, args.k, args.c, args.seed), 1, 2 * args.k - 1, None
    if algo == "ft":
        inner = InnerAlgorithm(args.inner, args.k, args.c)
        h = ft_spanner(g, FtParams(args.r, args.ft_c, args.seed, inner))
        return h, 1, 2 * args.k - 1, None
    if algo == "pipeline":
        params = PipelineParams(args.p, args.k, args.inner, args.c, args.ft_c, args.seed)
        h, alpha = multipath_spanner(g, params)
        return h, args.p, alpha, None
    h, trace = bipath_spanner(g, spst_on=args.spst_on, bfs_on=args.bfs_on)
    return h, 2, 2, trace


def cmd_build(args) -> int:
    g = load_graph(args.input)
    h, p, alpha, trace = _build(g, args)
    out = args.output or f"{args.input}.{args.algo}.el"
    save_graph(h.graph, out, _comments(h.meta))
    summary = {
        "n": g.live_count(),
        "m_G": g.m,
        "m_H": h.m,
        "p": p,
        "k": None if args.algo == "bipath" else args.k,
        "alpha_declared": alpha,
        "worst_ratio": None,
        "seed": args.seed,
    }
    if trace is not None:
        summary["beta_declared"] = 24 * g.max_weight
        _write(args.trace or f"{out}.trace.jsonl", trace.to_jsonl())
    if args.measure:
        report = verify_stretch(g, h, p, alpha, summary.get("beta_declared", 0))
        summary["worst_ratio"] = _ratio_json(report.worst_ratio)
    _write(args.summary, json.dumps(summary, sort_keys=True) + "\n")
    return EXIT_OK


# -- verify --------------------------------------------------------------


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_verify(args) -> int:
    g = load_graph(args.graph)
    h = load_graph(args.spanner)
    if h.n > g.n or any(not g.has_edge(u, v) for u, v, _ in h.edges()):
        raise UsageError("the spanner is not a subgraph of the graph")
    kind = args.kind
    if kind == "multipath":
        if args.alpha is None:
            raise UsageError("--kind multipath needs --alpha")
        h = WeightedGraph(g.n, h.edges())
        report = verify_stretch(g, h, args.p, args.alpha, args.beta)
        _write(args.report, report.to_csv())
        ok = report.ok
    elif kind == "hop":
        ok, bad = is_b_hop_spanner(g, h, args.b, args.s)
        _write(args.report, _csv(["ok", "u", "v"], [[int(ok), *(bad or ("", ""))]]))
    elif kind == "ft":
        h = WeightedGraph(g.n, h.edges())
        ok, bad = verify_fault_tolerance(g, h, args.r, args.s)
        faults, u, v = bad if bad else ((), "", "")
        _write(args.report, _csv(["ok", "faults", "u", "v"], [[int(ok), " ".join(map(str, faults)), u, v]]))
    else:
        cert = residual_sparsity_certificate(h, args.k, args.n)
        witness = cert.witness or ("", "", "")
        _write(
            args.report,
            _csv(
                ["hypothesis_ok", "bound_ok", "edges", "witness_u", "witness_v", "ball"],
                [[int(cert.hypothesis_ok), "" if cert.bound_ok is None else int(cert.bound_ok), cert.edges, *witness]],
            ),
        )
        ok = cert.ok
    return EXIT_OK if ok else EXIT_FAIL


# -- sim -----------------------------------------------------------------


def _protocol(args):
    name = args.protocol
    if name == "null":
        return NullProtocol(), 0
    if name == "flood":
        return FloodProtocol(args.depth, args.root), args.depth
    if name == "cluster":
        proto = ClusterProtocol(args.k, args.c)
        return proto, proto.round_budget
    r = args.r if args.r is not None else args.p - 1
    proto = FtProtocol(ClusterProtocol(args.k, args.c), r, args.ft_c)
    return proto, proto.round_budget


def cmd_sim(args) -> int:
    g = load_graph(args.input)
    proto, budget = _protocol(args)
    limit = budget if args.max_rounds is None else args.max_rounds
    out = args.output or f"{args.input}.{args.protocol}.el"
    trace_path = args.trace or f"{out}.rounds.csv"
    try:
        h, trace = run_protocol(g, proto, limit, args.seed)
    except RoundBudgetExceeded as exc:
        _write(trace_path, exc.trace.to_csv())
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    save_graph(h.graph, out, _comments(h.meta))
    _write(trace_path, trace.to_csv())
    return EXIT_OK


# -- bench ---------------------------------------------------------------


def _bench_graphs(args):
    for n in args.sizes:
        for seed in args.seeds:
            spec = RandomGraphSpec(n, args.density, (args.wmin, args.wmax), seed)
            yield n, seed, gen_random(spec)


def cmd_bench(args) -> int:
    suite = args.suite
    rows = []
    if suite in ("greedy-size", "cluster-size"):
        header = ["n", "m_H", "bound"]
        for n in args.sizes:
            sizes = []
            for seed in args.seeds:
                g = gen_random(RandomGraphSpec(n, args.density, (args.wmin, args.wmax), seed))
                if suite == "greedy-size":
                    sizes.append(greedy_hop_spanner(g, args.k).m)
                else:
                    sizes.append(cluster_hop_spanner(g, args.k, args.c, seed).m)
            bound = n ** (1 + 1 / args.k)
            rows.append([n, f"{sum(sizes) / len(sizes):.1f}", f"{bound:.1f}"])
    elif suite == "pipeline-size":
        header = ["n", "seed", "m_G", "m_H", "reference"]
        for n, seed, g in _bench_graphs(args):
            h, _ = multipath_spanner(g, PipelineParams(args.p, args.k, seed=seed, ft_c=args.ft_c))
            rows.append([n, seed, g.m, h.m, f"{size_reference(n, args.p, args.k):.1f}"])
    elif suite == "bipath-stretch":
        header = ["n", "seed", "u", "v", "delta_g", "delta_h", "ratio"]
        for n, seed, g in _bench_graphs(args):
            h, _ = bipath_spanner(g)
            rep = verify_stretch(g, h, 2, 2, 24 * g.max_weight)
            for u, v, dg, dh in rep.rows:
                r = rep.ratio(dg, dh)
                rows.append([n, seed, u, v, dg, dh, "" if r is None else f"{float(r):.6f}"])
    else:
        header = ["n", "seed", "k", "rounds", "messages"]
        for n, seed, g in _bench_graphs(args):
            _, trace = run_protocol(g, ClusterProtocol(args.k, args.c), 3 * args.k, seed)
            rows.append([n, seed, args.k, trace.rounds_used, sum(trace.messages)])
    _write(args.output, _csv(header, rows))
    return EXIT_OK


# -- parser --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mpspanner", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a random graph or a fixture")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--p", type=float, default=0.2, help="edge probability")
    gen.add_argument("--wmin", type=int, default=1)
    gen.add_argument("--wmax", type=int, default=1)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--fixture", choices=["fig1"])
    gen.add_argument("--s", type=int, help="fixture stretch parameter")
    gen.add_argument("-o", "--output", help="output file (fixtures: file prefix)")
    gen.set_defaults(func=cmd_gen)

    build = sub.add_parser("build", help="construct a spanner")
    build.add_argument("input")
    build.add_argument("--algo", required=True, choices=["greedy-hop", "cluster-hop", "ft", "pipeline", "bipath"])
    build.add_argument("--k", type=int, default=2)
    build.add_argument("--p", type=int, default=2)
    build.add_argument("--r", type=int, default=1)
    build.add_argument("--c", type=float, default=2.0, help="cluster sampling constant")
    build.add_argument("--ft-c", type=float, default=1.0, help="wrapper repeat constant")
    build.add_argument("--inner", choices=["cluster-hop", "greedy-hop"], default="cluster-hop")
    build.add_argument("--spst-on", choices=["current", "input"], default="current")
    build.add_argument("--bfs-on", choices=["current", "input"], default="current")
    build.add_argument("--seed", type=int, default=0)
    build.add_argument("--measure", action="store_true", help="fill worst_ratio by exact verification")
    build.add_argument("-o", "--output")
    build.add_argument("--summary", help="summary JSON path (default stdout)")
    build.add_argument("--trace", help="bipath trace JSONL path")
    build.set_defaults(func=cmd_build)

    ver = sub.add_parser("verify", help="check a spanner against its graph")
    ver.add_argument("graph")
    ver.add_argument("spanner")
    ver.add_argument("--kind", required=True, choices=["multipath", "hop", "ft", "certificate"])
    ver.add_argument("--p", type=int, default=1)
    ver.add_argument("--alpha", type=Fraction)
    ver.add_argument("--beta", type=int, default=0)
    ver.add_argument("--b", type=int, default=3)
    ver.add_argument("--s", type=Fraction, default=Fraction(3))
    ver.add_argument("--r", type=int, default=1)
    ver.add_argument("--k", type=int, default=2)
    ver.add_argument("--n", type=int, help="vertex count for the certificate bound")
    ver.add_argument("--report", help="CSV report path (default stdout)")
    ver.set_defaults(func=cmd_verify)

    sim = sub.add_parser("sim", help="run a LOCAL-model protocol")
    sim.add_argument("input")
    sim.add_argument("--protocol", required=True, choices=["null", "flood", "cluster", "ft-cluster"])
    sim.add_argument("--k", type=int, default=2)
    sim.add_argument("--p", type=int, default=2)
    sim.add_argument("--r", type=int)
    sim.add_argument("--c", type=float, default=2.0)
    sim.add_argument("--ft-c", type=float, default=1.0)
    sim.add_argument("--depth", type=int, default=1)
    sim.add_argument("--root", type=int, default=0)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--max-rounds", type=int)
    sim.add_argument("-o", "--output")
    sim.add_argument("--trace", help="round trace CSV path")
    sim.set_defaults(func=cmd_sim)

    bench = sub.add_parser("bench", help="print size, stretch or round tables")
    bench.add_argument("--suite", required=True, choices=["greedy-size", "cluster-size", "pipeline-size", "bipath-stretch", "sim-rounds"])
    bench.add_argument("--sizes", type=int, nargs="+", default=[50, 100])
    bench.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    bench.add_argument("--k", type=int, default=2)
    bench.add_argument("--p", type=int, default=2)
    bench.add_argument("--c", type=float, default=2.0)
    bench.add_argument("--ft-c", type=float, default=1.0)
    bench.add_argument("--density", type=float, default=0.2)
    bench.add_argument("--wmin", type=int, default=1)
    bench.add_argument("--wmax", type=int, default=10)
    bench.add_argument("-o", "--output")
    bench.set_defaults(func=cmd_bench)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except GuardExceeded as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (UsageError, GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
