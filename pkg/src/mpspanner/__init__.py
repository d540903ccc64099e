"""Multipath, fault-tolerant and bounded-hop graph spanners."""

from .graph import RandomGraphSpec, Subgraph, WeightedGraph, gen_random, load_graph, save_graph
from .metrics import multipath_cost, verify_stretch
from .pipeline import compute_phi, multipath_spanner

__all__ = [
    "RandomGraphSpec",
    "Subgraph",
    "WeightedGraph",
    "compute_phi",
    "gen_random",
    "load_graph",
    "multipath_cost",
    "multipath_spanner",
    "save_graph",
    "verify_stretch",
]

__version__ = "0.1.0"
