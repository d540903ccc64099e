from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from mpspanner.graph import WeightedGraph, norm_edge

ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


@st.composite
def small_graphs(draw, min_n=2, max_n=8, max_w=5):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    weights = draw(st.lists(st.integers(1, max_w), min_size=len(chosen), max_size=len(chosen)))
    return WeightedGraph(n, [(u, v, w) for (u, v), w in zip(chosen, weights)])


def two_connected(n: int, extra: int, seed: int, wmax: int = 10) -> WeightedGraph:
    """Hamiltonian cycle on a shuffled order plus random chords."""
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = {}
    for i in range(n):
        edges[norm_edge(order[i], order[(i + 1) % n])] = rng.randint(1, wmax)
    for _ in range(extra):
        a, b = rng.sample(range(n), 2)
        edges.setdefault(norm_edge(a, b), rng.randint(1, wmax))
    return WeightedGraph(n, [(a, b, w) for (a, b), w in sorted(edges.items())])


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for an acceptance criterion."""
    state = {}

    def record(number: int, title: str, detail: str = "") -> None:
        state.update(number=number, title=title, detail=detail)

    yield record
    if state:
        rep = getattr(request.node, "rep_call", None)
        passed = rep is not None and rep.passed
        prev = ACCEPTANCE.get(state["number"])
        if prev is not None:
            passed = passed and prev[1]
        ACCEPTANCE[state["number"]] = (state["title"], passed, state["detail"])


@pytest.hookimpl(hookwrapper=True, tryfirst=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[number]
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
