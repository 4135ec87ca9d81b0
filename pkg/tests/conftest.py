import random

import pytest
from hypothesis import strategies as st

from gbfp.graph import CitationNetwork


def random_dag(seed, n=12, p=0.3):
    """Random DAG on ``n`` nodes; ids are shuffled so id order is not a topological order."""
    rng = random.Random(seed)
    names = [f"n{i:02d}" for i in range(n)]
    rng.shuffle(names)
    edges = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return CitationNetwork.from_edges(edges, nodes=names)


@st.composite
def dags(draw, max_nodes=10):
    n = draw(st.integers(1, max_nodes))
    perm = draw(st.permutations(range(n)))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return CitationNetwork.from_edges(
        [(f"v{perm[i]}", f"v{perm[j]}") for i, j in chosen],
        nodes=[f"v{k}" for k in range(n)],
    )


def all_forward_paths(net, start):
    """Every path from ``start`` to an endpoint, by plain recursion."""
    nxt = net.citing(start)
    if not nxt:
        return [(start,)]
    return [(start,) + rest for c in nxt for rest in all_forward_paths(net, c)]


@pytest.fixture
def chain():
    return CitationNetwork.from_edges([("A", "B"), ("B", "C")])


@pytest.fixture
def diamond():
    return CitationNetwork.from_edges([("A", "B"), ("A", "C"), ("B", "D"), ("C", "D")])


ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
