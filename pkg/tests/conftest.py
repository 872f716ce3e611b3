import itertools
import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from fracgap.graph import Graph, enumerate_connected

DATA = Path(__file__).resolve().parent.parent / "data"

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    p = rng.random() if p is None else p
    return Graph(n, tuple(e for e in itertools.combinations(range(n), 2) if rng.random() < p))


def random_connected(rng: random.Random, n: int) -> Graph:
    """Random spanning tree plus independent extra edges with a random density."""
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    p = rng.random() * 0.6
    for e in itertools.combinations(range(n), 2):
        if rng.random() < p:
            edges.add(e)
    return Graph(n, tuple(sorted(edges)))


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, tuple(e for e, b in zip(pairs, bits) if b))


@pytest.fixture(scope="session")
def connected_upto8():
    return {n: tuple(enumerate_connected(n)) for n in range(1, 9)}
