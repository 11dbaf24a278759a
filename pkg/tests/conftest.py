import itertools
from pathlib import Path

import networkx as nx
import numpy as np
import pytest

from holewidth.core.graph import Graph, cycle_graph
from holewidth.core.patterns import Pattern

DATA_DIR = Path(__file__).parent / "data"


def random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


def oracle_induced(g: Graph, pattern: Pattern) -> bool:
    """Does any vertex subset induce a copy of pattern? Checked by isomorphism."""
    target = pattern.as_graph().to_networkx()
    whole = g.to_networkx()
    for subset in itertools.combinations(range(g.n), pattern.order):
        if nx.is_isomorphic(whole.subgraph(subset), target):
            return True
    return False


def oracle_hole(g: Graph, k: int) -> bool:
    target = nx.cycle_graph(k)
    whole = g.to_networkx()
    return any(
        nx.is_isomorphic(whole.subgraph(subset), target) for subset in itertools.combinations(range(g.n), k)
    )


def oracle_chromatic(g: Graph) -> int:
    """Smallest k with a proper k-colouring, by trying every assignment."""
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        colours = [0] * g.n

        def fill(v: int) -> bool:
            if v == g.n:
                return True
            for c in range(k):
                if all(colours[u] != c for u in g.neighbour_list(v) if u < v):
                    colours[v] = c
                    if fill(v + 1):
                        return True
            return False

        if fill(0):
            return k
    return g.n


def is_proper(g: Graph, colours) -> bool:
    return all(colours[u] != colours[v] for u, v in g.edges())


@pytest.fixture
def c5() -> Graph:
    return cycle_graph(5)


@pytest.fixture
def c6() -> Graph:
    return cycle_graph(6)


@pytest.fixture
def c7() -> Graph:
    return cycle_graph(7)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240501)


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR
