import random
from itertools import combinations

import pytest

from kplanar.graph import Graph


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def random_graph(n: int, p: float, seed: int) -> Graph:
    rnd = random.Random(seed)
    return Graph(n, [e for e in combinations(range(n), 2) if rnd.random() < p])


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def c6():
    return cycle_graph(6)


@pytest.fixture
def petersen():
    return petersen_graph()
