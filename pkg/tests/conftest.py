import numpy as np
import pytest

from netjack.graph import Graph


def er_graph(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi test fixture built directly from numpy draws (independent
    of the package's samplers)."""
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.random((n, n)) < p, k=1)
    ii, jj = np.nonzero(upper)
    return Graph.from_edges(n, np.column_stack([ii, jj]))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


@pytest.fixture
def oneseed_rng():
    return np.random.default_rng(12345)
