from __future__ import annotations

import numpy as np
import pytest

from voterlab.graph import MultiDigraph


def complete_graph(n: int) -> MultiDigraph:
    """Undirected K_n without self-loops."""
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return MultiDigraph.from_edges(n, edges, directed=False)


def complete_graph_with_loops(n: int) -> MultiDigraph:
    """Directed graph with one edge x -> y for every ordered pair incl. x = x."""
    edges = [(i, j) for i in range(n) for j in range(n)]
    return MultiDigraph.from_edges(n, edges, directed=True)


def directed_cycle(n: int) -> MultiDigraph:
    edges = [(i, (i + 1) % n) for i in range(n)]
    return MultiDigraph.from_edges(n, edges, directed=True)


def mutual_pair() -> MultiDigraph:
    """Two vertices joined by a single undirected edge."""
    return MultiDigraph.from_edges(2, [(0, 1)], directed=False)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
