import numpy as np
import pytest

from signed_consensus.graph import SignedDigraph, example_graph

from oracles import PRINTED_LA


@pytest.fixture(scope="session")
def ga():
    return example_graph()


@pytest.fixture(scope="session")
def la():
    return np.array(PRINTED_LA, dtype=float)


def graph(n, edges):
    """Shorthand: 1-based ``(src, dst, weight)`` triples."""
    return SignedDigraph.from_edges(n, [(s - 1, d - 1, w) for s, d, w in edges])


@pytest.fixture
def path3():
    return graph(3, [(1, 2, 1.0), (2, 3, 1.0)])


@pytest.fixture
def neg_two_cycle():
    return graph(2, [(1, 2, 1.0), (2, 1, -1.0)])


@pytest.fixture
def pos_two_cycle():
    return graph(2, [(1, 2, 1.0), (2, 1, 1.0)])
