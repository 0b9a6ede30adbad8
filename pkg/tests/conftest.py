import pytest

from kmergraph import LabeledGraph, validate_wheeler
from kmergraph.generators import single_edge, self_loop, two_cycle


@pytest.fixture
def g1():
    return single_edge()


@pytest.fixture
def g2():
    return self_loop()


@pytest.fixture
def g3():
    return two_cycle()


@pytest.fixture
def w3(g3):
    return validate_wheeler(g3)


@pytest.fixture
def twins():
    """Two sources whose 'a' and then 'b' successors share the 2-mer "ab";
    both 'b' vertices feed one 'c' vertex."""
    g = LabeledGraph.from_edges(
        7, [(0, 2, 0), (1, 3, 0), (2, 4, 1), (3, 5, 1), (4, 6, 2), (5, 6, 2)], 3, "abc"
    )
    return validate_wheeler(g)


@pytest.fixture
def fork():
    """Source with an 'a' and a 'b' branch that rejoin through 'c'."""
    g = LabeledGraph.from_edges(4, [(0, 1, 0), (0, 2, 1), (1, 3, 2), (2, 3, 2)], 3, "abc")
    return validate_wheeler(g)
