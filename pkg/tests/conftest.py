import pytest

from src.graphs import generators
from src.graphs.core import Graph


@pytest.fixture
def k4() -> Graph:
    return generators.complete(4)


@pytest.fixture
def c4() -> Graph:
    return generators.cycle(4)


@pytest.fixture
def c5() -> Graph:
    return generators.cycle(5)


@pytest.fixture
def petersen() -> Graph:
    return generators.petersen()


@pytest.fixture
def prism() -> Graph:
    return generators.prism(3)


@pytest.fixture
def two_triangles() -> Graph:
    return generators.two_triangles()


@pytest.fixture
def k33() -> Graph:
    return generators.complete_bipartite(3, 3)


@pytest.fixture
def two_tree_strip() -> Graph:
    """2-tree on 7 vertices: a strip of five triangles glued along edges."""
    edges = [(0, 1), (0, 2), (1, 2)]
    for v in range(3, 7):
        edges += [(v - 2, v), (v - 1, v)]
    return Graph(7, edges)


@pytest.fixture
def theta() -> Graph:
    return generators.theta(3, 2)
