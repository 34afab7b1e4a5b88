import logging
import re
from typing import List, Tuple

import networkx as nx
import numpy as np

from src.errors import GraphError
from src.graphs.core import Graph

logger = logging.getLogger(__name__)


def complete(n: int) -> Graph:
    return Graph.from_networkx(nx.complete_graph(n))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph.from_networkx(nx.cycle_graph(n))


def path(n: int) -> Graph:
    return Graph.from_networkx(nx.path_graph(n))


def star(leaves: int) -> Graph:
    return Graph.from_networkx(nx.star_graph(leaves))


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with sides 0..a-1 and a..a+b-1"""
    return Graph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def grid(rows: int, cols: int) -> Graph:
    return Graph.from_networkx(nx.grid_2d_graph(rows, cols))


def prism(k: int = 3) -> Graph:
    return Graph.from_networkx(nx.circular_ladder_graph(k))


def petersen() -> Graph:
    return Graph.from_networkx(nx.petersen_graph())


def theta(paths: int = 3, length: int = 2) -> Graph:
    """Two poles 0 and 1 joined by ``paths`` internally disjoint paths of ``length`` edges."""
    if length < 1 or paths < 1 or (length == 1 and paths > 1):
        raise GraphError("theta graph needs simple, internally disjoint paths")
    edges: List[Tuple[int, int]] = []
    nxt = 2
    for _ in range(paths):
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph(nxt, edges)


def two_triangles() -> Graph:
    """Two triangles sharing the edge 0-1."""
    return Graph(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])


def random_tree(n: int, seed: int = 0) -> Graph:
    if n <= 2:
        return path(n)
    rng = np.random.default_rng(seed)
    prufer = [int(x) for x in rng.integers(0, n, size=n - 2)]
    return Graph.from_networkx(nx.from_prufer_sequence(prufer))


def random_gnp(n: int, p: float, seed: int = 0, connected: bool = True) -> Graph:
    """Seeded G(n, p); with ``connected`` consecutive components are joined by one edge."""
    rng = np.random.default_rng(seed)
    rows, cols = np.triu_indices(n, k=1)
    keep = rng.random(rows.size) < p
    edges = set(zip(rows[keep].tolist(), cols[keep].tolist()))
    if connected and n > 1:
        comps = Graph(n, edges).components()
        for left, right in zip(comps, comps[1:]):
            edges.add((left[0], right[0]))
        if len(comps) > 1:
            logger.debug(f"Joined {len(comps)} components of G({n}, {p}) seed {seed}")
    return Graph(n, sorted(edges))


_PATTERN = re.compile(r"^([kcp])(\d+)$")


def pattern_from_name(name: str) -> Graph:
    """Named pattern graphs: k2, k3, p3 and generally kN, cN, pN (pN has N vertices)."""
    match = _PATTERN.match(name.strip().lower())
    if not match:
        raise GraphError(f"unknown pattern name {name!r}")
    kind, size = match.group(1), int(match.group(2))
    if size < 2:
        raise GraphError(f"pattern {name!r} needs at least one edge")
    if kind == "k":
        return complete(size)
    if kind == "c":
        return cycle(size)
    return path(size)
