import hashlib
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from src.errors import GraphError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def _normalize(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1.

    Edge identifiers are positions in ``edges``; they are stable for the
    lifetime of the object and are what families and certificates refer to.
    """

    __slots__ = ("_n", "_edges", "_index", "_adj")

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        normalized: List[Edge] = []
        index: Dict[Edge, int] = {}
        adj: List[set] = [set() for _ in range(n)]
        for raw in edges:
            u, v = int(raw[0]), int(raw[1])
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            e = _normalize(u, v)
            if e in index:
                raise GraphError(f"parallel edge ({e[0]}, {e[1]})")
            index[e] = len(normalized)
            normalized.append(e)
            adj[u].add(v)
            adj[v].add(u)
        self._n = n
        self._edges: Tuple[Edge, ...] = tuple(normalized)
        self._index = index
        self._adj: Tuple[FrozenSet[int], ...] = tuple(frozenset(a) for a in adj)

    # Basic accessors

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return self._edges

    def vertices(self) -> range:
        return range(self._n)

    def edge_ids(self) -> range:
        return range(len(self._edges))

    def edge(self, eid: int) -> Edge:
        try:
            return self._edges[eid]
        except IndexError:
            raise GraphError(f"unknown edge id {eid}") from None

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self._index[_normalize(u, v)]
        except KeyError:
            raise GraphError(f"({u}, {v}) is not an edge") from None

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize(u, v) in self._index

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def average_degree(self) -> float:
        return 2 * self.m / self._n if self._n else 0.0

    def incident_edges(self, v: int) -> List[int]:
        return sorted(self._index[_normalize(v, w)] for w in self._adj[v])

    # Derived graphs

    def induced(self, vertices: Iterable[int]) -> Tuple["Graph", Tuple[int, ...]]:
        """Induced subgraph on ``vertices``, relabelled densely in ascending order.

        Returns the subgraph and the map local vertex -> parent vertex.
        """
        keep = tuple(sorted(set(vertices)))
        local = {v: i for i, v in enumerate(keep)}
        edges = [(local[u], local[v]) for (u, v) in self._edges if u in local and v in local]
        return Graph(len(keep), edges), keep

    def edge_subgraph(self, edge_ids: Iterable[int]) -> Tuple["Graph", Tuple[int, ...]]:
        """Spanning subgraph with the given edges; vertex ids are unchanged.

        Returns the subgraph and the map local edge id -> parent edge id.
        """
        ids = tuple(sorted(set(edge_ids)))
        return Graph(self._n, (self._edges[e] for e in ids)), ids

    def without_edge(self, eid: int) -> "Graph":
        return Graph(self._n, (e for i, e in enumerate(self._edges) if i != eid))

    # Traversal

    def components(self, removed: Iterable[int] = ()) -> List[List[int]]:
        """Connected components of the graph minus ``removed``, each sorted."""
        banned = set(removed)
        seen = set(banned)
        comps: List[List[int]] = []
        for s in range(self._n):
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self, removed: Iterable[int] = ()) -> bool:
        return len(self.components(removed)) <= 1

    def shortest_path(self, source: int, target: int,
                      allowed: Optional[Iterable[int]] = None,
                      skip_edge: Optional[int] = None) -> Optional["Path"]:
        """Lexicographically smallest shortest path from ``source`` to ``target``.

        Only vertices in ``allowed`` (plus the endpoints) are used, and the edge
        ``skip_edge`` is never traversed. Returns None if no path exists.
        """
        pool = set(range(self._n)) if allowed is None else set(allowed)
        pool.update((source, target))
        banned = self._edges[skip_edge] if skip_edge is not None else None
        dist = {target: 0}
        queue = deque([target])
        while queue:
            x = queue.popleft()
            if x == source:
                break
            for y in self._adj[x]:
                if y in pool and y not in dist and _normalize(x, y) != banned:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        if source not in dist:
            return None
        walk = [source]
        x = source
        while x != target:
            x = min(y for y in self._adj[x]
                    if dist.get(y) == dist[x] - 1 and _normalize(x, y) != banned)
            walk.append(x)
        return Path(tuple(walk))

    # Interop and identity

    def to_networkx(self) -> nx.Graph:
        nxg = nx.Graph()
        nxg.add_nodes_from(range(self._n))
        nxg.add_edges_from((u, v, {"eid": i}) for i, (u, v) in enumerate(self._edges))
        return nxg

    @classmethod
    def from_networkx(cls, nxg: nx.Graph) -> "Graph":
        order = {v: i for i, v in enumerate(sorted(nxg.nodes()))}
        edges = sorted(_normalize(order[u], order[v]) for u, v in nxg.edges())
        return cls(len(order), edges)

    def host_hash(self) -> str:
        """Fingerprint used in family file headers; follows edge-id order, which member lines depend on."""
        digest = hashlib.sha256(f"{self._n}".encode())
        for u, v in self._edges:
            digest.update(f";{u},{v}".encode())
        return digest.hexdigest()[:16]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.m})"


@dataclass(frozen=True)
class Path:
    """A sequence of pairwise distinct vertices; consecutive pairs are host edges."""

    vertices: Tuple[int, ...]

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def interior(self) -> Tuple[int, ...]:
        return self.vertices[1:-1]

    def pairs(self) -> Iterator[Edge]:
        return zip(self.vertices, self.vertices[1:])

    def edge_ids(self, g: Graph) -> List[int]:
        return [g.edge_id(u, v) for u, v in self.pairs()]

    def reversed(self) -> "Path":
        return Path(tuple(reversed(self.vertices)))

    def then(self, other: "Path") -> "Path":
        """Concatenate at the shared vertex ``self.end == other.start``."""
        if self.end != other.start:
            raise GraphError(f"cannot join path ending at {self.end} to path starting at {other.start}")
        return Path(self.vertices + other.vertices[1:])

    def is_valid(self, g: Graph) -> bool:
        if not self.vertices or len(set(self.vertices)) != len(self.vertices):
            return False
        if any(not (0 <= v < g.n) for v in self.vertices):
            return False
        return all(g.has_edge(u, v) for u, v in self.pairs())


def join_paths(parts: Sequence[Path]) -> Path:
    path = parts[0]
    for part in parts[1:]:
        path = path.then(part)
    return path
