import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, List, Optional, Set, Tuple

import networkx as nx
from networkx.algorithms.flow import edmonds_karp

from src.config import settings
from src.errors import GraphError, OracleLimitError
from src.graphs.core import Graph, Path
from src.schemas import ConnectivityVerdict

logger = logging.getLogger(__name__)


def articulation_points(g: Graph, removed: Iterable[int] = ()) -> Set[int]:
    """Cut vertices of ``g - removed``."""
    nxg = g.to_networkx()
    nxg.remove_nodes_from(set(removed))
    return set(nx.articulation_points(nxg))


def biconnected_blocks(g: Graph) -> List[List[int]]:
    """Edge partition into blocks, each a sorted list of edge ids, ordered by first edge."""
    nxg = g.to_networkx()
    blocks = [sorted(g.edge_id(u, v) for u, v in comp)
              for comp in nx.biconnected_component_edges(nxg)]
    return sorted(blocks)


def is_three_connected(g: Graph) -> ConnectivityVerdict:
    if g.n < 4:
        return ConnectivityVerdict(passed=False, detail="fewer than 4 vertices")
    if not g.is_connected():
        return ConnectivityVerdict(passed=False, detail="disconnected")
    cut = articulation_points(g)
    if cut:
        return ConnectivityVerdict(passed=False, separator=(min(cut),), detail="cut vertex")
    for v in range(g.n):
        cut = articulation_points(g, removed=(v,))
        if cut:
            a = min(cut)
            return ConnectivityVerdict(passed=False, separator=tuple(sorted((v, a))),
                                       detail="2-separator")
    return ConnectivityVerdict(passed=True)


def _split_network(g: Graph, src: List[int], dst: Set[int], banned: Set[int], k: int) -> nx.DiGraph:
    """Vertex-split flow network: v enters at 2v and leaves at 2v + 1 through a unit arc.

    Arcs are inserted in ascending vertex order so augmenting paths prefer low ids.
    """
    n = g.n
    root, s_node, t_node = 2 * n + 2, 2 * n, 2 * n + 1
    src_set = set(src)
    net = nx.DiGraph()
    net.add_nodes_from(range(2 * n + 3))
    net.add_edge(root, s_node, capacity=k)
    for s in src:
        if s not in banned:
            net.add_edge(s_node, 2 * s, capacity=1)
    for v in range(n):
        if v in banned:
            continue
        net.add_edge(2 * v, 2 * v + 1, capacity=1)
        if v in dst:
            net.add_edge(2 * v + 1, t_node, capacity=1)
            continue
        for w in sorted(g.neighbors(v)):
            if w in banned or w in src_set:
                continue
            net.add_edge(2 * v + 1, 2 * w, capacity=1)
    return net


def disjoint_paths(g: Graph, sources: Iterable[int], targets: Iterable[int], k: int,
                   blocked: Iterable[int] = ()) -> Optional[List[Path]]:
    """k vertex-disjoint source-target paths avoiding sources/targets internally.

    Vertices in ``blocked`` are never used. Returns None when fewer than k such
    paths exist.
    """
    src = sorted(set(sources))
    dst = set(targets)
    if k < 1:
        raise GraphError(f"k must be at least 1, got {k}")
    if set(src) & dst:
        raise GraphError("sources and targets must be disjoint")

    n = g.n
    s_node, t_node = 2 * n, 2 * n + 1
    net = _split_network(g, src, dst, set(blocked), k)
    value, flow = nx.maximum_flow(net, 2 * n + 2, t_node, flow_func=edmonds_karp)
    if value < k:
        logger.debug(f"Menger routing found only {value} of {k} paths")
        return None

    paths = []
    for start in sorted(w for w, f in flow[s_node].items() if f > 0):
        node = start
        walk = [node // 2]
        while True:
            nxt = next(w for w, f in sorted(flow[node + 1].items()) if f > 0)
            if nxt == t_node:
                break
            node = nxt
            walk.append(node // 2)
        paths.append(Path(tuple(walk)))
    return sorted(paths, key=lambda p: p.vertices)


# Brute-force separator oracle


@dataclass(frozen=True)
class SeparatorRecord:
    vertices: Tuple[int, ...]
    totally_nested: bool
    tight_separations: int


def _touches(g: Graph, sep: Tuple[int, ...], comps: List[List[int]]) -> List[List[bool]]:
    return [[any(w in g.neighbors(s) for w in c) for c in comps] for s in sep]


def _count_tight_separations(g: Graph, sep: Tuple[int, ...], comps: List[List[int]]) -> int:
    """Separations of ``sep`` with connected sides in which every separator
    vertex has neighbours on both strict sides."""
    touches = _touches(g, sep, comps)
    if any(sum(row) < 2 for row in touches):
        return 0
    count = 0
    p = len(comps)
    for bits in range(1, 1 << (p - 1)):
        sides = ([i for i in range(p) if bits >> i & 1], [i for i in range(p) if not bits >> i & 1])
        ok = True
        for side in sides:
            if not all(any(row[i] for i in side) for row in touches):
                ok = False
                break
            # A two-vertex side is connected iff some component in it touches both
            if len(sep) == 2 and not g.has_edge(*sep) and not any(
                    touches[0][i] and touches[1][i] for i in side):
                ok = False
                break
        count += ok
    return count


def _splits_a_block(g: Graph, sep: Tuple[int, ...], comps: List[List[int]]) -> bool:
    """A 2-set separates a common block iff two components of ``g - sep`` touch both of it.

    Pairs of cut vertices whose components each hang off one vertex only are
    separations already induced by a single cut vertex.
    """
    touches = _touches(g, sep, comps)
    return sum(a and b for a, b in zip(*touches)) >= 2


def _crosses(other: Tuple[int, ...], label: dict) -> bool:
    outside = {label[v] for v in other if v in label}
    return len(outside) >= 2


def two_separators_bruteforce(g: Graph, limit: int | None = None,
                              max_components: int = 16) -> List[SeparatorRecord]:
    """All vertex sets of size <= 2 whose removal disconnects ``g``, each
    flagged totally nested or not, by exhaustive removal testing.

    A cut vertex and a 2-set separating one block take part in nestedness; a
    separator is totally nested when no other such separator has vertices in
    two components of ``g`` minus it.
    """
    limit = settings.oracle_vertex_limit if limit is None else limit
    if g.n > limit:
        raise OracleLimitError(f"separator oracle limited to {limit} vertices, got {g.n}")
    if not g.is_connected():
        raise GraphError("separator oracle needs a connected graph")

    candidates = [(v,) for v in range(g.n)] + list(combinations(range(g.n), 2))
    separators = []
    for sep in candidates:
        comps = g.components(removed=sep)
        if len(comps) < 2:
            continue
        if len(comps) > max_components:
            raise OracleLimitError(f"separator {sep} leaves {len(comps)} components")
        tight = _count_tight_separations(g, sep, comps)
        proper = tight > 0 and (len(sep) == 1 or _splits_a_block(g, sep, comps))
        label = {v: i for i, comp in enumerate(comps) for v in comp}
        separators.append((sep, tight, proper, label))

    proper_seps = [sep for sep, _, proper, _ in separators if proper]
    records = []
    for sep, tight, proper, label in separators:
        nested = proper and not any(_crosses(other, label) for other in proper_seps if other != sep)
        records.append(SeparatorRecord(sep, nested, tight))
    logger.debug(f"Separator oracle: {len(records)} separators, "
                 f"{sum(r.totally_nested for r in records)} totally nested")
    return records
