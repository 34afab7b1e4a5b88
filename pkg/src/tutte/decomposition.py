import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

import networkx as nx

from src.errors import DecompositionError, FormatError
from src.graphs.connectivity import articulation_points, biconnected_blocks, is_three_connected
from src.graphs.core import Graph
from src.graphs.edgelist import content_lines
from src.schemas import Verdict

logger = logging.getLogger(__name__)


class TorsoKind(str, Enum):
    THREE_CONNECTED = "three_connected"
    CYCLE = "cycle"
    SINGLE_REAL_EDGE = "single_real_edge"


class TutteClause(str, Enum):
    TREE = "tree"
    EDGE_COVERAGE = "edge coverage"
    VERTEX_SUBTREE = "vertex subtree"
    ADHESION = "adhesion ≤ 2"
    TORSO_DEFINITION = "torso definition"
    TORSO_CLASSIFICATION = "torso classification"
    VIRTUAL_PATHS = "virtual edge paths"
    ENUMERATION_ORDER = "enumeration order"


TorsoEdge = Tuple[int, int, Optional[int]]


@dataclass(frozen=True)
class TorsoGraph:
    """A torso relabelled densely; ``real[e]`` is the host edge id of local edge e, or None."""

    graph: Graph
    vertex_map: Tuple[int, ...]
    real: Tuple[Optional[int], ...]

    def local(self, host_vertex: int) -> int:
        return self.vertex_map.index(host_vertex)


@dataclass(frozen=True)
class Torso:
    vertices: Tuple[int, ...]
    # (u, v, host edge id) with u < v in host ids; None marks a virtual edge
    edges: Tuple[TorsoEdge, ...]

    def pairs(self) -> Set[Tuple[int, int]]:
        return {(u, v) for u, v, _ in self.edges}

    def virtual_pairs(self) -> List[Tuple[int, int]]:
        return [(u, v) for u, v, eid in self.edges if eid is None]

    def as_graph(self) -> TorsoGraph:
        local = {v: i for i, v in enumerate(self.vertices)}
        ordered = sorted(self.edges, key=lambda e: (local[e[0]], local[e[1]]))
        graph = Graph(len(self.vertices), [(local[u], local[v]) for u, v, _ in ordered])
        return TorsoGraph(graph, self.vertices, tuple(eid for _, _, eid in ordered))


@dataclass(frozen=True)
class TutteDecomposition:
    bags: Tuple[FrozenSet[int], ...]
    links: Tuple[Tuple[int, int], ...]
    torsos: Tuple[Torso, ...]
    kinds: Tuple[TorsoKind, ...]
    order: Tuple[int, ...]
    _tree: nx.Graph = field(default_factory=nx.Graph, init=False, repr=False, compare=False)

    def __post_init__(self):
        self._tree.add_nodes_from(range(len(self.bags)))
        self._tree.add_edges_from(self.links)

    def __len__(self) -> int:
        return len(self.bags)

    def neighbors(self, bag: int) -> List[int]:
        return sorted(self._tree[bag]) if bag in self._tree else []

    def link_graph(self) -> nx.Graph:
        return self._tree

    def adhesion(self, a: int, b: int) -> FrozenSet[int]:
        return self.bags[a] & self.bags[b]

    def adhesion_sets(self) -> Set[FrozenSet[int]]:
        return {self.adhesion(a, b) for a, b in self.links}

    def is_promoted(self, bag: int) -> bool:
        """Single-real-edge bag carved out of a 2-separator whose sides share the real edge."""
        nbs = self.neighbors(bag)
        return (self.kinds[bag] is TorsoKind.SINGLE_REAL_EDGE and bool(nbs)
                and all(len(self.adhesion(bag, nb)) == 2 for nb in nbs))

    def side(self, bag: int, away_from: int) -> Set[int]:
        """Vertices of the bags reachable from ``bag`` without crossing to ``away_from``."""
        rest = self._tree.subgraph(set(self._tree) - {away_from})
        return set().union(*(self.bags[x] for x in nx.node_connected_component(rest, bag)))

    def accounting(self) -> Tuple[int, int]:
        """(k, sum of torso sizes) over the enumeration order, promoted bags excluded."""
        sizes = [len(self.bags[i]) for i in self.order if not self.is_promoted(i)]
        return len(sizes), sum(sizes)


# Construction


@dataclass
class _Skeleton:
    vertices: Set[int]
    # (u, v, real host edge id or None, virtual id or None)
    edges: List[Tuple[int, int, Optional[int], Optional[int]]]


@dataclass
class _Bond:
    u: int
    v: int
    real: Optional[int]
    virtual_ids: List[int]


def _totally_nested_pairs(g: Graph, block_vertices: List[int]) -> List[Tuple[int, int]]:
    """2-separators of a 2-connected block crossed by no other 2-separator, in host ids."""
    bg, to_host = g.induced(block_vertices)
    seps: Set[Tuple[int, int]] = set()
    for a in range(bg.n):
        for b in articulation_points(bg, removed=(a,)):
            seps.add((min(a, b), max(a, b)))
    labels: Dict[Tuple[int, int], Dict[int, int]] = {}
    for sep in seps:
        labels[sep] = {v: i for i, comp in enumerate(bg.components(removed=sep)) for v in comp}
    nested = []
    for sep in sorted(seps):
        label = labels[sep]
        crossed = any(c not in sep and d not in sep and label[c] != label[d] for c, d in seps)
        if not crossed:
            nested.append((to_host[sep[0]], to_host[sep[1]]))
    return sorted(nested)


def _skeleton_components(skel: _Skeleton, removed: Tuple[int, int]) -> List[Set[int]]:
    h = nx.Graph()
    h.add_nodes_from(v for v in skel.vertices if v not in removed)
    h.add_edges_from((u, v) for u, v, _, _ in skel.edges if u not in removed and v not in removed)
    return sorted((set(c) for c in nx.connected_components(h)), key=min)


class _BlockSplitter:
    """Splits one 2-connected block along its totally nested 2-separators."""

    def __init__(self, next_virtual: int):
        self.next_virtual = next_virtual
        self.finals: List[_Skeleton] = []
        self.bonds: List[_Bond] = []

    def split(self, skel: _Skeleton, seps: List[Tuple[int, int]]) -> None:
        for index, sep in enumerate(seps):
            if sep[0] in skel.vertices and sep[1] in skel.vertices:
                comps = _skeleton_components(skel, sep)
                if len(comps) >= 2:
                    break
        else:
            self.finals.append(skel)
            return
        u, v = sep
        remaining = seps[:index] + seps[index + 1:]
        real = next((eid for a, b, eid, _ in skel.edges if {a, b} == {u, v}), None)
        bond = _Bond(u, v, real, [])
        pieces = []
        for comp in comps:
            vid = self.next_virtual
            self.next_virtual += 1
            bond.virtual_ids.append(vid)
            edges = [e for e in skel.edges if e[0] in comp or e[1] in comp]
            edges.append((u, v, None, vid))
            pieces.append(_Skeleton(comp | {u, v}, edges))
        self.bonds.append(bond)
        for piece in pieces:
            self.split(piece, remaining)


def _classify(torso: Torso) -> TorsoKind:
    tg = torso.as_graph().graph
    if tg.n == 2 and tg.m == 1 and torso.edges[0][2] is not None:
        return TorsoKind.SINGLE_REAL_EDGE
    if tg.n >= 3 and tg.is_connected() and all(tg.degree(v) == 2 for v in tg.vertices()):
        return TorsoKind.CYCLE
    if is_three_connected(tg):
        return TorsoKind.THREE_CONNECTED
    raise DecompositionError(f"torso on {torso.vertices} is neither 3-connected, a cycle nor a real edge")


def _torso_of(skel: _Skeleton) -> Torso:
    edges = sorted((min(u, v), max(u, v), real) for u, v, real, _ in skel.edges)
    return Torso(tuple(sorted(skel.vertices)), tuple(edges))


def _bfs_order(n: int, links: List[Tuple[int, int]]) -> Tuple[int, ...]:
    tree = nx.Graph()
    tree.add_nodes_from(range(n))
    tree.add_edges_from(links)
    return (0,) + tuple(v for _, v in nx.bfs_edges(tree, 0, sort_neighbors=sorted))


def build_tutte(g: Graph) -> TutteDecomposition:
    """Tutte decomposition: block tree first, then totally nested 2-separators per block."""
    if g.n < 2:
        raise DecompositionError("a Tutte decomposition needs at least two vertices")
    if not g.is_connected():
        raise DecompositionError("a Tutte decomposition needs a connected graph")

    torsos: List[Torso] = []
    links: List[Tuple[int, int]] = []
    block_bags: List[List[int]] = []
    next_virtual = 0
    for block in biconnected_blocks(g):
        vertices = sorted({v for e in block for v in g.edge(e)})
        if len(block) == 1:
            u, v = g.edge(block[0])
            block_bags.append([len(torsos)])
            torsos.append(Torso((u, v), ((u, v, block[0]),)))
            continue

        splitter = _BlockSplitter(next_virtual)
        root = _Skeleton(set(vertices), [(*g.edge(e), e, None) for e in block])
        splitter.split(root, _totally_nested_pairs(g, vertices))
        next_virtual = splitter.next_virtual

        base = len(torsos)
        owner: Dict[int, int] = {}
        for offset, skel in enumerate(splitter.finals):
            torsos.append(_torso_of(skel))
            for _, _, _, vid in skel.edges:
                if vid is not None:
                    owner[vid] = base + offset
        for bond in splitter.bonds:
            holders = [owner[vid] for vid in bond.virtual_ids]
            if bond.real is not None:
                centre = len(torsos)
                torsos.append(Torso((min(bond.u, bond.v), max(bond.u, bond.v)),
                                    ((min(bond.u, bond.v), max(bond.u, bond.v), bond.real),)))
                links.extend((centre, h) for h in holders)
            else:
                links.extend((holders[0], h) for h in holders[1:])
        block_bags.append(list(range(base, len(torsos))))

    # Join blocks at cut vertices through the lowest bag holding the vertex
    for cut in sorted(articulation_points(g)):
        anchors = [min(i for i in bags if cut in torsos[i].vertices)
                   for bags in block_bags if any(cut in torsos[i].vertices for i in bags)]
        links.extend((anchors[0], a) for a in anchors[1:])

    kinds = tuple(_classify(t) for t in torsos)
    links = sorted((min(a, b), max(a, b)) for a, b in links)
    d = TutteDecomposition(
        bags=tuple(frozenset(t.vertices) for t in torsos),
        links=tuple(links),
        torsos=tuple(torsos),
        kinds=kinds,
        order=_bfs_order(len(torsos), links),
    )
    logger.debug(f"Tutte decomposition of {g!r}: {len(d)} bags, {len(links)} links")
    return d


# Verification


def _fail(clause: TutteClause, detail: str) -> Verdict:
    return Verdict(passed=False, clause=clause.value, detail=detail)


def _is_tree(n: int, links: Tuple[Tuple[int, int], ...]) -> bool:
    if n == 0 or len(links) != n - 1:
        return False
    if any(not (0 <= a < n and 0 <= b < n) or a == b for a, b in links):
        return False
    tree = nx.Graph()
    tree.add_nodes_from(range(n))
    tree.add_edges_from(links)
    return nx.is_tree(tree)


def _torso_shape_ok(kind: TorsoKind, torso: Torso) -> bool:
    tg = torso.as_graph().graph
    if kind is TorsoKind.SINGLE_REAL_EDGE:
        return tg.n == 2 and tg.m == 1 and torso.edges[0][2] is not None
    if kind is TorsoKind.CYCLE:
        return tg.n >= 3 and tg.is_connected() and all(tg.degree(v) == 2 for v in tg.vertices())
    return bool(is_three_connected(tg))


def verify_tutte(g: Graph, d: TutteDecomposition) -> Verdict:
    """Check every Tutte-decomposition condition literally, first violation wins."""
    n_bags = len(d.bags)
    if len(d.torsos) != n_bags or len(d.kinds) != n_bags:
        return _fail(TutteClause.TREE, "bags, torsos and kinds differ in number")
    if not _is_tree(n_bags, d.links):
        return _fail(TutteClause.TREE, "links do not form a tree on the bags")

    for eid, (u, v) in enumerate(g.edges):
        if not any(u in bag and v in bag for bag in d.bags):
            return _fail(TutteClause.EDGE_COVERAGE, f"edge {eid} ({u}, {v}) lies in no bag")

    for v in g.vertices():
        holders = {i for i, bag in enumerate(d.bags) if v in bag}
        if not holders:
            return _fail(TutteClause.VERTEX_SUBTREE, f"vertex {v} lies in no bag")
        if not nx.is_connected(d.link_graph().subgraph(holders)):
            return _fail(TutteClause.VERTEX_SUBTREE, f"bags containing vertex {v} are not connected")

    for a, b in d.links:
        if len(d.adhesion(a, b)) > 2:
            return _fail(TutteClause.ADHESION,
                         f"link {a}-{b} has adhesion set {sorted(d.adhesion(a, b))}")

    owners: Dict[int, int] = {}
    for i, (bag, torso) in enumerate(zip(d.bags, d.torsos)):
        if set(torso.vertices) != set(bag):
            return _fail(TutteClause.TORSO_DEFINITION, f"torso {i} vertices differ from its bag")
        adhesion_pairs = {tuple(sorted(d.adhesion(i, nb))) for nb in d.neighbors(i)
                          if len(d.adhesion(i, nb)) == 2}
        expected = {(u, v) for u, v in g.edges if u in bag and v in bag} | adhesion_pairs
        if torso.pairs() != expected or len(torso.edges) != len(expected):
            return _fail(TutteClause.TORSO_DEFINITION,
                         f"torso {i} is not the bag's induced graph plus its adhesion completions")
        for u, v, eid in torso.edges:
            if eid is None:
                if (u, v) not in adhesion_pairs:
                    return _fail(TutteClause.TORSO_DEFINITION,
                                 f"virtual edge ({u}, {v}) of torso {i} is not an adhesion pair")
                continue
            if not 0 <= eid < g.m or g.edge(eid) != (u, v):
                return _fail(TutteClause.TORSO_DEFINITION, f"torso {i} tags ({u}, {v}) with edge {eid}")
            if eid in owners:
                return _fail(TutteClause.TORSO_DEFINITION,
                             f"edge {eid} is real in torsos {owners[eid]} and {i}")
            owners[eid] = i
    missing = set(g.edge_ids()) - set(owners)
    if missing:
        return _fail(TutteClause.TORSO_DEFINITION, f"edge {min(missing)} is real in no torso")

    for i, (kind, torso) in enumerate(zip(d.kinds, d.torsos)):
        if not _torso_shape_ok(kind, torso):
            return _fail(TutteClause.TORSO_CLASSIFICATION, f"torso {i} is not a {kind.value}")

    for a, b in d.links:
        adhesion = d.adhesion(a, b)
        if len(adhesion) != 2:
            continue
        u, v = sorted(adhesion)
        if g.has_edge(u, v):
            continue
        for near, far in ((a, b), (b, a)):
            if g.shortest_path(u, v, allowed=d.side(near, far)) is None:
                return _fail(TutteClause.VIRTUAL_PATHS,
                             f"no {u}-{v} path on the side of bag {near} across link {a}-{b}")

    if sorted(d.order) != list(range(n_bags)):
        return _fail(TutteClause.ENUMERATION_ORDER, "order is not a permutation of the bags")
    placed = {d.order[0]}
    for bag in d.order[1:]:
        if not any(nb in placed for nb in d.neighbors(bag)):
            return _fail(TutteClause.ENUMERATION_ORDER, f"bag {bag} does not extend the enumerated subtree")
        placed.add(bag)
    return Verdict(passed=True)


# Text and DOT formats


def _csv(values) -> str:
    return ",".join(str(v) for v in sorted(values))


def format_decomposition(d: TutteDecomposition) -> str:
    lines = [f"bag {i} kind={k.value} vertices={_csv(b)}" for i, (b, k) in enumerate(zip(d.bags, d.kinds))]
    lines.extend(f"link {a} {b} adhesion={_csv(d.adhesion(a, b))}" for a, b in d.links)
    lines.extend(f"virtual {i} {u} {v}" for i, t in enumerate(d.torsos) for u, v in t.virtual_pairs())
    lines.append(f"order {','.join(str(i) for i in d.order)}")
    return "\n".join(lines) + "\n"


def parse_decomposition(text: str, g: Graph) -> TutteDecomposition:
    """Rebuild a decomposition from its dump; torso real edges are the bag's
    induced host edges not listed as virtual."""
    bags: Dict[int, FrozenSet[int]] = {}
    kinds: Dict[int, TorsoKind] = {}
    links: List[Tuple[int, int]] = []
    virtual: Dict[int, Set[Tuple[int, int]]] = {}
    order: Tuple[int, ...] = ()

    def field_value(token: str, name: str, number: int) -> str:
        key, sep, value = token.partition("=")
        if key != name or not sep:
            raise FormatError(f"expected '{name}=...', got {token!r}", number)
        return value

    def int_csv(text: str, number: int) -> List[int]:
        try:
            return [int(x) for x in text.split(",")] if text else []
        except ValueError:
            raise FormatError(f"expected comma-separated integers, got {text!r}", number) from None

    for number, line in content_lines(text):
        parts = line.split()
        try:
            if parts[0] == "bag" and len(parts) == 4:
                i = int(parts[1])
                kinds[i] = TorsoKind(field_value(parts[2], "kind", number))
                bags[i] = frozenset(int_csv(field_value(parts[3], "vertices", number), number))
            elif parts[0] == "link" and len(parts) == 4:
                links.append((int(parts[1]), int(parts[2])))
            elif parts[0] == "virtual" and len(parts) == 4:
                u, v = sorted((int(parts[2]), int(parts[3])))
                virtual.setdefault(int(parts[1]), set()).add((u, v))
            elif parts[0] == "order" and len(parts) == 2:
                order = tuple(int_csv(parts[1], number))
            else:
                raise FormatError(f"unrecognised line {line!r}", number)
        except ValueError as e:
            raise FormatError(f"malformed line {line!r}: {e}", number) from None

    if sorted(bags) != list(range(len(bags))):
        raise FormatError("bag ids must be 0..k-1")
    torsos = []
    for i in range(len(bags)):
        pairs = virtual.get(i, set())
        edges: List[TorsoEdge] = [(u, v, None) for u, v in pairs]
        edges.extend((u, v, eid) for eid, (u, v) in enumerate(g.edges)
                     if u in bags[i] and v in bags[i] and (u, v) not in pairs)
        torsos.append(Torso(tuple(sorted(bags[i])), tuple(sorted(edges, key=lambda e: (e[0], e[1])))))
    return TutteDecomposition(
        bags=tuple(bags[i] for i in range(len(bags))),
        links=tuple(sorted((min(a, b), max(a, b)) for a, b in links)),
        torsos=tuple(torsos),
        kinds=tuple(kinds[i] for i in range(len(bags))),
        order=order,
    )


def to_dot(d: TutteDecomposition) -> str:
    lines = ["graph tutte {", "  node [shape=box];"]
    for i, (bag, kind) in enumerate(zip(d.bags, d.kinds)):
        lines.append(f'  b{i} [label="{i}: {kind.value}\\n{{{_csv(bag)}}}"];')
    for a, b in d.links:
        lines.append(f'  b{a} -- b{b} [label="{_csv(d.adhesion(a, b))}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
