import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from src.errors import CertificateError, PipelineError
from src.graphs.connectivity import disjoint_paths
from src.graphs.core import Graph, Path, join_paths
from src.schemas import PipelineConfig
from src.subdivision.cert import BalanceProfile, SubdivisionCert, balance_profile

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]
PAIRS: Tuple[Pair, ...] = ((0, 1), (0, 2), (1, 2))


def fixed_edge(h: Graph) -> Tuple[int, int]:
    """The pattern edge f left out of H^- (lexicographically smallest)."""
    if h.m == 0:
        raise PipelineError("pattern must have at least one edge")
    return min(h.edges)


def embed_h_minus_f(kr: SubdivisionCert, h: Graph, f: Tuple[int, int], u: int, v: int,
                    excluded: FrozenSet[int] = frozenset()) -> SubdivisionCert:
    """Subdivision of h - f inside ``kr`` with the ends of f placed on u and v.

    The remaining pattern vertices, in ascending order, take the branch
    vertices of ``kr`` in pattern order, skipping u, v and ``excluded``.
    Edges of h - f use the ``kr`` branch path between their images.
    """
    index = {x: i for i, x in enumerate(kr.branch_vertices)}
    if u not in index or v not in index or u == v:
        raise CertificateError(f"{u} and {v} must be distinct branch vertices")
    if u in excluded or v in excluded:
        raise CertificateError("the images of f must not be excluded")
    free = [x for x in kr.branch_vertices if x not in excluded and x not in (u, v)]
    others = [x for x in h.vertices() if x not in f]
    if len(others) > len(free):
        raise CertificateError(f"{len(kr.branch_vertices)} branch vertices minus {len(excluded)} "
                               f"excluded cannot hold {h.n} pattern vertices")
    lo, hi = sorted(f)
    image = {lo: u, hi: v}
    image.update(zip(others, free))

    h_minus = h.without_edge(h.edge_id(lo, hi))
    paths = []
    for a, b in h_minus.edges:
        path = kr.path_between(index[image[a]], index[image[b]])
        paths.append(path)
    return SubdivisionCert(h_minus, tuple(image[x] for x in h.vertices()), tuple(paths))


@dataclass(frozen=True)
class DerivedGadget:
    cycle: Tuple[int, ...]
    anchors: Tuple[int, int, int]
    connectors: Tuple[Path, Path, Path]
    landings: Tuple[int, int, int]
    # kr branch path through each landing vertex, None when it is a branch vertex
    landing_paths: Tuple[Optional[Path], ...]
    ends: Dict[Pair, Pair]
    excluded: Dict[Pair, FrozenSet[int]]
    arcs: Dict[Pair, Path]
    prime_arcs: Dict[Pair, Path]
    # (0,1), (0,1)', (0,2), (0,2)', (1,2), (1,2)'
    certs: Tuple[SubdivisionCert, ...]
    balances: Tuple[BalanceProfile, ...]

    def balance_labels(self) -> Tuple[str, ...]:
        return tuple(b.label for b in self.balances)


def _landing_path(kr: SubdivisionCert, y: int) -> Optional[Path]:
    if y in kr.branch_vertices:
        return None
    for path in kr.branch_paths:
        if y in path.interior:
            return path
    raise PipelineError(f"landing vertex {y} is not on the K-subdivision")


def _segment(path: Path, end: int, y: int) -> Path:
    """Sub-path of ``path`` from its end vertex ``end`` to ``y``."""
    oriented = path if path.start == end else path.reversed()
    return Path(oriented.vertices[:oriented.vertices.index(y) + 1])


def _choose_ends(kr: SubdivisionCert, ys: Sequence[int], qs: Sequence[Optional[Path]]
                 ) -> Tuple[Pair, FrozenSet[int], Path, Path]:
    """Branch-vertex ends (u, v) for landings ys[0], ys[1], the two Q-segments
    ending at the landings, and the far ends that must stay out of H^-."""
    (yi, yj), (qi, qj) = ys, qs
    if qi is not None and qj is not None and qi == qj:
        # Both land on one branch path: u is the end on y_i's side
        order = qi.vertices
        u, v = (qi.start, qi.end) if order.index(yi) < order.index(yj) else (qi.end, qi.start)
        return (u, v), frozenset(), _segment(qi, u, yi), _segment(qi, v, yj).reversed()

    ends_i = [yi] if qi is None else [qi.start, qi.end]
    ends_j = [yj] if qj is None else [qj.start, qj.end]
    shared = set(ends_i) & set(ends_j)
    best = None
    for u in ends_i:
        for v in ends_j:
            if u == v:
                continue
            seg_i = Path((yi,)) if qi is None else _segment(qi, u, yi)
            seg_j = Path((yj,)) if qj is None else _segment(qj, v, yj)
            key = ((u in shared) + (v in shared), seg_i.length + seg_j.length, u, v)
            if best is None or key < best[0]:
                best = (key, u, v, seg_i, seg_j)
    if best is None:
        raise PipelineError(f"no distinct branch-vertex ends for landings {yi}, {yj}")
    _, u, v, seg_i, seg_j = best
    far = set()
    if qi is not None:
        far |= {qi.start, qi.end}
    if qj is not None:
        far |= {qj.start, qj.end}
    return (u, v), frozenset(far - {u, v}), seg_i, seg_j.reversed()


def _attach(h: Graph, f: Tuple[int, int], h_minus: SubdivisionCert, widetilde: Path) -> SubdivisionCert:
    lo, hi = sorted(f)
    minus_paths = {edge: path for edge, path in zip(h_minus.pattern.edges, h_minus.branch_paths)}
    paths = [widetilde if edge == (lo, hi) else minus_paths[edge] for edge in h.edges]
    return SubdivisionCert(h, h_minus.branch_vertices, tuple(paths))


def derive_six(g: Graph, cycle: Sequence[int], kr: SubdivisionCert, h: Graph,
               cfg: PipelineConfig | None = None) -> DerivedGadget:
    """Six H-subdivisions through a cycle disjoint from ``kr``.

    Three disjoint connectors join the cycle to ``kr``; for each pair of
    connectors the cycle arc between them (and the complementary two-arc route)
    is closed through ``kr`` into the branch path of f, while h - f is embedded
    in ``kr`` away from the branch paths that route used.
    """
    cfg = cfg or PipelineConfig()
    cycle = tuple(cycle)
    k_vertices = kr.vertex_set()
    if len(cycle) < 3 or not k_vertices.isdisjoint(cycle):
        raise PipelineError("cycle must have at least 3 vertices and avoid the K-subdivision")
    f = fixed_edge(h)

    routed = disjoint_paths(g, cycle, k_vertices, 3)
    if routed is None:
        raise PipelineError("Menger routing between cycle and K-subdivision failed")
    position = {x: i for i, x in enumerate(cycle)}
    routed = sorted(routed, key=lambda p: position[p.start])
    anchors = tuple(p.start for p in routed)
    landings = tuple(p.end for p in routed)
    q_paths = tuple(_landing_path(kr, y) for y in landings)

    pos = [position[x] for x in anchors]
    closed = cycle + cycle
    forward = {
        (0, 1): Path(cycle[pos[0]:pos[1] + 1]),
        (1, 2): Path(cycle[pos[1]:pos[2] + 1]),
        (2, 0): Path(closed[pos[2]:len(cycle) + pos[0] + 1]),
    }

    def arc(i: int, j: int) -> Path:
        return forward[(i, j)] if (i, j) in forward else forward[(j, i)].reversed()

    arcs: Dict[Pair, Path] = {}
    prime_arcs: Dict[Pair, Path] = {}
    ends: Dict[Pair, Pair] = {}
    excluded: Dict[Pair, FrozenSet[int]] = {}
    certs: List[SubdivisionCert] = []
    for i, j in PAIRS:
        k = 3 - i - j
        arcs[(i, j)] = arc(i, j)
        prime_arcs[(i, j)] = arc(i, k).then(arc(k, j))
        (u, v), far, seg_i, seg_j = _choose_ends(kr, (landings[i], landings[j]), (q_paths[i], q_paths[j]))
        ends[(i, j)], excluded[(i, j)] = (u, v), far
        h_minus = embed_h_minus_f(kr, h, f, u, v, far)
        lead = seg_i.then(routed[i].reversed())
        tail = routed[j].then(seg_j)
        for route in (arcs[(i, j)], prime_arcs[(i, j)]):
            certs.append(_attach(h, f, h_minus, join_paths([lead, route, tail])))
    logger.debug(f"Derived six subdivisions through a {len(cycle)}-cycle, anchors {anchors}, landings {landings}")
    return DerivedGadget(
        cycle=cycle,
        anchors=anchors,
        connectors=tuple(routed),
        landings=landings,
        landing_paths=q_paths,
        ends=ends,
        excluded=excluded,
        arcs=arcs,
        prime_arcs=prime_arcs,
        certs=tuple(certs),
        balances=tuple(balance_profile(c) for c in certs),
    )
