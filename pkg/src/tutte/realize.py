import logging
from typing import Dict, List, Tuple

from src.errors import GraphError, RealizationError
from src.graphs.core import Graph, Path
from src.separation.family import CertMember, EdgeMember, Member, SeparatingFamily
from src.subdivision.cert import SubdivisionCert
from src.tutte.decomposition import TorsoGraph, TutteDecomposition

logger = logging.getLogger(__name__)


class _Router:
    """Replacement paths for the virtual edges of one bag, cached per pair."""

    def __init__(self, g: Graph, bag: frozenset):
        self.g = g
        self.bag = bag
        self.cache: Dict[Tuple[int, int], Path] = {}

    def route(self, u: int, v: int) -> Path:
        key = (min(u, v), max(u, v))
        if key not in self.cache:
            # Side of the separation {u, v} that does not contain the bag
            far = [c for c in self.g.components(removed=key) if self.bag.isdisjoint(c)]
            allowed = [x for c in far for x in c]
            path = self.g.shortest_path(key[0], key[1], allowed=allowed)
            if path is None:
                raise RealizationError(f"no {key[0]}-{key[1]} path outside the bag")
            self.cache[key] = path
        path = self.cache[key]
        return path if path.start == u else path.reversed()


def _realize_cert(cert: SubdivisionCert, tg: TorsoGraph, router: _Router) -> SubdivisionCert:
    host_of = tg.vertex_map
    paths: List[Path] = []
    for local_path in cert.branch_paths:
        walk = [host_of[local_path.start]]
        for a, b in local_path.pairs():
            try:
                eid = tg.graph.edge_id(a, b)
            except GraphError:
                raise RealizationError(f"torso has no edge ({a}, {b})") from None
            if tg.real[eid] is not None:
                walk.append(host_of[b])
            else:
                walk.extend(router.route(host_of[a], host_of[b]).vertices[1:])
        paths.append(Path(tuple(walk)))
    branch = tuple(host_of[x] for x in cert.branch_vertices)
    return SubdivisionCert(cert.pattern, branch, tuple(paths))


def realize_members(g: Graph, d: TutteDecomposition, bag: int, members: SeparatingFamily) -> SeparatingFamily:
    """Map a family over the torso of ``bag`` to a family over ``g``.

    Real single edges are kept, virtual single edges dropped, and every virtual
    edge of a subdivision is replaced by a shortest path through the side of
    its adhesion pair away from the bag.
    """
    tg = d.torsos[bag].as_graph()
    if members.host != tg.graph:
        raise RealizationError(f"family is not over the torso of bag {bag}")
    router = _Router(g, d.bags[bag])
    realized: List[Member] = []
    dropped = 0
    for member in members:
        if isinstance(member, EdgeMember):
            if not 0 <= member.edge < tg.graph.m:
                raise RealizationError(f"torso of bag {bag} has no edge {member.edge}")
            real = tg.real[member.edge]
            if real is None:
                dropped += 1
            else:
                realized.append(EdgeMember(real))
        elif isinstance(member, CertMember):
            realized.append(CertMember(_realize_cert(member.cert, tg, router)))
        else:
            raise RealizationError(f"cannot realize a {type(member).__name__} through a torso")
    logger.debug(f"Bag {bag}: realized {len(realized)} members, dropped {dropped} virtual edges, "
                 f"routed {len(router.cache)} virtual pairs")
    return SeparatingFamily(g, tuple(realized), dict(members.metadata))
