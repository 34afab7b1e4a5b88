import logging
from collections import Counter
from typing import List

from src.errors import PipelineError
from src.graphs.connectivity import is_three_connected
from src.graphs.core import Graph
from src.schemas import PipelineConfig, PipelineMetrics, QuarterMetrics
from src.separation.cycles import build_sub_k3_system
from src.separation.family import CertMember, EdgeMember, Member, SeparatingFamily
from src.subdivision.cert import cycle_vertices
from src.subdivision.search import find_balanced_clique_subdivision, quarter_split
from src.tutte.decomposition import TorsoKind, build_tutte
from src.tutte.realize import realize_members
from src.pipeline.gadget import DerivedGadget, derive_six

logger = logging.getLogger(__name__)


def _single_edges(g: Graph) -> List[Member]:
    return [EdgeMember(e) for e in g.edge_ids()]


def _census(gadgets: List[DerivedGadget]) -> dict:
    labels = Counter(label for gadget in gadgets for label in gadget.balance_labels())
    return dict(sorted(labels.items()))


def _fallback(g: Graph, h: Graph, reason: str) -> SeparatingFamily:
    logger.info(f"Falling back to all {g.m} single edges: {reason}")
    metrics = PipelineMetrics(n=g.n, m=g.m, pattern_vertices=h.n, pattern_edges=h.m, fallback=True,
                              family_size=g.m, size_per_n=g.m / g.n)
    return SeparatingFamily(g, tuple(_single_edges(g)), {"metrics": metrics, "fallback_reason": reason})


def separate_three_connected(g: Graph, h: Graph, cfg: PipelineConfig | None = None) -> SeparatingFamily:
    """Separating sub(H)-system of a 3-connected graph.

    Needs an l-balanced K_{4t+8}-subdivision (t = |V(H)|); without one every
    edge becomes its own member.
    """
    cfg = cfg or PipelineConfig()
    if h.m == 0:
        raise PipelineError("pattern must have at least one edge")
    verdict = is_three_connected(g)
    if not verdict:
        raise PipelineError(f"host is not 3-connected ({verdict.detail}, separator {verdict.separator})")

    t = h.n
    size = 4 * t + 8
    if g.n < size:
        return _fallback(g, h, f"{g.n} vertices cannot hold a K_{size}-subdivision")
    if g.average_degree() < cfg.c_balance * (size - 1):
        return _fallback(g, h, f"average degree {g.average_degree():.2f} below {cfg.c_balance} * {size - 1}")

    outcome = find_balanced_clique_subdivision(g, size, cfg.budget)
    if not outcome:
        return _fallback(g, h, f"balanced K_{size}-subdivision search {outcome.status.value}")

    members: List[Member] = []
    quarters: List[QuarterMetrics] = []
    gadgets: List[DerivedGadget] = []
    for r, kr in enumerate(quarter_split(outcome.cert, t), start=1):
        k_vertices = kr.vertex_set()
        ground = [e for e, (a, b) in enumerate(g.edges) if a not in k_vertices and b not in k_vertices]
        j_graph, to_host = g.edge_subgraph(ground)
        system = build_sub_k3_system(j_graph, j_graph.edge_ids())
        j_vertices = len({v for e in ground for v in g.edge(e)})
        cycles = 0
        for member in system:
            if isinstance(member, EdgeMember):
                members.append(EdgeMember(to_host[member.edge]))
                continue
            cycles += 1
            gadget = derive_six(g, cycle_vertices(member.cert), kr, h, cfg)
            gadgets.append(gadget)
            members.extend(CertMember(c) for c in gadget.certs)
        quarters.append(QuarterMetrics(r=r, j_vertices=j_vertices, ground=len(ground),
                                       cycle_system=len(system), cycles=cycles,
                                       within_41=len(system) <= 41 * j_vertices))

    total = sum(q.cycle_system for q in quarters)
    metrics = PipelineMetrics(
        n=g.n, m=g.m, pattern_vertices=h.n, pattern_edges=h.m, fallback=False, ell=outcome.ell,
        quarters=quarters, cycle_system_total=total, family_size=len(members),
        size_per_n=len(members) / g.n, balance_census=_census(gadgets),
    )
    logger.info(f"Separated {g!r} with {len(members)} members (l={outcome.ell}, "
                f"sum |C_r| = {total}, bound {metrics.six_bound})")
    return SeparatingFamily(g, tuple(members), {"metrics": metrics, "gadgets": gadgets})


def separate_graph(g: Graph, h: Graph, cfg: PipelineConfig | None = None) -> SeparatingFamily:
    """Separating sub(H)-system of a connected graph, one Tutte component at a time."""
    cfg = cfg or PipelineConfig()
    if g.m == 0:
        raise PipelineError("host has no edges")
    if not g.is_connected():
        raise PipelineError("host must be connected; separate its components independently")
    if h.m == 0:
        raise PipelineError("pattern must have at least one edge")

    d = build_tutte(g)
    members: List[Member] = []
    bag_metrics = []
    torso_metrics: List[PipelineMetrics] = []
    for bag in d.order:
        tg = d.torsos[bag].as_graph()
        if d.kinds[bag] is TorsoKind.THREE_CONNECTED:
            virtual = separate_three_connected(tg.graph, h, cfg)
        else:
            virtual = SeparatingFamily(tg.graph, tuple(_single_edges(tg.graph)))
        realized = realize_members(g, d, bag, virtual)
        members.extend(realized.members)
        metrics = virtual.metadata.get("metrics")
        if metrics is not None:
            torso_metrics.append(metrics)
        bag_metrics.append({
            "bag": bag,
            "kind": d.kinds[bag].value,
            "vertices": len(d.bags[bag]),
            "virtual_members": len(virtual),
            "members": len(realized),
            "fallback": metrics.fallback if metrics else None,
        })

    k, component_vertices = d.accounting()
    logger.info(f"Separated {g!r} through {len(d)} Tutte components: {len(members)} members, "
                f"sum |G_i| = {component_vertices} (3n = {3 * g.n})")
    return SeparatingFamily(g, tuple(members), {
        "components": k,
        "bags": len(d),
        "component_vertices": component_vertices,
        "within_3n": component_vertices <= 3 * g.n,
        "bag_metrics": bag_metrics,
        "torso_metrics": torso_metrics,
        "decomposition": d,
    })
