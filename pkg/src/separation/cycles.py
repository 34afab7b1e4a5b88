import logging
from typing import Dict, FrozenSet, Iterable, List, Tuple

import networkx as nx
import numpy as np

from src.graphs.core import Graph
from src.separation.family import CertMember, EdgeMember, Member, SeparatingFamily
from src.subdivision.cert import cert_from_cycle

logger = logging.getLogger(__name__)

Cycle = Tuple[int, ...]


def _canonical(cycle: Iterable[int]) -> Cycle:
    """Rotate to start at the smallest vertex, direction toward the smaller neighbour."""
    c = list(cycle)
    i = c.index(min(c))
    c = c[i:] + c[:i]
    if c[-1] < c[1]:
        c = [c[0]] + c[1:][::-1]
    return tuple(c)


def _cycle_edges(g: Graph, cycle: Cycle) -> FrozenSet[int]:
    return frozenset(g.edge_id(u, v) for u, v in zip(cycle, cycle[1:] + cycle[:1]))


def candidate_cycles(g: Graph, ground: Iterable[int]) -> Dict[FrozenSet[int], Cycle]:
    """Cycle-basis cycles plus the shortest cycle through each ground edge, keyed by edge set."""
    found: Dict[FrozenSet[int], Cycle] = {}
    for basis_cycle in nx.cycle_basis(g.to_networkx()):
        cycle = _canonical(basis_cycle)
        found.setdefault(_cycle_edges(g, cycle), cycle)
    for e in sorted(set(ground)):
        u, v = g.edge(e)
        detour = g.shortest_path(u, v, skip_edge=e)
        if detour is not None:
            cycle = _canonical(detour.vertices)
            found.setdefault(_cycle_edges(g, cycle), cycle)
    return found


def _drop_redundant_cycles(rows: np.ndarray, n_cycles: int) -> List[int]:
    """Indices of the first ``n_cycles`` rows still needed once later rows resolve their pairs and cover their edges."""
    q = rows.shape[1]
    off = ~np.eye(q, dtype=bool)
    counts = rows.T @ (1.0 - rows)
    cover = rows.sum(axis=0)
    keep = list(range(n_cycles))
    for r in reversed(range(n_cycles)):
        own = np.outer(rows[r], 1.0 - rows[r])
        if ((counts - own)[off] > 0).all() and (cover - rows[r] > 0).all():
            counts -= own
            cover -= rows[r]
            keep.remove(r)
    return keep


def build_sub_k3_system(g: Graph, ground: Iterable[int]) -> SeparatingFamily:
    """Cycles and single edges strongly separating ``ground``, every ground edge covered.

    Cycles are picked greedily by the number of still-unresolved ordered pairs
    they resolve, while that beats the best single edge; single edges then
    resolve what is left. Cycles made redundant by those edges are dropped,
    and the family never has more members than ground edges.
    """
    ids = sorted(set(ground))
    q = len(ids)
    if q == 0:
        return SeparatingFamily(g, (), {"cycles": 0, "edges": 0})
    position = {e: i for i, e in enumerate(ids)}

    candidates = []
    for edges, cycle in candidate_cycles(g, ids).items():
        hit = [position[e] for e in edges if e in position]
        if hit and len(hit) < q:
            candidates.append((len(cycle), tuple(sorted(edges)), cycle, hit))
    candidates.sort(key=lambda c: (c[0], c[1]))

    incidence = np.zeros((len(candidates), q), dtype=np.float32)
    for row, (_, _, _, hit) in enumerate(candidates):
        incidence[row, hit] = 1.0
    unresolved = ~np.eye(q, dtype=bool)
    alive = np.ones(len(candidates), dtype=bool)

    picked: List[int] = []
    while alive.any():
        u = unresolved.astype(np.float32)
        scores = ((incidence @ u) * (1.0 - incidence)).sum(axis=1)
        scores[~alive] = -1.0
        best = int(np.argmax(scores))  # first maximum is the smallest cycle by sort order
        best_edge = float(unresolved.sum(axis=1).max())
        if scores[best] <= 0 or scores[best] < best_edge:
            break
        alive[best] = False
        inside = incidence[best].astype(bool)
        unresolved[np.ix_(inside, ~inside)] = False
        picked.append(best)

    covered = np.zeros(q, dtype=bool)
    for row in picked:
        covered[candidates[row][3]] = True
    singles = [i for i in range(q) if unresolved[i].any() or not covered[i]]
    rows = np.vstack([incidence[picked], np.eye(q, dtype=np.float32)[singles]])
    keep = _drop_redundant_cycles(rows, len(picked))
    members: List[Member] = [CertMember(cert_from_cycle(candidates[picked[r]][2])) for r in keep]
    cycles = len(members)
    members.extend(EdgeMember(ids[i]) for i in singles)
    if len(members) > q:
        logger.debug(f"Cycle greedy gave {len(members)} members for {q} edges, using single edges")
        members, cycles = [EdgeMember(e) for e in ids], 0
    logger.info(f"sub(K_3)-system: {len(members)} members ({cycles} cycles) for {q} ground edges, "
                f"size/n = {len(members) / max(g.n, 1):.3f}")
    return SeparatingFamily(g, tuple(members), {"cycles": cycles, "edges": len(members) - cycles})
