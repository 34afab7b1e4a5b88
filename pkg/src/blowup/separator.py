import logging
from itertools import combinations, product
from math import log2
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from src.bipartite.constraints import Constraint, build_constraint_family
from src.blowup.blowup import Blowup, build_blowup
from src.blowup.copies import CopyOfH, check_h_separation, enumerate_h_copies
from src.config import settings
from src.graphs.core import Graph
from src.separation.family import EdgeSetMember, SeparatingFamily

logger = logging.getLogger(__name__)

Selection = Tuple[Tuple[int, ...], ...]


def build_supergraph_h_separator(g: Graph, h: Graph, seed: int | None = None,
                                 copies: Optional[Sequence[CopyOfH]] = None) -> SeparatingFamily:
    """H-separating family of explicit edge sets.

    Every copy H1 and every edge e outside it give the constraint
    (E(H1), {e}); a family satisfying them all separates each ordered pair of
    distinct copies through an edge of the second copy missing from the first.
    """
    if copies is None:
        copies = enumerate_h_copies(g, h)
    constraints = [Constraint(c.edges, {e}) for c in copies for e in g.edge_ids() if e not in c.edges]
    if not constraints:
        logger.info(f"{len(copies)} copies of {h!r} in {g!r}: nothing to separate")
        return SeparatingFamily(g, (), {"copies": len(copies), "constraints": 0})

    family = build_constraint_family(g.edge_ids(), constraints, seed)
    members = tuple(EdgeSetMember(tuple(sorted(s))) for s in family.sets if s)
    logger.info(f"Supergraph H-separator of {g!r}: {len(members)} members for {len(copies)} copies, "
                f"N={len(constraints)} constraints (log2 N = {log2(len(constraints)):.2f})")
    return SeparatingFamily(g, members, {
        "copies": len(copies),
        "constraints": len(constraints),
        "draws": family.draws,
        "fallback": family.fallback,
    })


def _class_family(vertices: Tuple[int, ...], t: int, seed: int) -> List[FrozenSet[int]]:
    """Subsets of one class satisfying (S, {w}) for 1 <= |S| <= t, plus the whole class."""
    whole = frozenset(vertices)
    constraints = [
        Constraint(s, {w})
        for k in range(1, min(t, len(vertices) - 1) + 1)
        for s in combinations(vertices, k)
        for w in vertices if w not in s
    ]
    sets = list(build_constraint_family(vertices, constraints, seed).sets) if constraints else []
    out: List[FrozenSet[int]] = []
    for s in sets + [whole]:
        if s and s not in out:
            out.append(s)
    return out


def _family(b: Blowup, selections: Sequence[Selection]) -> Tuple[SeparatingFamily, List[Selection]]:
    members: List[EdgeSetMember] = []
    kept: List[Selection] = []
    seen = set()
    for sel in selections:
        edges = tuple(b.selection_edges(sel))
        if edges and edges not in seen:
            seen.add(edges)
            members.append(EdgeSetMember(edges))
            kept.append(sel)
    return SeparatingFamily(b.host, tuple(members)), kept


def build_blowup_h_separator(h: Graph, n: int, seed: int | None = None) -> SeparatingFamily:
    """H-separating family of induced sub-blowups of the n-balanced blowup of h.

    Each class x gets a family F_x separating subsets of at most |V(h)|
    vertices from single outside vertices. A member picks one set per class
    and takes every blowup edge between the picks. Selections are first indexed
    by pairs (x, S in F_x): S in class x and the whole class everywhere else,
    which is the member of F_y that every other class y shares. Then the full
    product is tried; if neither separates every pair of copies the
    copies themselves become the members.
    """
    seed = settings.seed if seed is None else seed
    b = build_blowup(h, n)
    copies = enumerate_h_copies(b.host, h)
    transversal = [c for c in copies if len({b.class_of(v) for v in c.mapping}) == h.n]
    if len(copies) < 2:
        logger.info(f"{n}-balanced blowup of {h!r} has {len(copies)} copies: empty family")
        return SeparatingFamily(b.host, (), {"blowup": b, "tier": "vacuous", "fallback": False,
                                             "copies": len(copies), "separates_all": True,
                                             "separates_transversal": True, "selections": []})

    per_class = [_class_family(cls, h.n, seed + x) for x, cls in enumerate(b.classes)]
    tiers = {
        "shared-index": [
            tuple(tuple(sorted(s)) if y == x else cls for y, cls in enumerate(b.classes))
            for x, f in enumerate(per_class) for s in f
        ],
        "product": [tuple(tuple(sorted(s)) for s in choice) for choice in product(*per_class)],
    }

    attempts: List[Dict[str, object]] = []
    for tier, selections in tiers.items():
        fam, kept = _family(b, selections)
        separates_all = bool(check_h_separation(b.host, h, fam, copies))
        separates_transversal = bool(check_h_separation(b.host, h, fam, transversal))
        attempts.append({"tier": tier, "size": len(fam), "all": separates_all,
                         "transversal": separates_transversal})
        if separates_all:
            logger.info(f"{n}-balanced blowup of {h!r}: {tier} family of {len(fam)} members separates "
                        f"{len(copies)} copies (log2 n = {log2(n):.2f})")
            return SeparatingFamily(b.host, fam.members, {
                "blowup": b, "tier": tier, "fallback": False, "copies": len(copies),
                "transversal_copies": len(transversal), "separates_all": True,
                "separates_transversal": separates_transversal, "selections": kept,
                "balanced": [len({len(s) for s in sel}) == 1 for sel in kept], "attempts": attempts,
            })
        if separates_transversal:
            logger.info(f"{tier} family separates only the {len(transversal)} transversal copies")

    logger.warning(f"{n}-balanced blowup of {h!r}: no sub-blowup family separates all copies, "
                   f"falling back to the {len(copies)} copies")
    members = tuple(EdgeSetMember(tuple(sorted(c.edges))) for c in copies)
    return SeparatingFamily(b.host, members, {
        "blowup": b, "tier": "all-copies", "fallback": True, "copies": len(copies),
        "transversal_copies": len(transversal), "separates_all": True, "separates_transversal": True,
        "selections": [], "attempts": attempts,
    })
