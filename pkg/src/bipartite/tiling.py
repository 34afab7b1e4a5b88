import logging
from math import ceil
from typing import List

from src.bipartite.cover import extract_biclique_cover
from src.bipartite.knn import knn_bicliques
from src.errors import GraphError
from src.graphs.core import Graph
from src.separation.family import BicliqueMember, Member, SeparatingFamily

logger = logging.getLogger(__name__)


def _wrapped_blocks(n: int, width: int) -> List[tuple]:
    return [tuple((start + i) % n for i in range(width)) for start in range(0, n, width)]


def tile_biclique(n: int, t: int, s: int) -> List[BicliqueMember]:
    """Cover K_{n,n} (sides 0..n-1 and n..2n-1) with ceil(n/t) * ceil(n/s) copies of K_{t,s}.

    Rows go in blocks of t and columns in blocks of s; a short last block
    wraps around to the start of its side so every placement is a full K_{t,s}.
    """
    if not 1 <= t <= s:
        raise GraphError(f"need 1 <= t <= s, got t={t}, s={s}")
    if s > n:
        raise GraphError(f"K_{{{t},{s}}} does not fit in K_{{{n},{n}}}")
    rows = _wrapped_blocks(n, t)
    cols = [tuple(n + c for c in block) for block in _wrapped_blocks(n, s)]
    placements = [BicliqueMember(r, c) for r in rows for c in cols]
    logger.info(f"Tiled K_{{{n},{n}}} with {len(placements)} copies of K_{{{t},{s}}} "
                f"(n^2/s = {n * n / s:.1f}, ceil bound {ceil(n / t) * ceil(n / s)})")
    return placements


def build_biclique_separating_system(g: Graph, s_min: int = 2) -> SeparatingFamily:
    """Separating biclique system of g: a bit-indexed system inside every cover
    biclique plus every leftover edge as a K_{1,1}."""
    bicliques, leftovers = extract_biclique_cover(g, s_min)
    members: List[Member] = []
    for b in bicliques:
        inner = knn_bicliques(b.left, b.right)
        members.extend(inner if inner else [b])
    members.extend(leftovers)
    logger.info(f"Biclique system of {g!r}: {len(members)} members from {len(bicliques)} bicliques "
                f"and {len(leftovers)} single edges")
    return SeparatingFamily(g, tuple(members), {"bicliques": len(bicliques), "leftovers": len(leftovers),
                                                "s_min": s_min})
