import logging
from typing import List, Optional, Tuple

from src.errors import GraphError
from src.graphs.core import Graph
from src.separation.family import BicliqueMember

logger = logging.getLogger(__name__)


def _members(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _grow(adj: List[int], seed: int, s_min: int) -> Optional[Tuple[List[int], List[int]]]:
    """Balanced biclique grown from ``seed``: the right side is the common
    neighbourhood of the left side, and the left side takes the vertex keeping
    the most of it while the balanced size min(|left|, |right|) grows."""
    left = 1 << seed
    right = adj[seed]
    size_left = 1
    while True:
        best, best_count = None, -1
        for w in range(len(adj)):
            if left >> w & 1:
                continue
            count = (right & adj[w]).bit_count()
            if count > best_count:
                best, best_count = w, count
        if best is None or min(size_left + 1, best_count) <= min(size_left, right.bit_count()):
            break
        left |= 1 << best
        right &= adj[best]
        size_left += 1
    s = min(size_left, right.bit_count())
    if s < s_min:
        return None
    return _members(left)[:s], _members(right)[:s]


def extract_biclique_cover(g: Graph, s_min: int) -> Tuple[List[BicliqueMember], List[BicliqueMember]]:
    """Greedy cover of E(g) by edge-disjoint balanced bicliques with sides >= s_min.

    Returns the bicliques and the leftover edges as K_{1,1} members; together
    they cover every edge exactly once.
    """
    if s_min < 1:
        raise GraphError(f"s_min must be at least 1, got {s_min}")
    adj = [0] * g.n
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    bicliques: List[BicliqueMember] = []
    while True:
        found = None
        for seed in sorted(g.vertices(), key=lambda v: (-adj[v].bit_count(), v)):
            if adj[seed].bit_count() < s_min:
                break
            found = _grow(adj, seed, s_min)
            if found:
                break
        if not found:
            break
        left, right = found
        left_mask = sum(1 << v for v in left)
        right_mask = sum(1 << v for v in right)
        for a in left:
            adj[a] &= ~right_mask
        for b in right:
            adj[b] &= ~left_mask
        bicliques.append(BicliqueMember(tuple(left), tuple(right)))
        logger.debug(f"Cover biclique K_{{{len(left)},{len(right)}}} seeded at {left[0]}")

    leftovers = [BicliqueMember((u,), (v,)) for u in g.vertices() for v in _members(adj[u]) if u < v]
    covered = sum(len(b.left) * len(b.right) for b in bicliques)
    if g.m:
        logger.info(f"Biclique cover of {g!r}: {len(bicliques)} bicliques with s >= {s_min} cover {covered} "
                    f"edges, {len(leftovers)} leftover ({len(leftovers) / g.m:.1%})")
    return bicliques, leftovers
