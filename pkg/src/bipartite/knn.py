import logging
from typing import List, Sequence

from src.graphs.generators import complete_bipartite
from src.separation.family import BicliqueMember, SeparatingFamily

logger = logging.getLogger(__name__)


def _bits(size: int) -> int:
    return (size - 1).bit_length()


def knn_bicliques(left: Sequence[int], right: Sequence[int]) -> List[BicliqueMember]:
    """Bit-indexed bicliques strongly separating the edges of K[left, right].

    Each side is indexed by position. For every bit position c and every pair
    of bit values (x, y) the member joins the left vertices whose index has
    bit c equal to x with the right vertices whose index has bit c equal to y.
    Two distinct edges differ in some index bit on some side, and the member
    matching the first edge on that bit misses the second. Sides of unequal
    length share the index space of the longer one; empty selections are
    skipped.
    """
    left, right = tuple(left), tuple(right)
    members: List[BicliqueMember] = []
    for c in range(_bits(max(len(left), len(right)))):
        for x in (1, 0):
            chosen_left = tuple(v for i, v in enumerate(left) if (i >> c) & 1 == x)
            if not chosen_left:
                continue
            for y in (x, 1 - x):
                chosen_right = tuple(v for i, v in enumerate(right) if (i >> c) & 1 == y)
                if chosen_right:
                    members.append(BicliqueMember(chosen_left, chosen_right))
    return members


def build_knn_system(n: int) -> SeparatingFamily:
    """Separating biclique system of K_{n,n} with sides 0..n-1 and n..2n-1."""
    host = complete_bipartite(n, n)
    members = knn_bicliques(range(n), range(n, 2 * n))
    logger.info(f"K_{{{n},{n}}}: {len(members)} bicliques over {host.m} edges (bound {4 * _bits(n)})")
    return SeparatingFamily(host, tuple(members), {"bits": _bits(n)})
