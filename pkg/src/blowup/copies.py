import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np
from networkx.algorithms import isomorphism

from src.config import settings
from src.errors import OracleLimitError
from src.graphs.core import Graph
from src.schemas import HSeparationVerdict
from src.separation.family import SeparatingFamily

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CopyOfH:
    # mapping[x] is the host image of pattern vertex x
    mapping: Tuple[int, ...]
    edges: FrozenSet[int]

    def vertex_set(self) -> FrozenSet[int]:
        return frozenset(self.mapping)


def enumerate_h_copies(g: Graph, h: Graph, pattern_cap: int | None = None,
                       host_cap: int | None = None) -> List[CopyOfH]:
    """All copies of h in g, one per image edge set, sorted by edge set."""
    pattern_cap = settings.copy_pattern_cap if pattern_cap is None else pattern_cap
    host_cap = settings.copy_host_cap if host_cap is None else host_cap
    if h.n > pattern_cap:
        raise OracleLimitError(f"pattern has {h.n} vertices, copy enumeration is capped at {pattern_cap}")
    if g.n > host_cap:
        raise OracleLimitError(f"host has {g.n} vertices, copy enumeration is capped at {host_cap}")

    matcher = isomorphism.GraphMatcher(g.to_networkx(), h.to_networkx())
    found: Dict[FrozenSet[int], CopyOfH] = {}
    for host_to_pattern in matcher.subgraph_monomorphisms_iter():
        image = [0] * h.n
        for host_v, pattern_v in host_to_pattern.items():
            image[pattern_v] = host_v
        edges = frozenset(g.edge_id(image[a], image[b]) for a, b in h.edges)
        copy = CopyOfH(tuple(image), edges)
        if edges not in found or copy.mapping < found[edges].mapping:
            found[edges] = copy
    copies = sorted(found.values(), key=lambda c: (sorted(c.edges), c.mapping))
    logger.debug(f"{len(copies)} copies of {h!r} in {g!r}")
    return copies


def format_copies(copies: Sequence[CopyOfH]) -> str:
    """One 'copy i: x->v ...' line per copy."""
    lines = []
    for i, c in enumerate(copies):
        pairs = " ".join(f"{x}->{v}" for x, v in enumerate(c.mapping))
        lines.append(f"copy {i}: {pairs}")
    return "\n".join(lines) + ("\n" if lines else "")


def _copy_matrix(g: Graph, copies: Sequence[CopyOfH]) -> np.ndarray:
    matrix = np.zeros((len(copies), g.m), dtype=bool)
    for i, c in enumerate(copies):
        matrix[i, list(c.edges)] = True
    return matrix


def check_h_separation(g: Graph, h: Graph, fam: SeparatingFamily,
                       copies: Optional[Sequence[CopyOfH]] = None) -> HSeparationVerdict:
    """For every ordered pair of distinct copies (H1, H2) some member contains
    all of H1 and misses an edge of H2."""
    if copies is None:
        copies = enumerate_h_copies(g, h)
    q = len(copies)
    if q < 2:
        return HSeparationVerdict(passed=True, copies=q)

    copy_cols = _copy_matrix(g, copies).astype(np.int32)
    members = fam.membership.astype(np.int32)
    # contains[f, i]: member f holds every edge of copy i
    contains = (members @ copy_cols.T) == copy_cols.sum(axis=1)[None, :]
    separated = contains.T.astype(np.int32) @ (~contains).astype(np.int32)
    np.fill_diagonal(separated, 1)
    hits = np.argwhere(separated == 0)
    if not hits.size:
        return HSeparationVerdict(passed=True, copies=q)
    i, j = (int(v) for v in hits[0])
    return HSeparationVerdict(
        passed=False, clause="h-separation", pair=(i, j), copies=q,
        detail=f"no member contains copy {i} {sorted(copies[i].edges)} and misses an edge of "
               f"copy {j} {sorted(copies[j].edges)}",
    )
