import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from math import comb
from typing import Iterator, List, Optional, Set, Tuple

from src.config import settings
from src.errors import CertificateError
from src.graphs.core import Graph, Path
from src.graphs.generators import complete
from src.subdivision.cert import SubdivisionCert

logger = logging.getLogger(__name__)


class SearchStatus(str, Enum):
    FOUND = "found"
    BUDGET_EXHAUSTED = "budget_exhausted"
    REFUTED = "refuted"


@dataclass(frozen=True)
class SearchOutcome:
    """Result of a balanced clique-subdivision search; truthy iff found."""

    status: SearchStatus
    cert: Optional[SubdivisionCert] = None
    ell: Optional[int] = None
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.status is SearchStatus.FOUND


class _BudgetExhausted(Exception):
    pass


class _Counter:
    def __init__(self, budget: int):
        self.budget = budget
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExhausted()


def _find_clique(g: Graph, m: int, counter: _Counter) -> Optional[List[int]]:
    order = sorted((v for v in g.vertices() if g.degree(v) >= m - 1), key=lambda v: (-g.degree(v), v))
    position = {v: i for i, v in enumerate(order)}
    adj = [0] * len(order)
    for i, v in enumerate(order):
        for w in g.neighbors(v):
            if w in position:
                adj[i] |= 1 << position[w]

    def expand(clique: List[int], cand: int) -> Optional[List[int]]:
        counter.tick()
        if len(clique) == m:
            return clique
        while cand:
            if len(clique) + cand.bit_count() < m:
                return None
            i = (cand & -cand).bit_length() - 1
            cand &= ~(1 << i)
            found = expand(clique + [i], cand & adj[i])
            if found:
                return found
        return None

    found = expand([], (1 << len(order)) - 1)
    return None if found is None else sorted(order[i] for i in found)


def _exact_paths(g: Graph, a: int, b: int, ell: int, blocked: Set[int],
                 counter: _Counter) -> Iterator[Path]:
    """Paths a..b with exactly ``ell`` edges whose interiors avoid ``blocked``."""
    walk = [a]
    on_walk = {a}

    def extend(x: int) -> Iterator[Path]:
        counter.tick()
        if len(walk) == ell:
            if b in g.neighbors(x):
                yield Path(tuple(walk) + (b,))
            return
        for y in sorted(g.neighbors(x)):
            if y in blocked or y in on_walk or y == b:
                continue
            walk.append(y)
            on_walk.add(y)
            yield from extend(y)
            walk.pop()
            on_walk.discard(y)

    yield from extend(a)


def _route_balanced(g: Graph, branch: Tuple[int, ...], ell: int,
                    counter: _Counter) -> Optional[List[Path]]:
    pairs = list(combinations(range(len(branch)), 2))
    used: Set[int] = set(branch)
    routed: List[Path] = []

    def route(k: int) -> bool:
        if k == len(pairs):
            return True
        i, j = pairs[k]
        for p in _exact_paths(g, branch[i], branch[j], ell, used, counter):
            used.update(p.interior)
            routed.append(p)
            if route(k + 1):
                return True
            routed.pop()
            used.difference_update(p.interior)
        return False

    return routed if route(0) else None


def _clique_cert(m: int, branch: Tuple[int, ...], paths: List[Path]) -> SubdivisionCert:
    return SubdivisionCert(complete(m), branch, tuple(paths))


def find_balanced_clique_subdivision(g: Graph, m: int, budget: int | None = None) -> SearchOutcome:
    """Search for an l-balanced K_m-subdivision, trying l = 1, 2, ... in turn.

    l = 1 is a clique search; larger l backtracks over branch-vertex sets in
    descending-degree order and routes exact-length paths between them. Only
    l with m + C(m, 2)(l - 1) <= n are explored; exhausting all of them within
    the node budget refutes existence.
    """
    if m < 2:
        raise CertificateError(f"clique pattern needs at least 2 vertices, got {m}")
    budget = settings.search_budget if budget is None else budget
    counter = _Counter(budget)
    pattern = complete(m)
    try:
        clique = _find_clique(g, m, counter)
        if clique is not None:
            branch = tuple(clique)
            paths = [Path((branch[a], branch[b])) for a, b in pattern.edges]
            logger.debug(f"K_{m} found as a clique after {counter.nodes} nodes")
            return SearchOutcome(status=SearchStatus.FOUND, cert=_clique_cert(m, branch, paths),
                                 ell=1, nodes=counter.nodes)

        candidates = sorted((v for v in g.vertices() if g.degree(v) >= m - 1),
                            key=lambda v: (-g.degree(v), v))
        ell = 2
        while m + comb(m, 2) * (ell - 1) <= g.n:
            for branch in combinations(candidates, m):
                counter.tick()
                paths = _route_balanced(g, branch, ell, counter)
                if paths is not None:
                    logger.debug(f"{ell}-balanced K_{m} found after {counter.nodes} nodes")
                    return SearchOutcome(status=SearchStatus.FOUND, cert=_clique_cert(m, branch, paths),
                                         ell=ell, nodes=counter.nodes)
            ell += 1
    except _BudgetExhausted:
        logger.info(f"Balanced K_{m} search exhausted its budget of {budget} nodes")
        return SearchOutcome(status=SearchStatus.BUDGET_EXHAUSTED, nodes=counter.nodes)

    logger.debug(f"No balanced K_{m}-subdivision exists in {g!r}")
    return SearchOutcome(status=SearchStatus.REFUTED, nodes=counter.nodes)


def quarter_split(cert: SubdivisionCert, t: int) -> List[SubdivisionCert]:
    """Split a K_{4t+8}-subdivision into four vertex-disjoint K_{t+2}-subdivisions.

    Pattern vertices are ordered by the host id of their branch vertex and cut
    into four consecutive parts.
    """
    size = 4 * t + 8
    h = cert.pattern
    if h.n != size or h.m != comb(size, 2):
        raise CertificateError(f"quarter split with t={t} needs a K_{size} certificate, "
                               f"got a pattern with {h.n} vertices and {h.m} edges")
    order = sorted(range(size), key=lambda x: cert.branch_vertices[x])
    part = t + 2
    small = complete(part)
    quarters = []
    for r in range(4):
        members = order[r * part:(r + 1) * part]
        branch = tuple(cert.branch_vertices[x] for x in members)
        paths = tuple(cert.path_between(members[a], members[b]) for a, b in small.edges)
        quarters.append(SubdivisionCert(small, branch, paths))
    return quarters
