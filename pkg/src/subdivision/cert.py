import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Optional, Set, Tuple

from pydantic import BaseModel, ConfigDict

from src.errors import CertificateError, FormatError, GraphError
from src.graphs.core import Graph, Path
from src.graphs.edgelist import content_lines, parse_ints
from src.schemas import Verdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubdivisionCert:
    """Witness that a subgraph of a host is a subdivision of ``pattern``.

    ``branch_vertices[h]`` is the host image of pattern vertex h and
    ``branch_paths[e]`` is the host path realizing pattern edge e, running from
    the image of the lower endpoint of e to the image of the higher one.
    """

    pattern: Graph
    branch_vertices: Tuple[int, ...]
    branch_paths: Tuple[Path, ...]

    def vertex_set(self) -> FrozenSet[int]:
        found: Set[int] = set(self.branch_vertices)
        for p in self.branch_paths:
            found.update(p.vertices)
        return frozenset(found)

    def edge_ids(self, host: Graph) -> FrozenSet[int]:
        return frozenset(e for p in self.branch_paths for e in p.edge_ids(host))

    def path_between(self, a: int, b: int) -> Path:
        """Branch path of pattern edge ab, oriented from the image of a."""
        path = self.branch_paths[self.pattern.edge_id(a, b)]
        return path if path.start == self.branch_vertices[a] else path.reversed()

    def lengths(self) -> Tuple[int, ...]:
        return tuple(p.length for p in self.branch_paths)


def verify_subdivision(g: Graph, cert: SubdivisionCert) -> Verdict:
    h = cert.pattern
    branch = cert.branch_vertices
    if len(branch) != h.n or len(set(branch)) != h.n:
        return Verdict(passed=False, clause="branch map", detail="branch map is not injective on V(H)")
    if any(not 0 <= v < g.n for v in branch):
        return Verdict(passed=False, clause="branch map", detail="branch vertex outside host")
    if len(cert.branch_paths) != h.m:
        return Verdict(passed=False, clause="branch map",
                       detail=f"{len(cert.branch_paths)} branch paths for {h.m} pattern edges")

    branch_set = set(branch)
    interiors: Set[int] = set()
    for eid, ((a, b), path) in enumerate(zip(h.edges, cert.branch_paths)):
        if not path.is_valid(g):
            return Verdict(passed=False, clause="host edges", detail=f"branch path {eid} is not a path of the host")
        if {path.start, path.end} != {branch[a], branch[b]}:
            return Verdict(passed=False, clause="path endpoints",
                           detail=f"branch path {eid} does not join the images of {a} and {b}")
        for v in path.interior:
            if v in branch_set:
                return Verdict(passed=False, clause="internally disjoint",
                               detail=f"branch vertex {v} is interior to branch path {eid}")
            if v in interiors:
                return Verdict(passed=False, clause="internally disjoint",
                               detail=f"vertex {v} is interior to two branch paths")
            interiors.add(v)
    return Verdict(passed=True)


class Balance(str, Enum):
    BALANCED = "balanced"
    ALMOST_BALANCED = "almost-balanced"
    UNBALANCED = "unbalanced"


class BalanceProfile(BaseModel):
    model_config = ConfigDict(frozen=True)

    lengths: Tuple[int, ...]
    classification: Balance
    ell: Optional[int] = None

    def is_almost_balanced(self, ell: int) -> bool:
        return sum(1 for x in self.lengths if x != ell) <= 1

    def is_balanced(self, ell: int) -> bool:
        return all(x == ell for x in self.lengths)

    @property
    def label(self) -> str:
        if self.classification is Balance.UNBALANCED or self.ell is None:
            return self.classification.value
        return f"{self.ell}-{self.classification.value}"


def balance_profile(cert: SubdivisionCert) -> BalanceProfile:
    lengths = tuple(sorted(cert.lengths()))
    counts = Counter(lengths)
    if not lengths:
        return BalanceProfile(lengths=lengths, classification=Balance.BALANCED)
    if len(counts) == 1:
        return BalanceProfile(lengths=lengths, classification=Balance.BALANCED, ell=lengths[0])
    # Smallest length carried by all but one branch path
    for ell in sorted(counts):
        if counts[ell] >= len(lengths) - 1:
            return BalanceProfile(lengths=lengths, classification=Balance.ALMOST_BALANCED, ell=ell)
    return BalanceProfile(lengths=lengths, classification=Balance.UNBALANCED)


def format_cert(cert: SubdivisionCert) -> str:
    h = cert.pattern
    out = [f"pattern {h.n} {h.m}"]
    out.extend(f"{u} {v}" for u, v in h.edges)
    out.extend(f"branch {x} {v}" for x, v in enumerate(cert.branch_vertices))
    out.extend(f"path {e}: " + " ".join(str(v) for v in p.vertices)
               for e, p in enumerate(cert.branch_paths))
    return "\n".join(out) + "\n"


def _keyword(line: str, number: int, keyword: str) -> str:
    head, _, rest = line.partition(" ")
    if head != keyword:
        raise FormatError(f"expected '{keyword}' line, got {line!r}", number)
    return rest


def parse_cert(text: str) -> SubdivisionCert:
    """Parse the certificate text format written by ``format_cert``."""
    lines = content_lines(text)
    if not lines:
        raise FormatError("missing 'pattern n m' header", 1)
    number, line = lines[0]
    n, m = parse_ints(_keyword(line, number, "pattern"), number, 2)
    expected = 1 + m + n + m
    if len(lines) != expected:
        raise FormatError(f"certificate for a pattern with {n} vertices and {m} edges "
                          f"needs {expected} lines, found {len(lines)}", lines[-1][0])

    edges = [tuple(parse_ints(line, number, 2)) for number, line in lines[1:1 + m]]
    try:
        pattern = Graph(n, edges)
    except GraphError as e:
        raise FormatError(f"invalid pattern: {e}", lines[0][0]) from None
    if pattern.edges != tuple(tuple(sorted(e)) for e in edges):
        raise FormatError("pattern edges must be listed as 'u v' with u < v", lines[1][0])

    branch = [0] * n
    for expected_x, (number, line) in enumerate(lines[1 + m:1 + m + n]):
        x, v = parse_ints(_keyword(line, number, "branch"), number, 2)
        if x != expected_x:
            raise FormatError(f"expected branch line for pattern vertex {expected_x}", number)
        branch[x] = v

    paths = []
    for expected_e, (number, line) in enumerate(lines[1 + m + n:]):
        rest = _keyword(line, number, "path")
        label, sep, body = rest.partition(":")
        if not sep or label.strip() != str(expected_e):
            raise FormatError(f"expected 'path {expected_e}: ...'", number)
        try:
            vertices = tuple(int(v) for v in body.split())
        except ValueError:
            raise FormatError(f"path vertices must be integers, got {body!r}", number) from None
        if len(vertices) < 2:
            raise FormatError("a branch path needs at least two vertices", number)
        paths.append(Path(vertices))
    return SubdivisionCert(pattern, tuple(branch), tuple(paths))


def cert_from_cycle(cycle: Tuple[int, ...]) -> SubdivisionCert:
    """A cycle v0..v(k-1) as a K_3-subdivision with branch vertices at 0, k//3, 2k//3."""
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        raise CertificateError(f"not a cycle: {cycle}")
    i, j = k // 3, 2 * k // 3
    closed = tuple(cycle) + (cycle[0],)
    triangle = Graph(3, [(0, 1), (0, 2), (1, 2)])
    paths = (Path(closed[0:i + 1]), Path(closed[j:k + 1]).reversed(), Path(closed[i:j + 1]))
    return SubdivisionCert(triangle, (cycle[0], cycle[i], cycle[j]), paths)


def cycle_vertices(cert: SubdivisionCert) -> Tuple[int, ...]:
    """Cyclic vertex order of a K_3-subdivision, starting at the image of pattern vertex 0."""
    if cert.pattern.n != 3 or cert.pattern.m != 3:
        raise CertificateError("cycle order is only defined for K_3-subdivisions")
    first, second, third = cert.path_between(0, 1), cert.path_between(1, 2), cert.path_between(2, 0)
    return first.vertices + second.vertices[1:] + third.vertices[1:-1]
