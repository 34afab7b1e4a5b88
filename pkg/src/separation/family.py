import logging
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path as FilePath
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Tuple, Union

import numpy as np

from src.errors import FormatError, GraphError, SepSysError
from src.graphs.core import Graph
from src.graphs.edgelist import content_lines
from src.subdivision.cert import SubdivisionCert, format_cert, parse_cert

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EdgeMember:
    edge: int

    def edge_ids(self, g: Graph) -> FrozenSet[int]:
        g.edge(self.edge)
        return frozenset((self.edge,))


@dataclass(frozen=True)
class CertMember:
    cert: SubdivisionCert

    def edge_ids(self, g: Graph) -> FrozenSet[int]:
        return self.cert.edge_ids(g)


@dataclass(frozen=True)
class BicliqueMember:
    """Complete bipartite subgraph between ``left`` and ``right``."""

    left: Tuple[int, ...]
    right: Tuple[int, ...]

    def __post_init__(self):
        if not self.left or not self.right:
            raise GraphError("biclique sides must be non-empty")
        if set(self.left) & set(self.right):
            raise GraphError("biclique sides must be disjoint")

    def edge_ids(self, g: Graph) -> FrozenSet[int]:
        return frozenset(g.edge_id(u, v) for u in self.left for v in self.right)


@dataclass(frozen=True)
class EdgeSetMember:
    edges: Tuple[int, ...]

    def edge_ids(self, g: Graph) -> FrozenSet[int]:
        for e in self.edges:
            g.edge(e)
        return frozenset(self.edges)


Member = Union[EdgeMember, CertMember, BicliqueMember, EdgeSetMember]


@dataclass(frozen=True)
class SeparatingFamily:
    """Ordered members over a host graph, with a members x edges membership matrix."""

    host: Graph
    members: Tuple[Member, ...] = ()
    metadata: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Member]:
        return iter(self.members)

    @cached_property
    def membership(self) -> np.ndarray:
        matrix = np.zeros((len(self.members), self.host.m), dtype=bool)
        for i, member in enumerate(self.members):
            ids = member.edge_ids(self.host)
            if ids:
                matrix[i, list(ids)] = True
        matrix.setflags(write=False)
        return matrix

    def member_edges(self, i: int) -> FrozenSet[int]:
        return self.members[i].edge_ids(self.host)

    def certs(self) -> List[SubdivisionCert]:
        return [m.cert for m in self.members if isinstance(m, CertMember)]

    def with_members(self, members: Iterable[Member], **metadata: Any) -> "SeparatingFamily":
        return SeparatingFamily(self.host, self.members + tuple(members), {**self.metadata, **metadata})

    def without(self, index: int) -> "SeparatingFamily":
        kept = self.members[:index] + self.members[index + 1:]
        return SeparatingFamily(self.host, kept, dict(self.metadata))


def _ids(values: Iterable[int]) -> str:
    return ",".join(str(v) for v in values)


def _member_line(member: Member, cert_ref: str | None) -> str:
    if isinstance(member, EdgeMember):
        return f"edge {member.edge}"
    if isinstance(member, CertMember):
        return f"cert {cert_ref}"
    if isinstance(member, BicliqueMember):
        return f"biclique {_ids(member.left)} | {_ids(member.right)}"
    return f"set {_ids(member.edges)}".rstrip()


def write_family(fam: SeparatingFamily, path: str | FilePath) -> None:
    """Write ``fam`` to ``path``; certificates go to ``certs/`` next to it."""
    path = FilePath(path)
    lines = [f"family {fam.host.host_hash()} {len(fam)}"]
    cert_dir = path.parent / "certs"
    for i, member in enumerate(fam.members):
        ref = None
        if isinstance(member, CertMember):
            cert_dir.mkdir(parents=True, exist_ok=True)
            ref = f"certs/{path.stem}_{i:05d}.cert"
            (path.parent / ref).write_text(format_cert(member.cert))
        lines.append(_member_line(member, ref))
    path.write_text("\n".join(lines) + "\n")
    logger.debug(f"Wrote {len(fam)} members to {path}")


def _int_list(text: str, number: int) -> Tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise FormatError(f"expected comma-separated integers, got {text!r}", number) from None


def parse_family(text: str, host: Graph, base_dir: str | FilePath = ".") -> SeparatingFamily:
    """Parse a family file against ``host``; ``cert`` paths resolve relative to ``base_dir``."""
    base_dir = FilePath(base_dir)
    lines = content_lines(text)
    if not lines:
        raise FormatError("missing 'family <host-hash> <count>' header", 1)
    number, header = lines[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "family":
        raise FormatError(f"expected 'family <host-hash> <count>', got {header!r}", number)
    if parts[1] != host.host_hash():
        raise FormatError(f"family was built for host {parts[1]}, not {host.host_hash()}", number)
    try:
        count = int(parts[2])
    except ValueError:
        raise FormatError(f"member count must be an integer, got {parts[2]!r}", number) from None
    if len(lines) - 1 != count:
        raise FormatError(f"header announces {count} members, found {len(lines) - 1}", lines[-1][0])

    members: List[Member] = []
    for number, line in lines[1:]:
        kind, _, rest = line.partition(" ")
        try:
            if kind == "edge":
                member: Member = EdgeMember(int(rest))
            elif kind == "cert":
                cert_path = base_dir / rest.strip()
                try:
                    member = CertMember(parse_cert(cert_path.read_text()))
                except OSError as e:
                    raise FormatError(f"cannot read certificate {cert_path}: {e}", number) from None
                except FormatError as e:
                    raise FormatError(f"in certificate {cert_path}: {e}", number) from None
            elif kind == "biclique":
                left, sep, right = rest.partition("|")
                if not sep:
                    raise FormatError("biclique needs 'left | right'", number)
                member = BicliqueMember(_int_list(left, number), _int_list(right, number))
            elif kind == "set":
                member = EdgeSetMember(tuple(sorted(_int_list(rest, number))))
            else:
                raise FormatError(f"unknown member kind {kind!r}", number)
            member.edge_ids(host)
        except ValueError:
            raise FormatError(f"malformed member line {line!r}", number) from None
        except FormatError:
            raise
        except SepSysError as e:
            raise FormatError(f"member does not fit the host: {e}", number) from None
        members.append(member)
    return SeparatingFamily(host, tuple(members))


def read_family(path: str | FilePath, host: Graph) -> SeparatingFamily:
    path = FilePath(path)
    return parse_family(path.read_text(), host, path.parent)
