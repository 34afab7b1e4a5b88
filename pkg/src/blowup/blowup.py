import logging
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from src.errors import GraphError
from src.graphs.core import Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Blowup:
    """Balanced blowup of ``pattern``: class x holds vertices x*l .. x*l + l - 1."""

    pattern: Graph
    class_size: int
    classes: Tuple[Tuple[int, ...], ...]
    host: Graph

    def class_of(self, v: int) -> int:
        return v // self.class_size

    def selection_edges(self, selection: Sequence[Iterable[int]]) -> List[int]:
        """Host edges spanned by one vertex subset per class (the induced sub-blowup)."""
        chosen = [tuple(s) for s in selection]
        if len(chosen) != self.pattern.n:
            raise GraphError(f"selection has {len(chosen)} classes, pattern has {self.pattern.n}")
        return sorted(self.host.edge_id(a, b) for x, y in self.pattern.edges for a in chosen[x] for b in chosen[y])


def build_blowup(h: Graph, l: int) -> Blowup:
    if l < 1:
        raise GraphError(f"class size must be at least 1, got {l}")
    classes = tuple(tuple(range(x * l, (x + 1) * l)) for x in h.vertices())
    edges = [(a, b) for x, y in h.edges for a in classes[x] for b in classes[y]]
    host = Graph(h.n * l, edges)
    logger.debug(f"{l}-balanced blowup of {h!r}: {host!r}")
    return Blowup(h, l, classes, host)
