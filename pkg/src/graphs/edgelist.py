from pathlib import Path as FilePath
from typing import List, Tuple

from src.errors import FormatError, GraphError
from src.graphs.core import Graph


def content_lines(text: str) -> List[Tuple[int, str]]:
    """Non-blank, non-comment lines with their 1-based line numbers."""
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append((number, line))
    return lines


def parse_ints(line: str, number: int, count: int) -> List[int]:
    parts = line.split()
    if len(parts) != count:
        raise FormatError(f"expected {count} integers, got {line!r}", number)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise FormatError(f"expected integers, got {line!r}", number) from None


def parse_edge_list(text: str) -> Graph:
    """Parse the ``n m`` / ``u v`` edge-list format."""
    lines = content_lines(text)
    if not lines:
        raise FormatError("missing 'n m' header", 1)
    number, header = lines[0]
    n, m = parse_ints(header, number, 2)
    if n < 0 or m < 0:
        raise FormatError("vertex and edge counts must be non-negative", number)
    body = lines[1:]
    if len(body) != m:
        last = body[-1][0] if body else number
        raise FormatError(f"header announces {m} edges, found {len(body)}", last)
    edges = []
    for number, line in body:
        u, v = parse_ints(line, number, 2)
        if not 0 <= u < v < n:
            raise FormatError(f"edge '{line}' must satisfy 0 <= u < v < {n}", number)
        edges.append((u, v))
    try:
        return Graph(n, edges)
    except GraphError as e:
        raise FormatError(str(e)) from None


def format_edge_list(g: Graph, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"{g.n} {g.m}")
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def read_edge_list(path: str | FilePath) -> Graph:
    return parse_edge_list(FilePath(path).read_text())


def write_edge_list(g: Graph, path: str | FilePath, comment: str | None = None) -> None:
    FilePath(path).write_text(format_edge_list(g, comment))
