from src.graphs.core import Graph, Path, join_paths
from src.graphs.connectivity import (
    articulation_points,
    biconnected_blocks,
    disjoint_paths,
    is_three_connected,
    two_separators_bruteforce,
)
from src.graphs.edgelist import format_edge_list, parse_edge_list, read_edge_list, write_edge_list

__all__ = [
    "Graph",
    "Path",
    "join_paths",
    "articulation_points",
    "biconnected_blocks",
    "disjoint_paths",
    "is_three_connected",
    "two_separators_bruteforce",
    "format_edge_list",
    "parse_edge_list",
    "read_edge_list",
    "write_edge_list",
]
