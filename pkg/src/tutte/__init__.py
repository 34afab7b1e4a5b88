from src.tutte.decomposition import (
    Torso,
    TorsoGraph,
    TorsoKind,
    TutteClause,
    TutteDecomposition,
    build_tutte,
    format_decomposition,
    parse_decomposition,
    to_dot,
    verify_tutte,
)
from src.tutte.realize import realize_members

__all__ = [
    "Torso",
    "TorsoGraph",
    "TorsoKind",
    "TutteClause",
    "TutteDecomposition",
    "build_tutte",
    "format_decomposition",
    "parse_decomposition",
    "to_dot",
    "verify_tutte",
    "realize_members",
]
