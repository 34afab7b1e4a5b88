from src.bipartite.constraints import (
    Constraint,
    ConstraintFamily,
    build_constraint_family,
    unsatisfied_constraints,
)
from src.bipartite.cover import extract_biclique_cover
from src.bipartite.knn import build_knn_system, knn_bicliques
from src.bipartite.tiling import build_biclique_separating_system, tile_biclique

__all__ = [
    "Constraint",
    "ConstraintFamily",
    "build_constraint_family",
    "unsatisfied_constraints",
    "extract_biclique_cover",
    "build_knn_system",
    "knn_bicliques",
    "build_biclique_separating_system",
    "tile_biclique",
]
