from src.pipeline.gadget import DerivedGadget, derive_six, embed_h_minus_f, fixed_edge
from src.pipeline.separate import separate_graph, separate_three_connected

__all__ = [
    "DerivedGadget",
    "derive_six",
    "embed_h_minus_f",
    "fixed_edge",
    "separate_graph",
    "separate_three_connected",
]
