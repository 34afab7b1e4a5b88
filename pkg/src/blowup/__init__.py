from src.blowup.blowup import Blowup, build_blowup
from src.blowup.copies import CopyOfH, check_h_separation, enumerate_h_copies, format_copies
from src.blowup.separator import build_blowup_h_separator, build_supergraph_h_separator

__all__ = [
    "Blowup",
    "build_blowup",
    "CopyOfH",
    "check_h_separation",
    "enumerate_h_copies",
    "format_copies",
    "build_blowup_h_separator",
    "build_supergraph_h_separator",
]
