from src.separation.family import (
    BicliqueMember,
    CertMember,
    EdgeMember,
    EdgeSetMember,
    Member,
    SeparatingFamily,
    parse_family,
    read_family,
    write_family,
)
from src.separation.verify import check_strong_separation, check_weak_separation
from src.separation.cycles import build_sub_k3_system

__all__ = [
    "BicliqueMember",
    "CertMember",
    "EdgeMember",
    "EdgeSetMember",
    "Member",
    "SeparatingFamily",
    "parse_family",
    "read_family",
    "write_family",
    "check_strong_separation",
    "check_weak_separation",
    "build_sub_k3_system",
]
