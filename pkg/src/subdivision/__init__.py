from src.subdivision.cert import (
    Balance,
    BalanceProfile,
    SubdivisionCert,
    balance_profile,
    cert_from_cycle,
    cycle_vertices,
    format_cert,
    parse_cert,
    verify_subdivision,
)
from src.subdivision.search import SearchOutcome, SearchStatus, find_balanced_clique_subdivision, quarter_split

__all__ = [
    "Balance",
    "BalanceProfile",
    "SubdivisionCert",
    "balance_profile",
    "cert_from_cycle",
    "cycle_vertices",
    "format_cert",
    "parse_cert",
    "verify_subdivision",
    "SearchOutcome",
    "SearchStatus",
    "find_balanced_clique_subdivision",
    "quarter_split",
]
