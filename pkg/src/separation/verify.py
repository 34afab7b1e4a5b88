import logging
from typing import Iterable, Optional, Tuple

import numpy as np

from src.config import settings
from src.schemas import SeparationVerdict
from src.separation.family import SeparatingFamily

logger = logging.getLogger(__name__)


def _first_failure(ground: np.ndarray, fam: SeparatingFamily, weak: bool,
                   block_rows: int) -> Optional[Tuple[int, int]]:
    """First (row-major) pair of ground positions left unseparated.

    For rows a and columns b, ``inside[a, b]`` counts members containing
    ground[a] but not ground[b]. Strong separation needs every off-diagonal
    count positive; weak separation needs one of the two directions positive
    for every unordered pair.
    """
    member_cols = fam.membership[:, ground].astype(np.float32)
    missing = 1.0 - member_cols
    q = ground.size
    for start in range(0, q, block_rows):
        stop = min(start + block_rows, q)
        inside = member_cols[:, start:stop].T @ missing
        unresolved = inside == 0
        if weak:
            outside = missing[:, start:stop].T @ member_cols
            unresolved &= outside == 0
            # Unordered pairs: only columns to the right of the diagonal
            unresolved &= np.arange(q)[None, :] > np.arange(start, stop)[:, None]
        else:
            unresolved[np.arange(stop - start), np.arange(start, stop)] = False
        hits = np.argwhere(unresolved)
        if hits.size:
            a, b = hits[0]
            return start + int(a), int(b)
    return None


def _check(ground: Iterable[int], fam: SeparatingFamily, weak: bool,
           block_rows: int | None) -> SeparationVerdict:
    ids = np.array(sorted(set(ground)), dtype=np.int64)
    q = ids.size
    pairs = q * (q - 1) // 2 if weak else q * (q - 1)
    if q < 2:
        return SeparationVerdict(passed=True, pairs_checked=0)
    block_rows = settings.verify_block_rows if block_rows is None else block_rows
    failure = _first_failure(ids, fam, weak, block_rows)
    kind = "weak" if weak else "strong"
    if failure is None:
        logger.debug(f"{kind} separation holds over {q} ground edges ({len(fam)} members)")
        return SeparationVerdict(passed=True, pairs_checked=pairs)
    e, f = int(ids[failure[0]]), int(ids[failure[1]])
    relation = "neither separated from the other" if weak else f"no member contains {e} and misses {f}"
    return SeparationVerdict(passed=False, clause=f"{kind} separation", pair=(e, f),
                             detail=f"edges {e}, {f}: {relation}", pairs_checked=pairs)


def check_strong_separation(ground: Iterable[int], fam: SeparatingFamily,
                            block_rows: int | None = None) -> SeparationVerdict:
    """Every ordered pair (e, f) of distinct ground edges has a member with e and without f."""
    return _check(ground, fam, weak=False, block_rows=block_rows)


def check_weak_separation(ground: Iterable[int], fam: SeparatingFamily,
                          block_rows: int | None = None) -> SeparationVerdict:
    return _check(ground, fam, weak=True, block_rows=block_rows)
