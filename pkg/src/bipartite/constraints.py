import logging
from dataclasses import dataclass
from typing import FrozenSet, Hashable, Iterable, List, Sequence, Tuple

import numpy as np

from src.config import settings
from src.errors import ConstraintError

logger = logging.getLogger(__name__)

_BATCH = 32


@dataclass(frozen=True)
class Constraint:
    """A set S satisfies the constraint iff include <= S and S misses exclude."""

    include: FrozenSet[Hashable]
    exclude: FrozenSet[Hashable]

    def __post_init__(self):
        object.__setattr__(self, "include", frozenset(self.include))
        object.__setattr__(self, "exclude", frozenset(self.exclude))
        if self.include & self.exclude:
            raise ConstraintError(f"include and exclude overlap in {sorted(self.include & self.exclude)}")

    @property
    def size(self) -> int:
        return len(self.include) + len(self.exclude)

    def satisfied_by(self, s: Iterable[Hashable]) -> bool:
        s = set(s)
        return self.include <= s and not (self.exclude & s)


@dataclass(frozen=True)
class ConstraintFamily:
    universe: Tuple[Hashable, ...]
    sets: Tuple[FrozenSet[Hashable], ...]
    include_probability: float
    draws: int
    # Constraints that ran past the retry ceiling and got a tailored set
    tailored: int = 0

    @property
    def fallback(self) -> bool:
        return self.tailored > 0

    def __len__(self) -> int:
        return len(self.sets)


def _matrices(universe: Sequence[Hashable], constraints: Sequence[Constraint]) -> Tuple[np.ndarray, np.ndarray]:
    index = {x: i for i, x in enumerate(universe)}
    include = np.zeros((len(constraints), len(universe)), dtype=bool)
    exclude = np.zeros_like(include)
    for r, c in enumerate(constraints):
        stray = (c.include | c.exclude) - index.keys()
        if stray:
            raise ConstraintError(f"constraint {r} names elements outside the universe: {sorted(map(str, stray))}")
        include[r, [index[x] for x in c.include]] = True
        exclude[r, [index[x] for x in c.exclude]] = True
    return include, exclude


def satisfied(include: np.ndarray, exclude: np.ndarray, chosen: np.ndarray) -> np.ndarray:
    """Constraints x candidate sets matrix: True where the set satisfies the constraint.

    ``chosen`` is a (sets x universe) boolean matrix.
    """
    chosen = np.atleast_2d(chosen).astype(np.int32)
    missed = include.astype(np.int32) @ (1 - chosen).T
    hit = exclude.astype(np.int32) @ chosen.T
    return (missed == 0) & (hit == 0)


def unsatisfied_constraints(universe: Iterable[Hashable], constraints: Sequence[Constraint],
                            sets: Iterable[Iterable[Hashable]]) -> List[int]:
    """Indices of constraints satisfied by none of ``sets``."""
    universe = tuple(sorted(set(universe)))
    include, exclude = _matrices(universe, constraints)
    index = {x: i for i, x in enumerate(universe)}
    rows = [list(s) for s in sets]
    if not rows:
        return list(range(len(constraints)))
    chosen = np.zeros((len(rows), len(universe)), dtype=bool)
    for r, s in enumerate(rows):
        chosen[r, [index[x] for x in s]] = True
    return np.flatnonzero(~satisfied(include, exclude, chosen).any(axis=1)).tolist()


def build_constraint_family(universe: Iterable[Hashable], constraints: Sequence[Constraint],
                            seed: int | None = None, retry_ceiling: int | None = None) -> ConstraintFamily:
    """Family of subsets of ``universe`` satisfying every constraint.

    Random subsets are drawn with each element included independently with
    probability p, the mean include fraction of the constraints; a draw is
    kept when it satisfies at least one constraint no earlier set satisfies.
    After ``retry_ceiling`` draws every constraint still open gets the
    tailored set include | (universe - exclude).
    """
    if not constraints:
        raise ConstraintError("at least one constraint is required")
    seed = settings.seed if seed is None else seed
    retry_ceiling = settings.constraint_retry_ceiling if retry_ceiling is None else retry_ceiling
    universe = tuple(sorted(set(universe)))
    include, exclude = _matrices(universe, constraints)

    sizes = include.sum(axis=1) + exclude.sum(axis=1)
    sized = sizes > 0
    p = float((include.sum(axis=1)[sized] / sizes[sized]).mean()) if sized.any() else 0.5

    rng = np.random.default_rng(seed)
    open_rows = np.ones(len(constraints), dtype=bool)
    kept: List[np.ndarray] = []
    draws = 0
    while open_rows.any() and draws < retry_ceiling:
        batch = min(_BATCH, retry_ceiling - draws)
        chosen = rng.random((batch, len(universe))) < p
        ok = satisfied(include, exclude, chosen)
        for b in range(batch):
            draws += 1
            fresh = ok[:, b] & open_rows
            if fresh.any():
                kept.append(chosen[b])
                open_rows &= ~fresh
                if not open_rows.any():
                    break

    sets = [frozenset(x for x, bit in zip(universe, row) if bit) for row in kept]
    tailored = 0
    for r in np.flatnonzero(open_rows):
        c = constraints[r]
        sets.append(frozenset(c.include | (set(universe) - c.exclude)))
        tailored += 1
    if tailored:
        logger.warning(f"{tailored} of {len(constraints)} constraints still open after {draws} draws; "
                       f"added tailored sets")
    bound = np.log2(len(constraints)) if len(constraints) > 1 else 0.0
    logger.info(f"Constraint family: {len(sets)} sets for {len(constraints)} constraints over "
                f"{len(universe)} elements (p={p:.3f}, draws={draws}, log2 N={bound:.2f})")
    return ConstraintFamily(universe, tuple(sets), p, draws, tailored)
