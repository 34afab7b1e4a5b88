from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from src.config import settings


class Verdict(BaseModel):
    """Result of a checker; truthy iff the check passed."""

    model_config = ConfigDict(frozen=True)

    passed: bool
    clause: Optional[str] = None
    detail: Optional[str] = None

    def __bool__(self) -> bool:
        return self.passed


class ConnectivityVerdict(Verdict):
    # Empty tuple with passed=False means "disconnected" or "too small"
    separator: Tuple[int, ...] = ()


class SeparationVerdict(Verdict):
    pair: Optional[Tuple[int, int]] = None
    pairs_checked: int = 0


class HSeparationVerdict(Verdict):
    # Indices into the enumerated copy list
    pair: Optional[Tuple[int, int]] = None
    copies: int = 0


class PipelineConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    c_balance: float = Field(default_factory=lambda: settings.c_balance, gt=0)
    budget: int = Field(default_factory=lambda: settings.search_budget, gt=0)
    fixed_edge_choice: str = "lexicographic"


class QuarterMetrics(BaseModel):
    r: int
    j_vertices: int
    ground: int
    cycle_system: int
    cycles: int
    within_41: bool


class PipelineMetrics(BaseModel):
    n: int
    m: int
    pattern_vertices: int
    pattern_edges: int
    fallback: bool
    ell: Optional[int] = None
    quarters: List[QuarterMetrics] = []
    cycle_system_total: int = 0
    family_size: int = 0
    size_per_n: float = 0.0
    balance_census: Dict[str, int] = {}

    @property
    def six_bound(self) -> int:
        return 6 * self.cycle_system_total

    @property
    def bound_984_applies(self) -> bool:
        return not self.fallback and all(q.within_41 for q in self.quarters)


class RunReport(BaseModel):
    """Line-oriented key=value report of one CLI run."""

    command: str
    values: Dict[str, Any] = {}
    verdicts: Dict[str, bool] = {}
    wall_time: float = 0.0

    @staticmethod
    def _render(value: Any) -> str:
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, float):
            return f"{value:.6f}"
        if isinstance(value, (list, tuple)):
            return ",".join(RunReport._render(v) for v in value)
        return str(value)

    def deterministic_lines(self) -> List[str]:
        lines = [f"command={self.command}"]
        lines.extend(f"{k}={self._render(v)}" for k, v in self.values.items())
        lines.extend(f"verify.{k}={self._render(v)}" for k, v in self.verdicts.items())
        return lines

    def render(self) -> str:
        return "\n".join(self.deterministic_lines() + [f"wall_time={self.wall_time:.3f}"]) + "\n"

    @property
    def all_passed(self) -> bool:
        return all(self.verdicts.values())
