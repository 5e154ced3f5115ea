"""Shared solver result and budget types."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

DEFAULT_TIME_LIMIT_S = 300.0
DEFAULT_MEM_LIMIT_KB = 4 * 1024 * 1024  # 4 GB


class Algorithm(str, Enum):
    GREEDY = "greedy"
    DP = "dp"
    BNB = "bnb"
    GA = "ga"


class SolveStatus(str, Enum):
    OPTIMAL = "optimal"
    FEASIBLE = "feasible"
    TIMEOUT = "timeout"
    OOM = "oom"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class Budget:
    """Resource envelope for one solve call.

    ``mem_limit_kb`` is checked against each solver's deterministic memory
    accounting, not against process RSS.
    """

    time_limit_s: float = DEFAULT_TIME_LIMIT_S
    mem_limit_kb: int = DEFAULT_MEM_LIMIT_KB

    def __post_init__(self):
        if self.time_limit_s <= 0:
            raise ValueError(f"time_limit_s must be > 0, got {self.time_limit_s}")
        if self.mem_limit_kb <= 0:
            raise ValueError(f"mem_limit_kb must be > 0, got {self.mem_limit_kb}")


@dataclass(frozen=True)
class SolveOutcome:
    """Result of one solver run.

    ``value`` and ``selection`` are absent when the run produced no solution
    (timeout with no incumbent, OOM, infeasible).  ``elapsed_s`` and
    ``peak_mem_kb`` come from the deterministic cost model, so identical runs
    report identical numbers.
    """

    status: SolveStatus
    value: int | None = None
    selection: tuple[int, ...] | None = None
    elapsed_s: float = 0.0
    peak_mem_kb: int = 0

    def __post_init__(self):
        if (self.value is None) != (self.selection is None):
            raise ValueError("value and selection must be present together")
        if self.elapsed_s < 0:
            raise ValueError("elapsed_s must be >= 0")
        if self.peak_mem_kb < 0:
            raise ValueError("peak_mem_kb must be >= 0")

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "value": self.value,
            "selection": list(self.selection) if self.selection is not None else None,
            "elapsed_s": self.elapsed_s,
            "peak_mem_kb": self.peak_mem_kb,
        }


class ReferenceUnavailable(RuntimeError):
    """Raised when no exact method can certify the reference optimum."""
