"""Target discretization for the classification task."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np


class BinMetric(str, Enum):
    TIME = "time"
    GAP = "gap"
    MEMORY = "mem"


TARGET_COLUMN_FOR = {BinMetric.TIME: "t_s", BinMetric.GAP: "o_pct", BinMetric.MEMORY: "m_kb"}

# Statuses whose rows carry no solution; their class is the worst bin.
FAILED_STATUSES = frozenset({"timeout", "oom", "infeasible"})


@dataclass(frozen=True)
class BinScheme:
    """Ascending edges; label i covers (edges[i-1], edges[i]], label 0 is
    everything at or below edges[0], the last label everything above."""

    metric: BinMetric
    edges: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.edges:
            raise ValueError("bin scheme needs at least one edge")
        if any(b <= a for a, b in zip(self.edges, self.edges[1:])):
            raise ValueError(f"edges must be strictly ascending, got {self.edges}")

    @property
    def n_classes(self) -> int:
        return len(self.edges) + 1

    def label(self, value: float) -> int:
        return bisect_left(self.edges, value)

    def to_dict(self) -> dict:
        return {"metric": self.metric.value, "edges": list(self.edges)}

    @classmethod
    def from_dict(cls, data: dict) -> "BinScheme":
        return cls(BinMetric(data["metric"]), tuple(float(e) for e in data["edges"]))


def time_scheme() -> BinScheme:
    return BinScheme(BinMetric.TIME, (1.0, 10.0, 100.0))


def gap_scheme() -> BinScheme:
    # Gaps are never negative, so label 0 is exactly "solved to optimality".
    return BinScheme(BinMetric.GAP, (0.0, 1.0, 5.0))


def memory_scheme(train_values: Sequence[float]) -> BinScheme:
    """Quartile edges over the training split's observed memory values."""
    values = np.asarray([v for v in train_values if v is not None], dtype=np.float64)
    if values.size == 0:
        raise ValueError("no observed memory values to fit quartiles on")
    edges = np.percentile(values, [25.0, 50.0, 75.0])
    unique = tuple(dict.fromkeys(float(e) for e in edges))
    return BinScheme(BinMetric.MEMORY, unique)


def scheme_for(metric: BinMetric, train_values: Sequence[float] | None = None) -> BinScheme:
    if metric is BinMetric.TIME:
        return time_scheme()
    if metric is BinMetric.GAP:
        return gap_scheme()
    if train_values is None:
        raise ValueError("memory scheme needs training values")
    return memory_scheme(train_values)


def bin_targets(
    values: Sequence[float | None],
    scheme: BinScheme,
    statuses: Sequence[str] | None = None,
) -> np.ndarray:
    """Map raw target values to class labels.

    A failed run (or an absent value) lands in the last class: it performed
    worse than anything measured.
    """
    if len(values) == 0:
        raise ValueError("empty values")
    if statuses is not None and len(statuses) != len(values):
        raise ValueError("values and statuses length mismatch")
    worst = scheme.n_classes - 1
    labels = np.empty(len(values), dtype=np.int64)
    for i, value in enumerate(values):
        failed = statuses is not None and statuses[i] in FAILED_STATUSES
        if value is None or failed:
            labels[i] = worst
        else:
            labels[i] = scheme.label(float(value))
    return labels


def bin_midpoints(scheme: BinScheme, y_min: float, y_max: float) -> np.ndarray:
    """Representative value per class: arithmetic midpoints of the bin
    boundaries, with the open end bins closed by the observed target range."""
    lo = min(y_min, scheme.edges[0])
    hi = max(y_max, scheme.edges[-1])
    bounds = [lo, *scheme.edges, hi]
    return np.array([(a + b) / 2.0 for a, b in zip(bounds, bounds[1:])], dtype=np.float64)
