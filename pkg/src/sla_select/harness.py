"""Profiling harness: sweep algorithms x instances x hardware grid and
assemble the learning dataset."""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .features import FEATURE_NAMES, HardwareConfig, extract_features
from .instances import Instance
from .solvers import (
    Algorithm,
    Budget,
    SolveOutcome,
    SolveStatus,
    optimality_gap,
    reference_optimum,
    solve_bnb,
    solve_dp,
    solve_ga,
    solve_greedy,
)

DESK_BUDGET_S = 5.0

CSV_COLUMNS: tuple[str, ...] = FEATURE_NAMES + (
    "ram_gb",
    "cpu_cores",
    "algorithm",
    "instance_id",
    "status",
    "t_s",
    "m_kb",
    "o_pct",
)

TARGET_COLUMNS: tuple[str, ...] = ("t_s", "m_kb", "o_pct")


@dataclass(frozen=True)
class PerformanceRecord:
    """One profiled run.  Targets are absent when the run produced no
    solution (OOM, infeasible, or a timeout with no incumbent)."""

    instance_id: str
    algorithm: Algorithm
    hardware: HardwareConfig
    status: SolveStatus
    t_s: float | None
    m_kb: int | None
    o_pct: float | None


def run_seed(base_seed: int, algorithm: Algorithm, instance_id: str) -> int:
    """Stable per-run seed.  Hardware is deliberately absent: the machine a
    run lands on must not change the search trajectory."""
    tag = f"{base_seed}:{algorithm.value}:{instance_id}".encode()
    return int.from_bytes(hashlib.blake2b(tag, digest_size=8).digest(), "big")


def _solve(
    algorithm: Algorithm, instance: Instance, budget: Budget, seed: int
) -> SolveOutcome:
    if algorithm is Algorithm.GREEDY:
        return solve_greedy(instance, budget)
    if algorithm is Algorithm.DP:
        return solve_dp(instance, budget)
    if algorithm is Algorithm.BNB:
        return solve_bnb(instance, budget)
    return solve_ga(instance, budget, seed=seed)


def _record(
    instance: Instance,
    algorithm: Algorithm,
    hardware: HardwareConfig,
    outcome: SolveOutcome,
    ref_cache: dict[str, int] | None,
) -> PerformanceRecord:
    if outcome.value is None:
        return PerformanceRecord(
            instance.id, algorithm, hardware, outcome.status, None, None, None
        )
    reference = reference_optimum(instance, ref_cache)
    gap = optimality_gap(outcome.value, reference, instance.variant)
    return PerformanceRecord(
        instance.id,
        algorithm,
        hardware,
        outcome.status,
        outcome.elapsed_s,
        outcome.peak_mem_kb,
        gap,
    )


def profile_run(
    algorithm: Algorithm,
    instance: Instance,
    hardware: HardwareConfig,
    budget_s: float = DESK_BUDGET_S,
    base_seed: int = 0,
    ref_cache: dict[str, int] | None = None,
) -> PerformanceRecord:
    """Run one algorithm on one instance under one hardware config."""
    budget = Budget(time_limit_s=budget_s, mem_limit_kb=hardware.mem_limit_kb)
    seed = run_seed(base_seed, algorithm, instance.id)
    outcome = _solve(algorithm, instance, budget, seed)
    return _record(instance, algorithm, hardware, outcome, ref_cache)


@dataclass
class Dataset:
    """Profiling rows plus the per-instance feature columns, CSV-shaped."""

    rows: list[dict[str, object]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)

    def algorithms(self) -> list[Algorithm]:
        seen: dict[str, None] = {}
        for row in self.rows:
            seen.setdefault(str(row["algorithm"]), None)
        return [Algorithm(a) for a in sorted(seen)]

    def rows_for(self, algorithm: Algorithm) -> list[dict[str, object]]:
        return [r for r in self.rows if r["algorithm"] == algorithm.value]

    def instance_ids(self) -> list[str]:
        seen: dict[str, None] = {}
        for row in self.rows:
            seen.setdefault(str(row["instance_id"]), None)
        return sorted(seen)

    def to_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for row in self.rows:
                writer.writerow([_format_cell(col, row[col]) for col in CSV_COLUMNS])

    @classmethod
    def from_csv(cls, path: str | Path) -> "Dataset":
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            if tuple(header) != CSV_COLUMNS:
                raise ValueError(f"unexpected dataset header in {path}")
            rows = [_parse_row(raw) for raw in reader]
        return cls(rows)


def _format_cell(col: str, value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


_INT_COLUMNS = {"ram_gb", "cpu_cores", "m_kb"}
_STR_COLUMNS = {"algorithm", "instance_id", "status"}


def _parse_row(raw: Sequence[str]) -> dict[str, object]:
    row: dict[str, object] = {}
    for col, cell in zip(CSV_COLUMNS, raw):
        if cell == "":
            row[col] = None
        elif col in _STR_COLUMNS:
            row[col] = cell
        elif col in _INT_COLUMNS:
            row[col] = int(cell)
        else:
            row[col] = float(cell)
    return row


def _dataset_row(features: dict[str, float], record: PerformanceRecord) -> dict[str, object]:
    row: dict[str, object] = dict(features)
    row["ram_gb"] = record.hardware.ram_gb
    row["cpu_cores"] = record.hardware.cpu_cores
    row["algorithm"] = record.algorithm.value
    row["instance_id"] = record.instance_id
    row["status"] = record.status.value
    row["t_s"] = record.t_s
    row["m_kb"] = record.m_kb
    row["o_pct"] = record.o_pct
    return row


def build_dataset(
    instances: Sequence[Instance],
    grid: Sequence[HardwareConfig],
    algorithms: Iterable[Algorithm],
    budget_s: float = DESK_BUDGET_S,
    base_seed: int = 0,
) -> Dataset:
    """Full cross product, sorted by (algorithm, instance_id, ram_gb, cores).

    Memory is the only hardware axis a solver reacts to, and the accounted
    peak is known per (algorithm, instance) alone, so each pair is solved
    once under the largest grid RAM and smaller-RAM cells replay either the
    same outcome or an OOM.
    """
    algs = sorted(set(algorithms), key=lambda a: a.value)
    if not instances or not grid or not algs:
        raise ValueError("instances, grid, and algorithms must be non-empty")
    ids = [inst.id for inst in instances]
    dupes = sorted({i for i in ids if ids.count(i) > 1})
    if dupes:
        raise ValueError(f"duplicate instance ids: {', '.join(dupes)}")
    by_id = {inst.id: inst for inst in instances}
    features = {inst.id: extract_features(inst).to_dict() for inst in instances}
    ref_cache: dict[str, int] = {}
    top_budget = Budget(
        time_limit_s=budget_s, mem_limit_kb=max(hw.mem_limit_kb for hw in grid)
    )
    grid_sorted = sorted(grid, key=lambda hw: (hw.ram_gb, hw.cpu_cores))

    rows: list[dict[str, object]] = []
    for algorithm in algs:
        for instance_id in sorted(by_id):
            instance = by_id[instance_id]
            seed = run_seed(base_seed, algorithm, instance_id)
            outcome = _solve(algorithm, instance, top_budget, seed)
            for hw in grid_sorted:
                if (
                    outcome.status is not SolveStatus.INFEASIBLE
                    and outcome.peak_mem_kb > hw.mem_limit_kb
                ):
                    cell = SolveOutcome(SolveStatus.OOM, None, None, 0.0, outcome.peak_mem_kb)
                else:
                    cell = outcome
                record = _record(instance, algorithm, hw, cell, ref_cache)
                rows.append(_dataset_row(features[instance_id], record))
    return Dataset(rows)


def split_dataset(
    dataset: Dataset,
    ratios: tuple[float, float, float] = (0.6, 0.2, 0.2),
    seed: int = 0,
) -> tuple[Dataset, Dataset, Dataset]:
    """Grouped split: every hardware row of an instance lands in one fold,
    so the same instance can never appear on both sides of a fit."""
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError(f"ratios must sum to 1, got {ratios}")
    if not dataset.rows:
        raise ValueError("cannot split an empty dataset")
    ids = dataset.instance_ids()
    rng = np.random.default_rng(seed)
    perm = [ids[i] for i in rng.permutation(len(ids))]
    n_train = int(len(ids) * ratios[0])
    n_val = int(len(ids) * ratios[1])
    folds = (
        set(perm[:n_train]),
        set(perm[n_train : n_train + n_val]),
        set(perm[n_train + n_val :]),
    )
    if not all(folds):
        raise ValueError(f"split {ratios} of {len(ids)} instances leaves an empty fold")
    return tuple(
        Dataset([r for r in dataset.rows if r["instance_id"] in fold]) for fold in folds
    )
