"""Instance feature extraction and hardware descriptors for the predictors."""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .instances import Instance

FEATURE_NAMES: tuple[str, ...] = (
    "n_items",
    "capacity",
    "capacity_ratio",
    "w_min",
    "w_max",
    "w_mean",
    "w_std",
    "w_median",
    "p_min",
    "p_max",
    "p_mean",
    "p_std",
    "p_median",
    "e_min",
    "e_max",
    "e_mean",
    "e_std",
    "e_median",
    "corr_wp",
    "renting_ratio",
    "frac_oversized",
    "cv_efficiency",
)

RAM_GB_GRID: tuple[int, ...] = (4, 8, 16, 32, 64, 128, 256)
CPU_CORES_GRID: tuple[int, ...] = (8, 32)

MODEL_INPUT_NAMES: tuple[str, ...] = FEATURE_NAMES + ("ram_gb", "cpu_cores")


@dataclass(frozen=True)
class HardwareConfig:
    """One cell of the profiling grid.  Cores never change solver timing
    (all solvers are single-threaded); RAM caps the memory accounting."""

    ram_gb: int
    cpu_cores: int

    def __post_init__(self) -> None:
        if self.ram_gb not in RAM_GB_GRID:
            raise ValueError(f"ram_gb must be one of {RAM_GB_GRID}, got {self.ram_gb}")
        if self.cpu_cores not in CPU_CORES_GRID:
            raise ValueError(f"cpu_cores must be one of {CPU_CORES_GRID}, got {self.cpu_cores}")

    @property
    def mem_limit_kb(self) -> int:
        return self.ram_gb * 1_048_576


def hardware_grid(
    ram_gb: tuple[int, ...] = RAM_GB_GRID, cpu_cores: tuple[int, ...] = CPU_CORES_GRID
) -> list[HardwareConfig]:
    """Full RAM x cores grid in deterministic (ram, cores) order."""
    return [HardwareConfig(r, c) for r in ram_gb for c in cpu_cores]


@dataclass(frozen=True)
class FeatureVector:
    n_items: float
    capacity: float
    capacity_ratio: float
    w_min: float
    w_max: float
    w_mean: float
    w_std: float
    w_median: float
    p_min: float
    p_max: float
    p_mean: float
    p_std: float
    p_median: float
    e_min: float
    e_max: float
    e_mean: float
    e_std: float
    e_median: float
    corr_wp: float
    renting_ratio: float
    frac_oversized: float
    cv_efficiency: float

    def to_array(self) -> np.ndarray:
        return np.array([getattr(self, f.name) for f in fields(self)], dtype=np.float64)

    def to_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def extract_features(instance: Instance) -> FeatureVector:
    """22 summary statistics of an instance.

    Conventions for degenerate inputs: population std everywhere, corr_wp=0
    when either marginal std is 0, cv_efficiency=0 when mean efficiency is 0.
    """
    w = instance.weights().astype(np.float64)
    p = instance.profits().astype(np.float64)
    e = p / w
    c = float(instance.capacity)
    w_std = float(w.std())
    p_std = float(p.std())
    e_mean = float(e.mean())
    e_std = float(e.std())
    if w_std == 0.0 or p_std == 0.0:
        corr = 0.0
    else:
        corr = float(np.corrcoef(w, p)[0, 1])
    return FeatureVector(
        n_items=float(instance.n),
        capacity=c,
        capacity_ratio=c / float(w.sum()),
        w_min=float(w.min()),
        w_max=float(w.max()),
        w_mean=float(w.mean()),
        w_std=w_std,
        w_median=float(np.median(w)),
        p_min=float(p.min()),
        p_max=float(p.max()),
        p_mean=float(p.mean()),
        p_std=p_std,
        p_median=float(np.median(p)),
        e_min=float(e.min()),
        e_max=float(e.max()),
        e_mean=e_mean,
        e_std=e_std,
        e_median=float(np.median(e)),
        corr_wp=corr,
        renting_ratio=float(p.sum() / w.sum()),
        frac_oversized=float((w > c).sum() / instance.n),
        cv_efficiency=0.0 if e_mean == 0.0 else e_std / e_mean,
    )


def model_input(features: FeatureVector, hardware: HardwareConfig) -> np.ndarray:
    """Length-24 model input: the 22 features then [ram_gb, cpu_cores]."""
    return np.concatenate(
        [features.to_array(), [float(hardware.ram_gb), float(hardware.cpu_cores)]]
    )
