"""Knapsack instance model, parameterized generation, and canonical file I/O.

An instance file is UTF-8 text: line 1 is ``<n> <capacity> <max|min>``,
followed by one ``<weight> <profit>`` line per item.  The format carries no
instance id; the id is taken from the file's stem on load, so the canonical
on-disk name for an instance is ``<id>.txt``.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path

import numpy as np

__all__ = [
    "Variant",
    "Item",
    "Instance",
    "GeneratorSpec",
    "InstanceFormatError",
    "generate_instance",
    "load_instance",
    "write_instance",
]


class Variant(str, Enum):
    """Objective direction: maximize profit under a weight budget, or
    minimize profit while covering a weight demand."""

    MAX = "max"
    MIN = "min"


class InstanceFormatError(ValueError):
    """Raised when an instance file does not match the canonical format."""

    def __init__(self, path: Path | str, line: int, message: str):
        self.path = str(path)
        self.line = line
        super().__init__(f"{path}:{line}: {message}")


@dataclass(frozen=True)
class Item:
    weight: int
    profit: int

    def __post_init__(self):
        if self.weight < 1:
            raise ValueError(f"item weight must be >= 1, got {self.weight}")
        if self.profit < 1:
            raise ValueError(f"item profit must be >= 1, got {self.profit}")


@dataclass(frozen=True)
class Instance:
    """An immutable 0-1 knapsack instance.

    ``capacity`` is the weight budget for the max variant and the demand to
    cover for the min variant.
    """

    items: tuple[Item, ...]
    capacity: int
    variant: Variant
    id: str

    def __post_init__(self):
        if not self.items:
            raise ValueError("instance must have at least one item")
        if self.capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {self.capacity}")

    @property
    def n(self) -> int:
        return len(self.items)

    def weights(self) -> np.ndarray:
        return np.array([it.weight for it in self.items], dtype=np.int64)

    def profits(self) -> np.ndarray:
        return np.array([it.profit for it in self.items], dtype=np.int64)

    def total_weight(self) -> int:
        return sum(it.weight for it in self.items)


@dataclass(frozen=True)
class GeneratorSpec:
    """Knobs for synthetic instance generation.

    ``correlation`` targets the weight-profit correlation: its sign picks the
    slope of the affine profit component and its magnitude the mixing weight
    between the affine and an independent component.  ``noise_sigma`` is the
    scale of Gaussian profit noise.
    """

    n: int
    capacity_fraction: float
    correlation: float
    noise_sigma: float
    weight_max: int
    seed: int
    variant: Variant = Variant.MAX

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if not 0.0 < self.capacity_fraction < 1.0:
            raise ValueError(
                f"capacity_fraction must lie in (0, 1), got {self.capacity_fraction}"
            )
        if not -1.0 <= self.correlation <= 1.0:
            raise ValueError(f"correlation must lie in [-1, 1], got {self.correlation}")
        if self.noise_sigma < 0.0:
            raise ValueError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        if self.weight_max < 2:
            raise ValueError(f"weight_max must be >= 2, got {self.weight_max}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def _spec_digest(spec: GeneratorSpec) -> str:
    key = (
        f"{spec.n}|{spec.capacity_fraction!r}|{spec.correlation!r}|"
        f"{spec.noise_sigma!r}|{spec.weight_max}|{spec.seed}|{spec.variant.value}"
    )
    return hashlib.blake2b(key.encode(), digest_size=6).hexdigest()


def generate_instance(spec: GeneratorSpec) -> Instance:
    """Generate a deterministic instance from ``spec``.

    Weights are uniform integers in [1, weight_max].  Profits are
    ``round(|corr| * affine + (1 - |corr|) * independent + noise)`` clipped to
    >= 1, where the affine part is ``w`` for positive correlation and
    ``weight_max + 1 - w`` for negative (slope magnitude 1), and the
    independent part is a fresh uniform draw.  Capacity is
    ``round(capacity_fraction * sum(weights))``, half up, floored at 1.
    """
    rng = np.random.default_rng(spec.seed)
    w = rng.integers(1, spec.weight_max + 1, size=spec.n)
    indep = rng.integers(1, spec.weight_max + 1, size=spec.n)
    noise = rng.standard_normal(spec.n) * spec.noise_sigma

    mix = abs(spec.correlation)
    affine = w if spec.correlation >= 0 else spec.weight_max + 1 - w
    p_real = mix * affine + (1.0 - mix) * indep + noise
    p = np.maximum(1, np.floor(p_real + 0.5).astype(np.int64))

    capacity = max(1, _round_half_up(spec.capacity_fraction * int(w.sum())))
    items = tuple(Item(int(wi), int(pi)) for wi, pi in zip(w, p))
    ident = f"gen-{spec.variant.value}-n{spec.n}-{_spec_digest(spec)}"
    return Instance(items=items, capacity=capacity, variant=spec.variant, id=ident)


def write_instance(instance: Instance, path: str | Path) -> None:
    """Write ``instance`` in the canonical format.

    The id is not stored in the file; name the file ``<id>.txt`` to round-trip.
    """
    path = Path(path)
    lines = [f"{instance.n} {instance.capacity} {instance.variant.value}"]
    lines.extend(f"{it.weight} {it.profit}" for it in instance.items)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_instance(path: str | Path) -> Instance:
    """Parse a canonical instance file; the instance id is the file stem."""
    path = Path(path)
    raw = path.read_text(encoding="utf-8")
    lines = raw.splitlines()
    if not lines or not lines[0].strip():
        raise InstanceFormatError(path, 1, "missing header line")

    header = lines[0].split()
    if len(header) != 3:
        raise InstanceFormatError(
            path, 1, f"header must be '<n> <capacity> <max|min>', got {lines[0]!r}"
        )
    try:
        n = int(header[0])
        capacity = int(header[1])
    except ValueError:
        raise InstanceFormatError(path, 1, f"non-integer header fields in {lines[0]!r}")
    if header[2] not in (Variant.MAX.value, Variant.MIN.value):
        raise InstanceFormatError(path, 1, f"variant must be 'max' or 'min', got {header[2]!r}")
    variant = Variant(header[2])
    if n < 1:
        raise InstanceFormatError(path, 1, f"item count must be >= 1, got {n}")
    if capacity < 1:
        raise InstanceFormatError(path, 1, f"capacity must be >= 1, got {capacity}")

    body = lines[1:]
    if len(body) < n:
        raise InstanceFormatError(path, len(lines) + 1, f"expected {n} item lines, found {len(body)}")
    if len(body) > n and any(s.strip() for s in body[n:]):
        raise InstanceFormatError(path, n + 2, "trailing data after item lines")

    items = []
    for i, line in enumerate(body[:n]):
        lineno = i + 2
        parts = line.split()
        if len(parts) != 2:
            raise InstanceFormatError(path, lineno, f"item line must be '<weight> <profit>', got {line!r}")
        try:
            weight, profit = int(parts[0]), int(parts[1])
        except ValueError:
            raise InstanceFormatError(path, lineno, f"non-integer item fields in {line!r}")
        if weight < 1:
            raise InstanceFormatError(path, lineno, f"weight must be >= 1, got {weight}")
        if profit < 1:
            raise InstanceFormatError(path, lineno, f"profit must be >= 1, got {profit}")
        items.append(Item(weight, profit))

    return Instance(items=tuple(items), capacity=capacity, variant=variant, id=path.stem)


def with_id(instance: Instance, new_id: str) -> Instance:
    """Return a copy of ``instance`` renamed to ``new_id``."""
    return replace(instance, id=new_id)
