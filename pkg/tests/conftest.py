"""Shared fixtures and independent oracles.

The brute-force enumerators here are the ground truth the exact solvers are
judged against: they examine every subset, so they cannot share a bug with
the dynamic program or the branch-and-bound search.
"""

from __future__ import annotations

import numpy as np
import pytest

from sla_select.instances import Instance, Item, Variant

# One line per acceptance criterion, filled by test_acceptance.py and echoed
# after the run so the verdicts survive pytest's output capture.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

# Cache of the (2^n, n) subset-membership table, keyed by n.
_BITS_CACHE: dict[int, np.ndarray] = {}


def _subset_bits(n: int) -> np.ndarray:
    if n not in _BITS_CACHE:
        if n > 22:
            raise ValueError(f"enumeration oracle capped at n=22, got {n}")
        codes = np.arange(1 << n, dtype=np.int64)
        _BITS_CACHE[n] = ((codes[:, None] >> np.arange(n)) & 1).astype(np.int8)
    return _BITS_CACHE[n]


def brute_force_max(weights, profits, capacity: int) -> int:
    """Best profit over every subset with total weight <= capacity."""
    bits = _subset_bits(len(weights))
    total_w = bits @ np.asarray(weights, dtype=np.int64)
    total_p = bits @ np.asarray(profits, dtype=np.int64)
    feasible = total_w <= capacity
    return int(total_p[feasible].max())


def brute_force_min(weights, profits, demand: int) -> int | None:
    """Least profit over every subset with total weight >= demand.

    Returns None when no subset covers the demand.
    """
    bits = _subset_bits(len(weights))
    total_w = bits @ np.asarray(weights, dtype=np.int64)
    total_p = bits @ np.asarray(profits, dtype=np.int64)
    feasible = total_w >= demand
    if not feasible.any():
        return None
    return int(total_p[feasible].min())


def make_instance(weights, profits, capacity, variant=Variant.MAX, ident="test") -> Instance:
    items = tuple(Item(int(w), int(p)) for w, p in zip(weights, profits))
    return Instance(items=items, capacity=int(capacity), variant=variant, id=ident)


def random_instance(rng: np.random.Generator, n: int, variant=Variant.MAX, ident=None) -> Instance:
    """A small random instance with a capacity that keeps both directions
    non-trivial (roughly half the total weight)."""
    weights = rng.integers(1, 100, size=n)
    profits = rng.integers(1, 100, size=n)
    frac = rng.uniform(0.3, 0.7)
    capacity = max(1, int(round(frac * int(weights.sum()))))
    if ident is None:
        ident = f"rand-{variant.value}-{n}-{rng.integers(1 << 30)}"
    return make_instance(weights, profits, capacity, variant, ident)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def tiny_instance():
    # 4 items, capacity 10: the best subset is {0, 1} (weight 9, profit 19).
    return make_instance([5, 4, 7, 5], [10, 9, 12, 7], 10, Variant.MAX, "tiny-max")


@pytest.fixture(scope="session")
def tiny_min_instance():
    # Demand 10: the cheapest covering subset is {0, 3} (weight 10, profit 17).
    return make_instance([5, 4, 7, 5], [10, 9, 12, 7], 10, Variant.MIN, "tiny-min")
