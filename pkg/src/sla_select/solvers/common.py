"""Ratio orderings and fractional relaxation bounds shared across solvers.

All ratio sorts break ties by lower weight, then lower original index, so
every solver sees the same deterministic item order.
"""

from __future__ import annotations

import numpy as np

from ..instances import Instance, Variant


def ratio_order(weights: np.ndarray, profits: np.ndarray, variant: Variant) -> np.ndarray:
    """Item indices sorted by profit/weight: descending for max, ascending
    for min; ties by lower weight, then lower index."""
    ratios = profits / weights
    idx = np.arange(len(weights))
    key = -ratios if variant == Variant.MAX else ratios
    # np.lexsort sorts by the last key first.
    return np.lexsort((idx, weights, key))


def fractional_pack_bound(
    weights: np.ndarray, profits: np.ndarray, order: np.ndarray, start: int, capacity: int
) -> tuple[float, int]:
    """LP-relaxation upper bound on the profit packable into ``capacity``
    using items ``order[start:]`` (descending-ratio order).

    Returns (bound, items_scanned).
    """
    bound = 0.0
    remaining = capacity
    scanned = 0
    for k in range(start, len(order)):
        scanned += 1
        i = order[k]
        w = weights[i]
        if w <= remaining:
            remaining -= w
            bound += profits[i]
        else:
            if remaining > 0:
                bound += remaining * (profits[i] / w)
            break
    return bound, scanned


def fractional_cover_bound(
    weights: np.ndarray, profits: np.ndarray, order: np.ndarray, start: int, demand: int
) -> tuple[float, int]:
    """LP-relaxation lower bound on the profit needed to cover ``demand``
    using items ``order[start:]`` (ascending-ratio order).

    Returns (bound, items_scanned); bound is +inf when the remaining items
    cannot cover the demand.
    """
    if demand <= 0:
        return 0.0, 0
    bound = 0.0
    remaining = demand
    scanned = 0
    for k in range(start, len(order)):
        scanned += 1
        i = order[k]
        w = weights[i]
        if w < remaining:
            remaining -= w
            bound += profits[i]
        else:
            bound += (remaining / w) * profits[i]
            return bound, scanned
    return float("inf"), scanned


def root_bound(instance: Instance) -> float:
    """Fractional relaxation bound at the root of the search tree."""
    w, p = instance.weights(), instance.profits()
    order = ratio_order(w, p, instance.variant)
    if instance.variant == Variant.MAX:
        bound, _ = fractional_pack_bound(w, p, order, 0, instance.capacity)
    else:
        bound, _ = fractional_cover_bound(w, p, order, 0, instance.capacity)
    return bound
