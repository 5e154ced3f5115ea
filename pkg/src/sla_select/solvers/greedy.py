"""Ratio-greedy solver for both knapsack variants."""

from __future__ import annotations

import numpy as np

from ..instances import Instance, Variant
from . import cost_model as cm
from .common import ratio_order
from .types import Budget, SolveOutcome, SolveStatus


def solve_greedy(instance: Instance, budget: Budget | None = None) -> SolveOutcome:
    """Greedy by profit/weight ratio.

    Max variant: pack ratio-sorted items that still fit, then compare against
    the best single fitting item and keep the better of the two, which keeps
    the result within half of the optimum.  Min variant: add cheapest-ratio
    items until the demand is covered.
    """
    budget = budget or Budget()
    n = instance.n
    weights = instance.weights()
    profits = instance.profits()
    elapsed = cm.greedy_seconds(n)
    peak_kb = cm.bytes_to_kb(cm.greedy_buffer_bytes(n))
    if peak_kb > budget.mem_limit_kb:
        return SolveOutcome(SolveStatus.OOM, None, None, 0.0, peak_kb)
    if elapsed > budget.time_limit_s:
        return SolveOutcome(SolveStatus.TIMEOUT, None, None, budget.time_limit_s, peak_kb)

    order = ratio_order(weights, profits, instance.variant)
    if instance.variant is Variant.MAX:
        capacity = instance.capacity
        room = capacity
        value = 0
        chosen: list[int] = []
        for idx in order:
            if weights[idx] <= room:
                room -= int(weights[idx])
                value += int(profits[idx])
                chosen.append(int(idx))
        fits = weights <= capacity
        if fits.any():
            single = int(np.flatnonzero(fits)[np.argmax(profits[fits])])
            if profits[single] > value:
                value = int(profits[single])
                chosen = [single]
        return SolveOutcome(SolveStatus.FEASIBLE, value, tuple(sorted(chosen)), elapsed, peak_kb)

    demand = instance.capacity
    if int(weights.sum()) < demand:
        return SolveOutcome(SolveStatus.INFEASIBLE, None, None, elapsed, peak_kb)
    covered = 0
    value = 0
    chosen = []
    for idx in order:
        if covered >= demand:
            break
        covered += int(weights[idx])
        value += int(profits[idx])
        chosen.append(int(idx))
    return SolveOutcome(SolveStatus.FEASIBLE, value, tuple(sorted(chosen)), elapsed, peak_kb)
