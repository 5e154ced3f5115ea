"""Branch-and-bound solver."""

from __future__ import annotations

import math

import numpy as np

from ..instances import Instance, Variant
from . import cost_model as cm
from ._backend import bnb_max_kernel, bnb_min_kernel
from .common import ratio_order
from .types import Budget, SolveOutcome, SolveStatus


def solve_bnb(instance: Instance, budget: Budget | None = None) -> SolveOutcome:
    """Depth-first branch-and-bound over ratio-sorted items.

    The deadline converts to a work-unit budget before the search starts;
    when the search trips it the incumbent found so far is returned (max
    always has the empty pack as incumbent, min may have none yet).
    """
    budget = budget or Budget()
    n = instance.n
    weights = instance.weights()
    profits = instance.profits()

    if instance.variant is Variant.MIN and int(weights.sum()) < instance.capacity:
        elapsed = cm.scan_seconds(n)
        return SolveOutcome(SolveStatus.INFEASIBLE, None, None, elapsed, cm.bytes_to_kb(n * 8))

    peak_kb = cm.bytes_to_kb(cm.bnb_stack_bytes(n))
    if peak_kb > budget.mem_limit_kb:
        return SolveOutcome(SolveStatus.OOM, None, None, 0.0, peak_kb)

    setup = cm.sort_seconds(n)
    budget_units = max(0, math.floor((budget.time_limit_s - setup) / cm.BNB_UNIT_SECONDS))
    order = ratio_order(weights, profits, instance.variant)
    sw = weights[order]
    sp = profits[order]

    if instance.variant is Variant.MAX:
        value, sel, units, completed = bnb_max_kernel(sw, sp, instance.capacity, budget_units)
    else:
        value, sel, units, completed = bnb_min_kernel(sw, sp, instance.capacity, budget_units)
    elapsed = setup + units * cm.BNB_UNIT_SECONDS

    if sel is None:
        chosen = None
    else:
        chosen = tuple(int(i) for i in np.sort(order[np.flatnonzero(np.asarray(sel))]))
    if completed:
        return SolveOutcome(SolveStatus.OPTIMAL, value, chosen, elapsed, peak_kb)
    return SolveOutcome(SolveStatus.TIMEOUT, value, chosen, elapsed, peak_kb)
