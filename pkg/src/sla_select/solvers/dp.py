"""Exact dynamic-programming solver."""

from __future__ import annotations

from ..instances import Instance, Variant
from . import cost_model as cm
from ._backend import dp_max_kernel, dp_min_kernel
from .types import Budget, SolveOutcome, SolveStatus


def solve_dp(instance: Instance, budget: Budget | None = None) -> SolveOutcome:
    """Pseudo-polynomial DP, exact on both variants.

    Table size and fill time are known before any work happens, so memory
    and deadline violations are detected upfront; a timed-out DP yields no
    incumbent.  The memory check runs first: the table must exist before a
    single cell can be filled.
    """
    budget = budget or Budget()
    n = instance.n
    weights = instance.weights()
    profits = instance.profits()
    states = instance.capacity

    if instance.variant is Variant.MIN and int(weights.sum()) < instance.capacity:
        elapsed = cm.scan_seconds(n)
        return SolveOutcome(SolveStatus.INFEASIBLE, None, None, elapsed, cm.bytes_to_kb(n * 8))

    peak_kb = cm.bytes_to_kb(cm.dp_table_bytes(n, states))
    if peak_kb > budget.mem_limit_kb:
        return SolveOutcome(SolveStatus.OOM, None, None, 0.0, peak_kb)
    elapsed = cm.dp_seconds(n, states)
    if elapsed > budget.time_limit_s:
        return SolveOutcome(SolveStatus.TIMEOUT, None, None, budget.time_limit_s, peak_kb)

    if instance.variant is Variant.MAX:
        value, selection, _ = dp_max_kernel(weights, profits, states)
    else:
        value, selection, _ = dp_min_kernel(weights, profits, states)
    chosen = tuple(int(i) for i in selection.nonzero()[0])
    return SolveOutcome(SolveStatus.OPTIMAL, int(value), chosen, elapsed, peak_kb)
