"""Genetic-algorithm solver with feasibility repair."""

from __future__ import annotations

import math

import numpy as np

from ..instances import Instance, Variant
from . import cost_model as cm
from .common import ratio_order
from .types import Budget, SolveOutcome, SolveStatus

_POP = cm.GA_POPULATION
_TOURNAMENT = 3
_CROSSOVER_P = 0.9


def _repair_max(pop: np.ndarray, weights: np.ndarray, drop_order: np.ndarray, capacity: int) -> None:
    """Drop worst-ratio selected items, in place, until every row fits."""
    wt = pop @ weights
    bad = wt > capacity
    if not bad.any():
        return
    rows = pop[bad][:, drop_order].astype(bool)
    w_drop = weights[drop_order]
    contrib = np.where(rows, w_drop, 0)
    cum = np.cumsum(contrib, axis=1)
    excess = (wt[bad] - capacity)[:, None]
    drop = rows & (cum - contrib < excess)
    fixed = pop[bad]
    fixed[:, drop_order] = (rows & ~drop).astype(np.uint8)
    pop[bad] = fixed


def _repair_min(pop: np.ndarray, weights: np.ndarray, add_order: np.ndarray, demand: int) -> None:
    """Add best-ratio unselected items, in place, until every row covers."""
    wt = pop @ weights
    bad = wt < demand
    if not bad.any():
        return
    rows = pop[bad][:, add_order].astype(bool)
    w_add = weights[add_order]
    contrib = np.where(~rows, w_add, 0)
    cum = np.cumsum(contrib, axis=1)
    deficit = (demand - wt[bad])[:, None]
    add = (~rows) & (cum - contrib < deficit)
    fixed = pop[bad]
    fixed[:, add_order] = (rows | add).astype(np.uint8)
    pop[bad] = fixed


def solve_ga(instance: Instance, budget: Budget | None = None, seed: int = 0) -> SolveOutcome:
    """Steady GA: tournament selection, single-point crossover, bit-flip
    mutation, one elite, and ratio-based repair after every operator.

    Runs as many full generations as the time budget allows; the budget is
    the stopping rule, so a normal run ends Feasible with the best repaired
    individual seen.  A budget too small for even the initial population
    ends Timeout (with the initial incumbent if the instance is feasible).
    """
    budget = budget or Budget()
    n = instance.n
    weights = instance.weights()
    profits = instance.profits()
    maximize = instance.variant is Variant.MAX

    if not maximize and int(weights.sum()) < instance.capacity:
        return SolveOutcome(
            SolveStatus.INFEASIBLE, None, None, cm.scan_seconds(n), cm.bytes_to_kb(n * 8)
        )
    peak_kb = cm.bytes_to_kb(cm.ga_population_bytes(n))
    if peak_kb > budget.mem_limit_kb:
        return SolveOutcome(SolveStatus.OOM, None, None, 0.0, peak_kb)

    order = ratio_order(weights, profits, instance.variant)
    # Max repair drops from the worst ratio backwards; min repair adds from
    # the best cover ratio forwards.  Both reuse the solver's sort order.
    drop_order = order[::-1].copy()
    add_order = order.copy()
    cap = instance.capacity

    gen_cost = cm.ga_generation_seconds(n)
    init_cost = gen_cost
    generations = max(0, math.floor((budget.time_limit_s - init_cost) / gen_cost))

    rng = np.random.default_rng(seed)
    pop = (rng.random((_POP, n)) < 0.5).astype(np.uint8)
    if maximize:
        _repair_max(pop, weights, drop_order, cap)
    else:
        _repair_min(pop, weights, add_order, cap)
    fitness = pop @ profits
    best_idx = int(np.argmax(fitness) if maximize else np.argmin(fitness))
    best_value = int(fitness[best_idx])
    best_row = pop[best_idx].copy()

    for _ in range(generations):
        contestants = rng.integers(0, _POP, size=(_POP - 1, 2, _TOURNAMENT))
        scores = fitness[contestants]
        win = np.argmax(scores, axis=2) if maximize else np.argmin(scores, axis=2)
        winners = np.take_along_axis(contestants, win[:, :, None], axis=2)[:, :, 0]
        p1 = pop[winners[:, 0]]
        p2 = pop[winners[:, 1]]
        do_cross = rng.random(_POP - 1) < _CROSSOVER_P
        points = rng.integers(1, n, size=_POP - 1) if n > 1 else np.ones(_POP - 1, dtype=np.int64)
        head = np.arange(n)[None, :] < points[:, None]
        children = np.where(do_cross[:, None] & ~head, p2, p1)
        flips = rng.random((_POP - 1, n)) < (1.0 / n)
        children = (children ^ flips).astype(np.uint8)
        if maximize:
            _repair_max(children, weights, drop_order, cap)
        else:
            _repair_min(children, weights, add_order, cap)
        elite_idx = int(np.argmax(fitness) if maximize else np.argmin(fitness))
        pop = np.concatenate([pop[elite_idx][None, :].copy(), children])
        fitness = pop @ profits
        cand = int(np.argmax(fitness) if maximize else np.argmin(fitness))
        cand_value = int(fitness[cand])
        if (maximize and cand_value > best_value) or (not maximize and cand_value < best_value):
            best_value = cand_value
            best_row = pop[cand].copy()

    elapsed = init_cost + generations * gen_cost
    chosen = tuple(int(i) for i in np.flatnonzero(best_row))
    if init_cost > budget.time_limit_s:
        return SolveOutcome(SolveStatus.TIMEOUT, best_value, chosen, init_cost, peak_kb)
    return SolveOutcome(SolveStatus.FEASIBLE, best_value, chosen, elapsed, peak_kb)
