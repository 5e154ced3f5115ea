"""Pure-Python/numpy solver kernels.

Fallback twin of the compiled extension ``_kernels``.  Both backends must
traverse identical search trees and count identical work units so that
outcomes — values, selections, and the simulated clock — are bit-for-bit
equal regardless of which backend is active.
"""

from __future__ import annotations

import numpy as np

from .cost_model import BNB_NODE_UNITS, BNB_SCAN_UNITS

BACKEND_NAME = "pure"

_INF_COST = np.int64(1) << 60


def dp_max_kernel(weights: np.ndarray, profits: np.ndarray, capacity: int):
    """Exact 0-1 knapsack by value-table DP over residual capacities.

    Returns (value, selection uint8[n], cells) where cells is the number of
    table-cell updates charged to the simulated clock.  Ties prefer skipping
    an item, so reconstruction is deterministic.
    """
    n = len(weights)
    states = capacity + 1
    prev = np.zeros(states, dtype=np.int64)
    take_rows = []
    for i in range(n):
        wi = int(weights[i])
        pi = int(profits[i])
        take_full = np.zeros(states, dtype=bool)
        if wi <= capacity:
            cand = prev[: states - wi] + pi
            tail = prev[wi:]
            take = cand > tail
            take_full[wi:] = take
            new = prev.copy()
            new[wi:] = np.where(take, cand, tail)
            prev = new
        take_rows.append(np.packbits(take_full))
    selection = np.zeros(n, dtype=np.uint8)
    c = capacity
    for i in range(n - 1, -1, -1):
        if take_rows[i][c >> 3] & (0x80 >> (c & 7)):
            selection[i] = 1
            c -= int(weights[i])
    return int(prev[capacity]), selection, n * states


def dp_min_kernel(weights: np.ndarray, profits: np.ndarray, demand: int):
    """Exact covering variant: cheapest profit with total weight >= demand.

    State j is "at least j weight still to cover", saturating at 0.  The
    caller must guarantee feasibility (sum of weights >= demand).
    """
    n = len(weights)
    states = demand + 1
    prev = np.full(states, _INF_COST, dtype=np.int64)
    prev[0] = 0
    take_rows = []
    for i in range(n):
        wi = int(weights[i])
        pi = int(profits[i])
        if wi >= states:
            shifted = np.full(states, prev[0], dtype=np.int64)
        else:
            shifted = np.concatenate([np.full(wi, prev[0], dtype=np.int64), prev[: states - wi]])
        cand = shifted + pi
        take = cand < prev
        prev = np.where(take, cand, prev)
        take_rows.append(np.packbits(take))
    selection = np.zeros(n, dtype=np.uint8)
    j = demand
    for i in range(n - 1, -1, -1):
        if take_rows[i][j >> 3] & (0x80 >> (j & 7)):
            selection[i] = 1
            j = max(0, j - int(weights[i]))
    return int(prev[demand]), selection, n * states


def bnb_max_kernel(sw: np.ndarray, sp: np.ndarray, capacity: int, budget_units: int):
    """Depth-first branch-and-bound on ratio-sorted items (take branch first)
    with the fractional packing bound.

    Items arrive pre-sorted; the returned selection is in sorted order.
    Returns (best_value, best_selection uint8[n], units, completed).
    """
    n = len(sw)
    w = [int(x) for x in sw]
    p = [int(x) for x in sp]
    best = 0
    best_sel = np.zeros(n, dtype=np.uint8)
    cur = bytearray(n)
    units = 0
    completed = True

    # Frames: (op, level, weight, profit); op 0 expands a node, 1 sets the
    # current item's bit, 2 clears it.
    stack = [(0, 0, 0, 0)]
    while stack:
        op, level, wt, pf = stack.pop()
        if op == 1:
            cur[level] = 1
            continue
        if op == 2:
            cur[level] = 0
            continue
        units += BNB_NODE_UNITS
        if units > budget_units:
            completed = False
            break
        if level == n:
            if pf > best:
                best = pf
                best_sel = np.frombuffer(bytes(cur), dtype=np.uint8).copy()
            continue
        # Fractional packing bound over the remaining items.
        bound = 0.0
        remaining = capacity - wt
        for k in range(level, n):
            units += BNB_SCAN_UNITS
            if w[k] <= remaining:
                remaining -= w[k]
                bound += p[k]
            else:
                if remaining > 0:
                    bound += remaining * (p[k] / w[k])
                break
        if pf + bound <= best:
            continue
        # Skip child runs after the take subtree unwinds.
        stack.append((0, level + 1, wt, pf))
        if wt + w[level] <= capacity:
            stack.append((2, level, 0, 0))
            stack.append((0, level + 1, wt + w[level], pf + p[level]))
            stack.append((1, level, 0, 0))
    return best, best_sel, units, completed


def bnb_min_kernel(sw: np.ndarray, sp: np.ndarray, demand: int, budget_units: int):
    """Covering-variant branch-and-bound with the fractional covering bound.

    A node whose weight already covers the demand is a complete solution;
    exploring further could only add profit.  Returns
    (best_value or None, best_selection or None, units, completed).
    """
    n = len(sw)
    w = [int(x) for x in sw]
    p = [int(x) for x in sp]
    best: int | None = None
    best_sel: np.ndarray | None = None
    cur = bytearray(n)
    units = 0
    completed = True

    stack = [(0, 0, 0, 0)]
    while stack:
        op, level, wt, pf = stack.pop()
        if op == 1:
            cur[level] = 1
            continue
        if op == 2:
            cur[level] = 0
            continue
        units += BNB_NODE_UNITS
        if units > budget_units:
            completed = False
            break
        if wt >= demand:
            if best is None or pf < best:
                best = pf
                best_sel = np.frombuffer(bytes(cur), dtype=np.uint8).copy()
            continue
        if level == n:
            continue
        # Fractional covering bound over the remaining items.
        bound = 0.0
        remaining = demand - wt
        covered = False
        for k in range(level, n):
            units += BNB_SCAN_UNITS
            if w[k] < remaining:
                remaining -= w[k]
                bound += p[k]
            else:
                bound += (remaining / w[k]) * p[k]
                covered = True
                break
        if not covered:
            continue
        if best is not None and pf + bound >= best:
            continue
        stack.append((0, level + 1, wt, pf))
        stack.append((2, level, 0, 0))
        stack.append((0, level + 1, wt + w[level], pf + p[level]))
        stack.append((1, level, 0, 0))
    return best, best_sel, units, completed
