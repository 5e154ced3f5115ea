"""Exact reference optimum and the optimality-gap formula."""

from __future__ import annotations

import warnings

from ..instances import Instance, Variant
from .dp import solve_dp
from .types import Budget, ReferenceUnavailable, SolveStatus

REF_TIME_LIMIT_S = 3000.0
REF_MEM_LIMIT_KB = 16 * 1024 * 1024


def reference_optimum(instance: Instance, cache: dict[str, int] | None = None) -> int:
    """Exact optimum via DP under a deliberately generous budget.

    Raises ReferenceUnavailable when even that budget cannot certify an
    optimum (or the min variant is infeasible).  Pass a dict to memoize by
    instance id across repeated profiling of the same instance.
    """
    if cache is not None and instance.id in cache:
        return cache[instance.id]
    outcome = solve_dp(instance, Budget(REF_TIME_LIMIT_S, REF_MEM_LIMIT_KB))
    if outcome.status is not SolveStatus.OPTIMAL or outcome.value is None:
        raise ReferenceUnavailable(
            f"no exact reference for instance {instance.id!r}: DP ended {outcome.status.value}"
        )
    if cache is not None:
        cache[instance.id] = outcome.value
    return outcome.value


def optimality_gap(value: int, reference: int, variant: Variant) -> float:
    """Percent deviation from the exact optimum, non-negative by definition.

    A solver beating the reference means the reference is wrong; the gap is
    clamped to 0 and a warning raised so the bug is visible.
    """
    if reference == 0:
        raise ValueError("optimality gap undefined for reference value 0")
    if variant is Variant.MAX:
        gap = (reference - value) / reference * 100.0
    else:
        gap = (value - reference) / reference * 100.0
    if gap < 0.0:
        warnings.warn(
            f"solution value {value} beats reference {reference}; check the reference",
            RuntimeWarning,
            stacklevel=2,
        )
        return 0.0
    return gap
