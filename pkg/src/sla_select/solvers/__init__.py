"""Budgeted, deterministic 0-1 knapsack solvers (max and min variants)."""

from ._backend import backend_name
from .bnb import solve_bnb
from .common import ratio_order, root_bound
from .dp import solve_dp
from .ga import solve_ga
from .greedy import solve_greedy
from .reference import REF_MEM_LIMIT_KB, REF_TIME_LIMIT_S, optimality_gap, reference_optimum
from .types import (
    DEFAULT_MEM_LIMIT_KB,
    DEFAULT_TIME_LIMIT_S,
    Algorithm,
    Budget,
    ReferenceUnavailable,
    SolveOutcome,
    SolveStatus,
)

SOLVERS = {
    Algorithm.GREEDY: solve_greedy,
    Algorithm.DP: solve_dp,
    Algorithm.BNB: solve_bnb,
    Algorithm.GA: solve_ga,
}

__all__ = [
    "Algorithm",
    "Budget",
    "DEFAULT_MEM_LIMIT_KB",
    "DEFAULT_TIME_LIMIT_S",
    "REF_MEM_LIMIT_KB",
    "REF_TIME_LIMIT_S",
    "ReferenceUnavailable",
    "SOLVERS",
    "SolveOutcome",
    "SolveStatus",
    "backend_name",
    "optimality_gap",
    "ratio_order",
    "reference_optimum",
    "root_bound",
    "solve_bnb",
    "solve_dp",
    "solve_ga",
    "solve_greedy",
]
