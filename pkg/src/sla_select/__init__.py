"""SLA-aware algorithm selection for the 0-1 knapsack problem.

The pipeline: generate instances, profile solvers over a simulated hardware
grid, train per-algorithm performance predictors, and pick SLA-compliant
algorithms with the decider.
"""

__version__ = "0.1.0"
