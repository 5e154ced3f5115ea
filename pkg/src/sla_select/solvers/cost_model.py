"""Deterministic time and memory accounting for the solvers.

Recorded solve time is a simulated clock: each solver counts its
characteristic operations and converts them to seconds with the calibration
constants below.  Peak memory is likewise charged from the sizes of each
solver's principal data structures.  Both are therefore exact functions of
the inputs — reruns of the same configuration reproduce the same numbers
bit-for-bit, which real wall-clock or RSS measurements cannot do.

The constants approximate a mid-range core running the compiled kernels; they
are calibration parameters, not measurements.
"""

from __future__ import annotations

import math

# Time: seconds per operation unit.
DP_CELL_SECONDS = 1e-8        # one DP table-cell update
BNB_UNIT_SECONDS = 1e-8       # one unit of branch-and-bound work (see below)
BNB_NODE_UNITS = 100          # units charged per expanded node
BNB_SCAN_UNITS = 1            # units charged per item visited in a bound
GA_GENE_SECONDS = 5e-5        # one gene visit per individual per generation
SORT_OP_SECONDS = 5e-8        # one comparison unit of an n log n sort
SCAN_OP_SECONDS = 1e-8        # one linear-pass item visit

# Memory: bytes charged per structure element.
DP_TABLE_BYTES_PER_CELL = 8   # value + packed choice tables
BNB_NODE_BYTES = 32           # one stack frame
GA_GENE_BYTES = 1             # one gene in the population matrix
GREEDY_ENTRY_BYTES = 16       # one sort-buffer entry

GA_POPULATION = 100


def sort_seconds(n: int) -> float:
    """Simulated cost of ratio-sorting ``n`` items."""
    return n * max(1, math.ceil(math.log2(max(n, 2)))) * SORT_OP_SECONDS


def scan_seconds(n: int) -> float:
    return n * SCAN_OP_SECONDS


def dp_cells(n: int, states: int) -> int:
    """Number of table-cell updates for a DP over ``states`` residual states."""
    return n * (states + 1)


def dp_seconds(n: int, states: int) -> float:
    return dp_cells(n, states) * DP_CELL_SECONDS


def dp_table_bytes(n: int, states: int) -> int:
    return (n + 1) * (states + 1) * DP_TABLE_BYTES_PER_CELL


def bnb_seconds(units: int) -> float:
    return units * BNB_UNIT_SECONDS


def bnb_stack_bytes(max_depth: int) -> int:
    return max_depth * BNB_NODE_BYTES


def ga_generation_seconds(n: int, population: int = GA_POPULATION) -> float:
    return population * n * GA_GENE_SECONDS


def ga_population_bytes(n: int, population: int = GA_POPULATION) -> int:
    return population * n * GA_GENE_BYTES


def greedy_seconds(n: int) -> float:
    return sort_seconds(n) + scan_seconds(n)


def greedy_buffer_bytes(n: int) -> int:
    return n * GREEDY_ENTRY_BYTES


def bytes_to_kb(n_bytes: int) -> int:
    """Bytes to whole KB, rounding up so small structures charge at least 1."""
    return max(1, -(-n_bytes // 1024))
