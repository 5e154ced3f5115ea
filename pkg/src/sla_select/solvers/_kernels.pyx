# cython: language_level=3
"""Compiled solver kernels.

Twin of ``_kernels_py``: identical traversal order, tie rules, and unit
accounting, so both backends return bit-for-bit equal outcomes.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

from .cost_model import BNB_NODE_UNITS, BNB_SCAN_UNITS

BACKEND_NAME = "compiled"

cdef long long _INF_COST = <long long>1 << 60


def dp_max_kernel(cnp.ndarray weights, cnp.ndarray profits, long long capacity):
    cdef long long[::1] w = np.ascontiguousarray(weights, dtype=np.int64)
    cdef long long[::1] p = np.ascontiguousarray(profits, dtype=np.int64)
    cdef Py_ssize_t n = w.shape[0]
    cdef long long states = capacity + 1
    cdef Py_ssize_t row_bytes = <Py_ssize_t>((states + 7) >> 3)
    cdef cnp.ndarray prev_arr = np.zeros(states, dtype=np.int64)
    cdef long long[::1] prev = prev_arr
    cdef cnp.ndarray take_arr = np.zeros((n, row_bytes), dtype=np.uint8)
    cdef unsigned char[:, ::1] take = take_arr
    cdef Py_ssize_t i
    cdef long long c, wi, pi, cand
    for i in range(n):
        wi = w[i]
        pi = p[i]
        if wi <= capacity:
            for c in range(capacity, wi - 1, -1):
                cand = prev[c - wi] + pi
                if cand > prev[c]:
                    prev[c] = cand
                    take[i, c >> 3] |= <unsigned char>(0x80 >> (c & 7))
    cdef cnp.ndarray sel_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] sel = sel_arr
    c = capacity
    for i in range(n - 1, -1, -1):
        if take[i, c >> 3] & (0x80 >> (c & 7)):
            sel[i] = 1
            c -= w[i]
    return int(prev[capacity]), sel_arr, int(n * states)


def dp_min_kernel(cnp.ndarray weights, cnp.ndarray profits, long long demand):
    cdef long long[::1] w = np.ascontiguousarray(weights, dtype=np.int64)
    cdef long long[::1] p = np.ascontiguousarray(profits, dtype=np.int64)
    cdef Py_ssize_t n = w.shape[0]
    cdef long long states = demand + 1
    cdef Py_ssize_t row_bytes = <Py_ssize_t>((states + 7) >> 3)
    cdef cnp.ndarray prev_arr = np.full(states, _INF_COST, dtype=np.int64)
    cdef long long[::1] prev = prev_arr
    prev[0] = 0
    cdef cnp.ndarray take_arr = np.zeros((n, row_bytes), dtype=np.uint8)
    cdef unsigned char[:, ::1] take = take_arr
    cdef Py_ssize_t i
    cdef long long j, src, wi, pi, cand
    for i in range(n):
        wi = w[i]
        pi = p[i]
        for j in range(demand, -1, -1):
            src = j - wi
            if src < 0:
                src = 0
            cand = prev[src] + pi
            if cand < prev[j]:
                prev[j] = cand
                take[i, j >> 3] |= <unsigned char>(0x80 >> (j & 7))
    cdef cnp.ndarray sel_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] sel = sel_arr
    j = demand
    for i in range(n - 1, -1, -1):
        if take[i, j >> 3] & (0x80 >> (j & 7)):
            sel[i] = 1
            j -= w[i]
            if j < 0:
                j = 0
    return int(prev[demand]), sel_arr, int(n * states)


def bnb_max_kernel(cnp.ndarray sw, cnp.ndarray sp, long long capacity, long long budget_units):
    cdef long long[::1] w = np.ascontiguousarray(sw, dtype=np.int64)
    cdef long long[::1] p = np.ascontiguousarray(sp, dtype=np.int64)
    cdef Py_ssize_t n = w.shape[0]
    cdef long long node_units = BNB_NODE_UNITS
    cdef long long scan_units = BNB_SCAN_UNITS
    cdef long long best = 0
    cdef cnp.ndarray best_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] best_sel = best_arr
    cdef cnp.ndarray cur_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] cur = cur_arr
    cdef long long units = 0
    cdef bint completed = True

    cdef Py_ssize_t cap_frames = 4 * (n + 2)
    cdef cnp.ndarray ops_arr = np.zeros(cap_frames, dtype=np.int64)
    cdef cnp.ndarray lvl_arr = np.zeros(cap_frames, dtype=np.int64)
    cdef cnp.ndarray wt_arr = np.zeros(cap_frames, dtype=np.int64)
    cdef cnp.ndarray pf_arr = np.zeros(cap_frames, dtype=np.int64)
    cdef long long[::1] ops = ops_arr
    cdef long long[::1] lvl = lvl_arr
    cdef long long[::1] wts = wt_arr
    cdef long long[::1] pfs = pf_arr
    cdef Py_ssize_t top = 0
    cdef long long op, level, wt, pf, remaining
    cdef Py_ssize_t k
    cdef double bound

    ops[top] = 0; lvl[top] = 0; wts[top] = 0; pfs[top] = 0
    top += 1
    while top > 0:
        top -= 1
        op = ops[top]; level = lvl[top]; wt = wts[top]; pf = pfs[top]
        if op == 1:
            cur[level] = 1
            continue
        if op == 2:
            cur[level] = 0
            continue
        units += node_units
        if units > budget_units:
            completed = False
            break
        if level == n:
            if pf > best:
                best = pf
                best_arr = cur_arr.copy()
                best_sel = best_arr
            continue
        bound = 0.0
        remaining = capacity - wt
        for k in range(level, n):
            units += scan_units
            if w[k] <= remaining:
                remaining -= w[k]
                bound += p[k]
            else:
                if remaining > 0:
                    bound += remaining * (<double>p[k] / <double>w[k])
                break
        if pf + bound <= best:
            continue
        ops[top] = 0; lvl[top] = level + 1; wts[top] = wt; pfs[top] = pf
        top += 1
        if wt + w[level] <= capacity:
            ops[top] = 2; lvl[top] = level; wts[top] = 0; pfs[top] = 0
            top += 1
            ops[top] = 0; lvl[top] = level + 1
            wts[top] = wt + w[level]; pfs[top] = pf + p[level]
            top += 1
            ops[top] = 1; lvl[top] = level; wts[top] = 0; pfs[top] = 0
            top += 1
    return int(best), best_arr, int(units), completed


def bnb_min_kernel(cnp.ndarray sw, cnp.ndarray sp, long long demand, long long budget_units):
    cdef long long[::1] w = np.ascontiguousarray(sw, dtype=np.int64)
    cdef long long[::1] p = np.ascontiguousarray(sp, dtype=np.int64)
    cdef Py_ssize_t n = w.shape[0]
    cdef long long node_units = BNB_NODE_UNITS
    cdef long long scan_units = BNB_SCAN_UNITS
    cdef bint have_best = False
    cdef long long best = 0
    cdef cnp.ndarray best_arr = np.zeros(n, dtype=np.uint8)
    cdef cnp.ndarray cur_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] cur = cur_arr
    cdef long long units = 0
    cdef bint completed = True

    cdef Py_ssize_t cap_frames = 4 * (n + 2)
    cdef cnp.ndarray ops_arr = np.zeros(cap_frames, dtype=np.int64)
    cdef cnp.ndarray lvl_arr = np.zeros(cap_frames, dtype=np.int64)
    cdef cnp.ndarray wt_arr = np.zeros(cap_frames, dtype=np.int64)
    cdef cnp.ndarray pf_arr = np.zeros(cap_frames, dtype=np.int64)
    cdef long long[::1] ops = ops_arr
    cdef long long[::1] lvl = lvl_arr
    cdef long long[::1] wts = wt_arr
    cdef long long[::1] pfs = pf_arr
    cdef Py_ssize_t top = 0
    cdef long long op, level, wt, pf, remaining
    cdef Py_ssize_t k
    cdef double bound
    cdef bint covered

    ops[top] = 0; lvl[top] = 0; wts[top] = 0; pfs[top] = 0
    top += 1
    while top > 0:
        top -= 1
        op = ops[top]; level = lvl[top]; wt = wts[top]; pf = pfs[top]
        if op == 1:
            cur[level] = 1
            continue
        if op == 2:
            cur[level] = 0
            continue
        units += node_units
        if units > budget_units:
            completed = False
            break
        if wt >= demand:
            if (not have_best) or pf < best:
                have_best = True
                best = pf
                best_arr = cur_arr.copy()
            continue
        if level == n:
            continue
        bound = 0.0
        remaining = demand - wt
        covered = False
        for k in range(level, n):
            units += scan_units
            if w[k] < remaining:
                remaining -= w[k]
                bound += p[k]
            else:
                bound += (<double>remaining / <double>w[k]) * p[k]
                covered = True
                break
        if not covered:
            continue
        if have_best and pf + bound >= best:
            continue
        ops[top] = 0; lvl[top] = level + 1; wts[top] = wt; pfs[top] = pf
        top += 1
        ops[top] = 2; lvl[top] = level; wts[top] = 0; pfs[top] = 0
        top += 1
        ops[top] = 0; lvl[top] = level + 1
        wts[top] = wt + w[level]; pfs[top] = pf + p[level]
        top += 1
        ops[top] = 1; lvl[top] = level; wts[top] = 0; pfs[top] = 0
        top += 1
    if have_best:
        return int(best), best_arr, int(units), completed
    return None, None, int(units), completed
