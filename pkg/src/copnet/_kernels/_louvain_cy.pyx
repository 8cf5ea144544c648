# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled Louvain local-move kernel.

Mirrors ``_louvain_py.local_move_sweeps`` operation for operation so both
backends yield identical partitions; see that module for the contract.
"""

from libc.stdint cimport int64_t

import numpy as np


def local_move_sweeps(indptr, indices, weights, degrees, labels, sigma_tot, order, total_weight):
    """Sweep nodes in ``order`` until a full sweep makes no move; see the Python twin."""
    cdef int64_t[::1] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef int64_t[::1] idx = np.ascontiguousarray(indices, dtype=np.int64)
    cdef double[::1] wts = np.ascontiguousarray(weights, dtype=np.float64)
    cdef double[::1] deg = np.ascontiguousarray(degrees, dtype=np.float64)
    cdef int64_t[::1] lab = labels
    cdef double[::1] sig = sigma_tot
    cdef int64_t[::1] ordr = np.ascontiguousarray(order, dtype=np.int64)
    cdef double s = float(total_weight)

    cdef Py_ssize_t n = lab.shape[0]
    # Scratch: per-community edge weight from the current node, plus the list
    # of community ids touched so only those entries are reset afterwards.
    cw_arr = np.zeros(n, dtype=np.float64)
    touched_arr = np.empty(n, dtype=np.int64)
    cdef double[::1] cw = cw_arr
    cdef int64_t[::1] touched = touched_arr

    cdef Py_ssize_t oi, p, t, nt
    cdef int64_t i, j, c, d, best_c
    cdef double ki, w, gain, stay_gain, best_gain
    cdef long total_moves = 0, moves
    cdef double NEG_INF = float("-inf")

    while True:
        moves = 0
        for oi in range(n):
            i = ordr[oi]
            d = lab[i]
            ki = deg[i]
            nt = 0
            for p in range(ptr[i], ptr[i + 1]):
                j = idx[p]
                if j == i:
                    continue
                c = lab[j]
                if cw[c] == 0.0:
                    touched[nt] = c
                    nt += 1
                cw[c] += wts[p]
            if nt == 0:
                continue
            sig[d] -= ki
            stay_gain = cw[d] - ki * sig[d] / s
            best_gain = NEG_INF
            best_c = -1
            for t in range(nt):
                c = touched[t]
                if c == d:
                    continue
                gain = cw[c] - ki * sig[c] / s
                if gain > best_gain or (gain == best_gain and c < best_c):
                    best_gain = gain
                    best_c = c
            for t in range(nt):
                cw[touched[t]] = 0.0
            if best_c >= 0 and best_gain > stay_gain:
                lab[i] = best_c
                sig[best_c] += ki
                moves += 1
            else:
                sig[d] += ki
        total_moves += moves
        if moves == 0:
            break

    return total_moves
