# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integration loop for x_{k+1} = P x_k (P is the RK4 propagator of -L)."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, isfinite

cnp.import_array()


def propagate(const double[:, ::1] P, const double[::1] x0, Py_ssize_t max_steps,
              Py_ssize_t window, double conv_tol, Py_ssize_t decimate):
    """Iterate the propagator until the trailing-window change drops below conv_tol.

    Returns (stored_steps, stored_states, steps_taken, converged, diverged, final).
    """
    cdef Py_ssize_t n = x0.shape[0]
    cdef Py_ssize_t cap = max_steps // decimate + 2
    cdef cnp.ndarray[cnp.float64_t, ndim=2] ring_arr = np.empty((window + 1, n))
    cdef double[:, ::1] ring = ring_arr
    cdef cnp.ndarray[cnp.float64_t, ndim=2] store_arr = np.empty((cap, n))
    cdef double[:, ::1] store = store_arr
    cdef cnp.ndarray[cnp.int64_t, ndim=1] steps_arr = np.empty(cap, dtype=np.int64)
    cdef cnp.int64_t[::1] steps = steps_arr
    cdef Py_ssize_t i, j, k, cur, prev, old, nstore = 0
    cdef double acc, diff, d
    cdef bint converged = False, diverged = False

    for i in range(n):
        ring[0, i] = x0[i]
        store[0, i] = x0[i]
    steps[0] = 0
    nstore = 1
    k = 0
    while k < max_steps:
        prev = k % (window + 1)
        k += 1
        cur = k % (window + 1)
        for i in range(n):
            acc = 0.0
            for j in range(n):
                acc += P[i, j] * ring[prev, j]
            if not isfinite(acc):
                diverged = True
            ring[cur, i] = acc
        if diverged:
            break
        if k % decimate == 0:
            for i in range(n):
                store[nstore, i] = ring[cur, i]
            steps[nstore] = k
            nstore += 1
        if k >= window:
            old = (k - window) % (window + 1)
            diff = 0.0
            for i in range(n):
                d = fabs(ring[cur, i] - ring[old, i])
                if d > diff:
                    diff = d
            if diff <= conv_tol:
                converged = True
                break
    cur = k % (window + 1)
    if steps[nstore - 1] != k:
        for i in range(n):
            store[nstore, i] = ring[cur, i]
        steps[nstore] = k
        nstore += 1
    final = np.array(ring_arr[cur])
    return steps_arr[:nstore].copy(), store_arr[:nstore].copy(), k, converged, diverged, final
