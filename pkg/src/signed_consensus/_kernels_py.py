"""Pure-NumPy twin of the compiled ``_kernels`` module (same signature and results)."""

import numpy as np


def propagate(P, x0, max_steps, window, conv_tol, decimate):
    P = np.ascontiguousarray(P, dtype=float)
    x = np.array(x0, dtype=float)
    n = x.shape[0]
    ring = np.empty((window + 1, n))
    ring[0] = x
    stored_steps = [0]
    stored = [x.copy()]
    converged = diverged = False
    k = 0
    while k < max_steps:
        prev = k % (window + 1)
        k += 1
        cur = k % (window + 1)
        ring[cur] = P @ ring[prev]
        if not np.all(np.isfinite(ring[cur])):
            diverged = True
            break
        if k % decimate == 0:
            stored_steps.append(k)
            stored.append(ring[cur].copy())
        if k >= window:
            old = (k - window) % (window + 1)
            if np.max(np.abs(ring[cur] - ring[old])) <= conv_tol:
                converged = True
                break
    final = ring[k % (window + 1)].copy()
    if stored_steps[-1] != k:
        stored_steps.append(k)
        stored.append(final.copy())
    return (np.asarray(stored_steps, dtype=np.int64), np.asarray(stored), k,
            converged, diverged, final)
