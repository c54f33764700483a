"""Fixed-step integration of x' = -L x with trailing-window convergence detection.

For a linear autonomous system one classical RK4 step is multiplication by the
fixed propagator ``I - hL + (hL)^2/2 - (hL)^3/6 + (hL)^4/24``, so the hot loop
is a dense mat-vec.  It runs in the compiled ``_kernels`` extension when that
is built, otherwise in the NumPy twin ``_kernels_py``.  Set
``SIGNED_CONSENSUS_BACKEND=python`` to force the fallback.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import os
from dataclasses import dataclass

import numpy as np

from . import _kernels_py
from .graph import SignedDigraph, laplacian, to_edge_list

log = logging.getLogger(__name__)

if os.environ.get("SIGNED_CONSENSUS_BACKEND", "").lower() == "python":
    _kernel = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _kernel  # type: ignore[attr-defined]
        BACKEND = "compiled"
    except ImportError:
        _kernel = _kernels_py
        BACKEND = "python"

DEFAULT_DT = 0.01
DEFAULT_T_END = 50.0
DEFAULT_CONV_TOL = 1e-9
DEFAULT_WINDOW = 100
DEFAULT_DECIMATE = 10


class SimulationError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    converged: bool
    final_state: np.ndarray
    dt: float
    steps: int

    @property
    def t_final(self) -> float:
        return self.steps * self.dt

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        n = self.states.shape[1]
        writer.writerow(["t"] + [f"x{i + 1}" for i in range(n)])
        for t, row in zip(self.times, self.states):
            writer.writerow([repr(float(t))] + [repr(float(x)) for x in row])
        return buf.getvalue()

    def to_json(self, g: SignedDigraph | None = None, seed: int | None = None) -> dict:
        return {
            "graph_hash": graph_hash(g) if g is not None else None,
            "dt": self.dt,
            "seed": seed,
            "converged": self.converged,
            "t_final": self.t_final,
            "times": [float(t) for t in self.times],
            "states": self.states.tolist(),
            "final_state": self.final_state.tolist(),
        }


def graph_hash(g: SignedDigraph) -> str:
    return hashlib.sha256(to_edge_list(g).encode()).hexdigest()


def stability_bound(L: np.ndarray) -> float:
    """Largest step accepted without override: ``1 / (2 max_i l_ii)``."""
    dmax = float(np.max(np.diag(L), initial=0.0))
    return np.inf if dmax == 0 else 1.0 / (2.0 * dmax)


def rk4_propagator(L: np.ndarray, dt: float) -> np.ndarray:
    A = -dt * np.asarray(L, dtype=float)
    n = A.shape[0]
    A2 = A @ A
    A3 = A2 @ A
    return np.eye(n) + A + A2 / 2.0 + A3 / 6.0 + (A3 @ A) / 24.0


def simulate(g: SignedDigraph, x0, dt: float = DEFAULT_DT, t_end: float = DEFAULT_T_END,
             conv_tol: float = DEFAULT_CONV_TOL, window: int = DEFAULT_WINDOW,
             decimate: int = DEFAULT_DECIMATE, allow_unstable_dt: bool = False) -> Trajectory:
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (g.n,):
        raise ValueError(f"x0 has length {x0.size}, graph has {g.n} nodes")
    if not np.all(np.isfinite(x0)):
        raise ValueError("x0 must be finite")
    if dt <= 0 or t_end < dt:
        raise ValueError("need dt > 0 and t_end >= dt")
    if window < 1 or decimate < 1:
        raise ValueError("window and decimate must be positive")
    L = laplacian(g).L
    bound = stability_bound(L)
    if dt > bound and not allow_unstable_dt:
        raise ValueError(f"dt={dt} exceeds the stability bound {bound:.6g}")
    P = rk4_propagator(L, dt)
    max_steps = int(round(t_end / dt))
    steps, states, k, converged, diverged, final = _kernel.propagate(
        np.ascontiguousarray(P), np.ascontiguousarray(x0), max_steps, window,
        float(conv_tol), decimate)
    if diverged:
        raise SimulationError(f"state became non-finite at t={k * dt:g}")
    log.debug("simulated %d steps (converged=%s, backend=%s)", k, converged, BACKEND)
    return Trajectory(times=np.asarray(steps) * dt, states=np.asarray(states),
                      converged=bool(converged), final_state=np.asarray(final), dt=dt, steps=int(k))


def converged_state(traj: Trajectory) -> np.ndarray:
    if not traj.converged:
        raise SimulationError(f"trajectory did not converge by t={traj.t_final:g}")
    return traj.final_state.copy()


def write_csv(traj: Trajectory, path: str) -> None:
    atomic_write(path, traj.to_csv())


def write_json(path: str, payload: dict) -> None:
    atomic_write(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def atomic_write(path: str, text: str) -> None:
    tmp = f"{path}.tmp{os.getpid()}"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)
