"""Compare the compiled RK4 kernel against the NumPy fallback.

    python3 benchmarks/bench_integrator.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from signed_consensus import _kernels_py
from signed_consensus.generate import random_signed_digraph
from signed_consensus.graph import example_graph, laplacian
from signed_consensus.simulate import rk4_propagator

try:
    from signed_consensus import _kernels
except ImportError:
    _kernels = None


def cases():
    yield "example (n=13)", example_graph()
    for n in (5, 20, 50, 100):
        yield f"random n={n}", random_signed_digraph(n, 0.3, 0.3, seed=n, spanning_tree=True)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--steps", type=int, default=5000)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernel not built; only the NumPy fallback is available")
    print(f"{'case':<16} {'numpy s':>10} {'compiled s':>11} {'speedup':>8} {'max diff':>10}")
    rng = np.random.default_rng(0)
    for name, g in cases():
        L = laplacian(g).L
        dt = min(0.01, 0.5 / max(np.diag(L).max(), 1e-12))
        P = np.ascontiguousarray(rk4_propagator(L, dt))
        x0 = rng.uniform(-1, 1, g.n)
        # conv_tol=0 forces the full step count so both run the same work
        run = lambda k: k.propagate(P, x0, args.steps, 100, 0.0, 10)
        t_py, out_py = best_of(lambda: run(_kernels_py), args.repeat)
        if _kernels is None:
            print(f"{name:<16} {t_py:>10.4f} {'-':>11} {'-':>8} {'-':>10}")
            continue
        t_c, out_c = best_of(lambda: run(_kernels), args.repeat)
        diff = float(np.max(np.abs(np.asarray(out_py[5]) - np.asarray(out_c[5]))))
        print(f"{name:<16} {t_py:>10.4f} {t_c:>11.4f} {t_py / t_c:>7.1f}x {diff:>10.2e}")


if __name__ == "__main__":
    main()
