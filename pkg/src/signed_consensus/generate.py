"""Seeded random signed digraphs."""

from __future__ import annotations

import numpy as np

from .graph import SignedDigraph


class InfeasibleError(ValueError):
    pass


def _magnitudes(rng: np.random.Generator, size) -> np.ndarray:
    # multiples of 1/8 keep weights exact in binary and in the text format
    return rng.integers(4, 17, size=size) / 8.0


def random_signed_digraph(n: int, density: float, neg_fraction: float, seed: int,
                          spanning_tree: bool = False, balanced: bool = False) -> SignedDigraph:
    """Erdos-Renyi style signed digraph.

    ``spanning_tree`` first grows a random directed tree from a random root so the
    result is quasi-strongly connected.  ``balanced`` draws a node gauge
    (``neg_fraction`` is then the probability that a node lands on the negative
    side) and signs every edge consistently with it.
    """
    if n < 2:
        raise InfeasibleError("n must be at least 2")
    if not 0 < density <= 1:
        raise InfeasibleError("density must be in (0, 1]")
    if not 0 <= neg_fraction <= 1:
        raise InfeasibleError("neg_fraction must be in [0, 1]")
    if spanning_tree and density * n < 1:
        raise InfeasibleError("density too low to hold a spanning tree (need density >= 1/n)")
    rng = np.random.default_rng(seed)
    mask = rng.random((n, n)) < density
    np.fill_diagonal(mask, False)
    if spanning_tree:
        order = rng.permutation(n)
        for k in range(1, n):
            parent = order[rng.integers(0, k)]
            mask[order[k], parent] = True
    w = np.where(mask, _magnitudes(rng, (n, n)), 0.0)
    if balanced:
        sigma = np.where(rng.random(n) < neg_fraction, -1.0, 1.0)
        w = w * sigma[:, None] * sigma[None, :]
    else:
        w = np.where(rng.random((n, n)) < neg_fraction, -w, w)
    return SignedDigraph(w + 0.0)


def random_rooted_graph(rng: np.random.Generator, n: int, condition: str,
                        extra: float = 0.3, neg_fraction: float = 0.4) -> SignedDigraph:
    """Quasi-strongly connected graph whose root condition is ``"C1"``, ``"C2"`` or ``"C3"``.

    Roots get a Hamiltonian cycle plus extra edges; non-roots only receive edges
    from roots or from other non-roots, each with at least one in-edge from an
    earlier node so everything stays reachable.  Follower signs are random, so
    both balanced and unbalanced non-root nodes occur.
    """
    if condition == "C1":
        m = 1
    else:
        if n < 2:
            raise InfeasibleError("C2/C3 need at least two roots")
        m = int(rng.integers(2, n + 1))
    w = np.zeros((n, n))
    perm = rng.permutation(n)
    roots, rest = perm[:m], perm[m:]
    if m > 1:
        for k in range(m):
            w[roots[(k + 1) % m], roots[k]] = 1.0
        for i in roots:
            for j in roots:
                if i != j and rng.random() < extra:
                    w[i, j] = 1.0
        sigma = np.where(rng.random(n) < 0.5, -1.0, 1.0)
        sub = np.ix_(roots, roots)
        w[sub] *= (sigma[:, None] * sigma[None, :])[sub]
        if condition == "C3":
            # flip one cycle edge: that cycle turns negative
            a, b = roots[1], roots[0]
            w[a, b] = -w[a, b]
    order = list(roots)
    for v in rest:
        w[v, order[rng.integers(0, len(order))]] = 1.0
        order.append(v)
    for i in rest:
        for j in range(n):
            if i != j and w[i, j] == 0 and rng.random() < extra / 2:
                w[i, j] = 1.0
    follower_rows = np.zeros((n, n), dtype=bool)
    follower_rows[rest] = True
    flip = follower_rows & (rng.random((n, n)) < neg_fraction)
    w = np.where(flip, -w, w)
    w = w * np.where(w != 0, _magnitudes(rng, (n, n)), 0.0)
    return SignedDigraph(w + 0.0)
