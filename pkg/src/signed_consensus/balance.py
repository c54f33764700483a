"""Structural balance of graphs and nodes, gauge vectors, root conditions C1-C3."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

import numpy as np

from .connectivity import ConnectivityReport, ancestor_closure
from .graph import GraphError, SignedDigraph, induced_subgraph


class RootCondition(str, enum.Enum):
    C1 = "C1"  # exactly one rooted node
    C2 = "C2"  # several roots, root subgraph structurally balanced
    C3 = "C3"  # root subgraph structurally unbalanced: no zero eigenvalue


@dataclass(frozen=True)
class GaugeVector:
    sigma: tuple[int, ...]
    anchored: bool = True

    def __post_init__(self):
        if any(s not in (-1, 1) for s in self.sigma):
            raise ValueError("gauge entries must be +1 or -1")

    def matrix(self) -> np.ndarray:
        return np.diag(np.asarray(self.sigma, dtype=float))

    def certifies(self, g: SignedDigraph) -> bool:
        """True when ``D A D`` has no negative entry."""
        s = np.asarray(self.sigma, dtype=float)
        return bool(np.all(s[:, None] * g.weights * s[None, :] >= 0))


@dataclass(frozen=True)
class BalanceResult:
    balanced: bool
    gauge: GaugeVector | None
    # closed walk of nodes whose sign constraints conflict; first node repeated at the end
    witness_cycle: tuple[int, ...] | None

    def __bool__(self):
        return self.balanced


def gauge_partition(g: SignedDigraph) -> BalanceResult:
    """Signed BFS 2-coloring over the undirected support.

    Every edge imposes ``sigma_i * sigma_j = sign(a_ij)``.  The smallest node of
    each weak component is anchored at +1.  On conflict the witness is the
    fundamental cycle of the first violated edge in the BFS forest.
    """
    n = g.n
    w = g.weights
    sign = np.sign(w)
    # undirected constraint sign; both directions of a 2-cycle must agree
    sigma = [0] * n
    parent = [-1] * n
    depth = [0] * n
    for s in range(n):
        if sigma[s]:
            continue
        sigma[s] = 1
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in range(n):
                for sg in (sign[v, u], sign[u, v]):
                    if sg == 0:
                        continue
                    want = int(sigma[v] * sg)
                    if sigma[u] == 0:
                        sigma[u] = want
                        parent[u] = v
                        depth[u] = depth[v] + 1
                        queue.append(u)
                    elif sigma[u] != want:
                        return BalanceResult(False, None, _fundamental_cycle(v, u, parent, depth))
    return BalanceResult(True, GaugeVector(tuple(sigma)), None)


def _fundamental_cycle(v: int, u: int, parent: list[int], depth: list[int]) -> tuple[int, ...]:
    a, b = [v], [u]
    while depth[a[-1]] > depth[b[-1]]:
        a.append(parent[a[-1]])
    while depth[b[-1]] > depth[a[-1]]:
        b.append(parent[b[-1]])
    while a[-1] != b[-1]:
        a.append(parent[a[-1]])
        b.append(parent[b[-1]])
    # v -> ... -> lca -> ... -> u -> v
    cycle = a + b[-2::-1]
    if cycle[0] == cycle[-1]:
        return tuple(cycle)
    return tuple(cycle + [cycle[0]])


def is_balanced_node(g: SignedDigraph, i: int) -> bool:
    sub = induced_subgraph(g, ancestor_closure(g, i))
    return gauge_partition(sub).balanced


def node_balance(g: SignedDigraph) -> list[bool]:
    return [is_balanced_node(g, i) for i in range(g.n)]


def graph_balance(g: SignedDigraph, check_nodes: bool = False) -> bool:
    """Structural balance of the whole graph.

    With ``check_nodes`` the result is also compared against the per-node
    verdicts (all nodes balanced iff the graph is) and an AssertionError is
    raised on disagreement.
    """
    balanced = gauge_partition(g).balanced
    if check_nodes:
        per_node = all(node_balance(g))
        assert per_node == balanced, "graph balance disagrees with per-node balance"
    return balanced


def classify_root_condition(g: SignedDigraph, report: ConnectivityReport) -> RootCondition:
    if not report.roots:
        raise GraphError("root condition needs a quasi-strongly connected graph")
    if len(report.roots) == 1:
        return RootCondition.C1
    if gauge_partition(induced_subgraph(g, report.roots)).balanced:
        return RootCondition.C2
    return RootCondition.C3


def balance_report(g: SignedDigraph) -> dict:
    res = gauge_partition(g)
    return {
        "balanced": res.balanced,
        "sigma": list(res.gauge.sigma) if res.gauge else None,
        "witness_cycle": [v + 1 for v in res.witness_cycle] if res.witness_cycle else None,
        "node_balance": node_balance(g),
    }
