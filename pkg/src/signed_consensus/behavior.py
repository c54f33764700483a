"""Collective-behavior classification and terminal-state prediction for x' = -L x."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .balance import RootCondition, classify_root_condition, node_balance
from .connectivity import ConnectivityReport, analyze_connectivity
from .graph import SignedDigraph, induced_subgraph, laplacian, root_ordered_blocks
from .linalg import determinant, rank, to_exact, to_exact_vector
from .spectral import (ZERO_TOL, SpectralError, leader_bases, left_eigenvector,
                       null_vector, right_eigenvector)

log = logging.getLogger(__name__)

UNIT_TOL = 1e-9


class Behavior(str, enum.Enum):
    BIPARTITE_CONSENSUS = "bipartite_consensus"
    INTERVAL_BIPARTITE_CONSENSUS = "interval_bipartite_consensus"
    BIPARTITE_CONTAINMENT_TRACKING = "bipartite_containment_tracking"
    STATE_STABILITY = "state_stability"


class Route(str, enum.Enum):
    """How a weak component's terminal state was obtained."""

    CLOSED_FORM = "closed_form"          # rooted graph with C1/C2, xi eta^T / eta^T xi
    ZERO = "zero"                        # no zero eigenvalue
    PROJECTION = "projection_extension"  # several leader SCCs, per-SCC projector sum
    SIMULATION = "simulation_extension"  # projector singular, long simulation used


@dataclass
class BehaviorReport:
    behavior: Behavior
    node_balance: list[bool]
    quasi_strongly_connected: bool
    roots: tuple[int, ...]
    leaders: tuple[int, ...]
    condition: RootCondition | None = None
    rank_L: int | None = None
    xi: object = None
    # set on C1/C2 graphs that contain structurally unbalanced nodes
    strict_interval: bool = False
    theta: np.ndarray | None = None
    routes: list[Route] = field(default_factory=list)
    per_component: list["BehaviorReport"] = field(default_factory=list)
    component_nodes: tuple[int, ...] = ()

    @property
    def leader_intervals(self) -> list[tuple[float, float]] | None:
        if self.theta is None:
            return None
        return [(-abs(float(self.theta[j])), abs(float(self.theta[j]))) for j in self.leaders]

    @property
    def containment(self) -> bool:
        """Nontrivial behavior: at least one node keeps a nonzero limit for generic x(0)."""
        return self.behavior is not Behavior.STATE_STABILITY

    @property
    def uses_extension(self) -> bool:
        return any(r in (Route.PROJECTION, Route.SIMULATION) for r in self.routes)

    def to_json(self) -> dict:
        def num(x):
            if isinstance(x, Fraction):
                return str(x)
            return float(x)

        return {
            "behavior": self.behavior.value,
            "strict_interval": self.strict_interval,
            "quasi_strongly_connected": self.quasi_strongly_connected,
            "condition": self.condition.value if self.condition else None,
            "rank_L": self.rank_L,
            "roots": [v + 1 for v in self.roots],
            "leaders": [v + 1 for v in self.leaders],
            "node_balance": list(self.node_balance),
            "xi": None if self.xi is None else [num(x) for x in self.xi],
            "theta": None if self.theta is None else [num(x) for x in self.theta],
            "leader_intervals": self.leader_intervals,
            "routes": [r.value for r in self.routes],
            "extension": self.uses_extension,
            "per_component": [c.to_json() for c in self.per_component],
            "component_nodes": [v + 1 for v in self.component_nodes],
        }


def _is_unit(x, exact: bool) -> bool:
    if exact:
        return abs(x) == 1
    return abs(abs(float(x)) - 1.0) <= UNIT_TOL


def classify(g: SignedDigraph, x0=None, exact: bool = False,
             report: ConnectivityReport | None = None, _components: bool = True) -> BehaviorReport:
    """Classify the collective behavior of x' = -L x on ``g``.

    Rooted graphs: state stability iff ``L`` is nonsingular, otherwise interval
    bipartite consensus, upgraded to bipartite consensus when every ``|xi_i|``
    is 1.  Other graphs: containment tracking iff some node is structurally
    balanced, otherwise state stability.  With ``x0`` the predicted terminal
    state is attached.
    """
    report = report or analyze_connectivity(g)
    balance = node_balance(g)
    out = BehaviorReport(
        behavior=Behavior.STATE_STABILITY, node_balance=balance,
        quasi_strongly_connected=report.is_quasi_strongly_connected,
        roots=report.roots, leaders=report.leaders,
    )
    if report.is_quasi_strongly_connected:
        L = laplacian(g).L
        cond = classify_root_condition(g, report)
        rk = rank(to_exact(L) if exact else L, ZERO_TOL)
        out.condition, out.rank_L = cond, rk
        if (rk == g.n) != (cond is RootCondition.C3):
            log.warning("rank(L)=%d disagrees with root condition %s", rk, cond.value)
        if rk < g.n:
            view = root_ordered_blocks(g, report.roots)
            xi = right_eigenvector(g, view, None, cond, exact=exact)
            out.xi = xi
            if all(_is_unit(x, exact) for x in xi):
                out.behavior = Behavior.BIPARTITE_CONSENSUS
            else:
                out.behavior = Behavior.INTERVAL_BIPARTITE_CONSENSUS
                out.strict_interval = True
    elif any(balance):
        out.behavior = Behavior.BIPARTITE_CONTAINMENT_TRACKING
        out.xi = null_vector(g, exact=exact, report=report)

    if _components and len(report.weak_components) > 1:
        for comp in report.weak_components:
            sub = induced_subgraph(g, comp)
            sub_x0 = None if x0 is None else [x0[v] for v in comp]
            child = classify(sub, sub_x0, exact=exact, _components=False)
            child.component_nodes = comp
            out.per_component.append(child)
    if x0 is not None:
        out.theta, out.routes = terminal_state(g, x0, exact=exact, return_routes=True,
                                               report=report)
    return out


def terminal_state(g: SignedDigraph, x0, exact: bool = False, return_routes: bool = False,
                   report: ConnectivityReport | None = None, horizon: float = 2000.0):
    """Predicted ``lim x(t)`` for x' = -L x, computed per weak component."""
    if len(x0) != g.n:
        raise ValueError(f"x0 has length {len(x0)}, graph has {g.n} nodes")
    x0 = to_exact_vector(x0) if exact else np.asarray(x0, dtype=float)
    report = report or analyze_connectivity(g)
    theta = [Fraction(0)] * g.n if exact else np.zeros(g.n)
    routes = []
    for comp in report.weak_components:
        sub = induced_subgraph(g, comp) if len(report.weak_components) > 1 else g
        sub_x0 = [x0[v] for v in comp]
        if not exact:
            sub_x0 = np.asarray(sub_x0)
        part, route = _component_limit(sub, sub_x0, exact, horizon)
        for v, val in zip(comp, part):
            theta[v] = val
        routes.append(route)
    if return_routes:
        return theta, routes
    return theta


def _dot(a, b, exact: bool):
    if exact:
        return sum((x * y for x, y in zip(a, b)), Fraction(0))
    return float(np.dot(np.asarray(a, dtype=float), np.asarray(b, dtype=float)))


def _component_limit(g: SignedDigraph, x0, exact: bool, horizon: float):
    zero = [Fraction(0)] * g.n if exact else np.zeros(g.n)
    report = analyze_connectivity(g)
    if report.is_quasi_strongly_connected:
        cond = classify_root_condition(g, report)
        if cond is RootCondition.C3:
            return zero, Route.ZERO
        view = root_ordered_blocks(g, report.roots)
        xi = right_eigenvector(g, view, None, cond, exact=exact)
        eta = left_eigenvector(g, view, cond, exact=exact)
        scale = _dot(eta, x0, exact) / _dot(eta, xi, exact)
        return ([scale * x for x in xi] if exact else scale * np.asarray(xi)), Route.CLOSED_FORM

    bases = leader_bases(g, report, exact)
    if not bases:
        return zero, Route.ZERO
    k = len(bases)
    gram = [[_dot(bases[a].eta, bases[b].xi, exact) for b in range(k)] for a in range(k)]
    singular = (determinant(gram) == 0) if exact else (rank(np.asarray(gram), ZERO_TOL) < k)
    if singular:
        from .simulate import simulate

        traj = simulate(g, np.asarray(x0, dtype=float), t_end=horizon)
        if not traj.converged:
            raise SpectralError("no well-defined limit: projector singular and simulation "
                                "did not converge")
        return traj.final_state, Route.SIMULATION
    proj = [_dot(b.eta, x0, exact) for b in bases]
    if exact:
        coef = _solve_exact(gram, proj)
        theta = [sum((c * b.xi[i] for c, b in zip(coef, bases)), Fraction(0))
                 for i in range(g.n)]
    else:
        coef = np.linalg.solve(np.asarray(gram), np.asarray(proj))
        theta = np.column_stack([np.asarray(b.xi) for b in bases]) @ coef
    return theta, Route.PROJECTION


def _solve_exact(A, b):
    n = len(A)
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[-1] for row in aug]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    nodes: list[int] = field(default_factory=list)


@dataclass
class Verification:
    passed: bool
    checks: list[Check]

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail,
                        "nodes": [v + 1 for v in c.nodes]} for c in self.checks],
        }


def verify_report(report: BehaviorReport, observed_theta: Sequence[float],
                  tol: float = 1e-6) -> Verification:
    """Check the defining condition of ``report.behavior`` on an observed limit.

    When the report carries a point prediction it is compared entrywise too.
    """
    obs = np.asarray(observed_theta, dtype=float)
    mod = np.abs(obs)
    checks: list[Check] = []
    b = report.behavior
    if b is Behavior.STATE_STABILITY:
        bad = [int(i) for i in np.flatnonzero(mod > tol)]
        checks.append(Check("state_stability", not bad, f"max |theta| = {mod.max(initial=0):.3g}", bad))
    elif b is Behavior.BIPARTITE_CONSENSUS:
        ref = float(np.median(mod)) if mod.size else 0.0
        bad = [int(i) for i in np.flatnonzero(np.abs(mod - ref) > tol)]
        spread = float(mod.max(initial=0) - mod.min(initial=0))
        checks.append(Check("equal_moduli", not bad, f"modulus spread = {spread:.3g}", bad))
    elif b is Behavior.INTERVAL_BIPARTITE_CONSENSUS:
        roots = list(report.roots)
        bar = float(np.max(mod[roots], initial=0.0))
        bad_r = [i for i in roots if abs(mod[i] - bar) > tol]
        checks.append(Check("roots_at_plus_minus_bar", not bad_r, f"theta_bar = {bar:.6g}", bad_r))
        bad_n = [i for i in range(obs.size) if i not in set(roots) and mod[i] > bar + tol]
        checks.append(Check("nonroots_in_interval", not bad_n, "", bad_n))
    else:
        radii = mod[list(report.leaders)]
        bad = [i for i in range(obs.size) if not np.any(mod[i] <= radii + tol)]
        checks.append(Check("in_leader_intervals", not bad,
                            f"largest leader radius = {radii.max(initial=0):.6g}", bad))
    if report.theta is not None:
        pred = np.asarray(report.theta, dtype=float)
        err = np.abs(pred - obs)
        bad = [int(i) for i in np.flatnonzero(err > tol)]
        checks.append(Check("matches_prediction", not bad, f"max error = {err.max(initial=0):.3g}", bad))
    return Verification(all(c.passed for c in checks), checks)
