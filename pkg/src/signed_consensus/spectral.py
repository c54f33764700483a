"""Zero-eigenvalue eigenvectors of signed Laplacians, built from determinants.

The right eigenvector puts gauge signs on the root block and solves the
non-root block by Cramer's rule; the left eigenvector carries signed
principal cofactors of the root Laplacian and vanishes off the roots.

Everything runs either in float64 or, with ``exact=True``, in Fractions.
Exact vectors are plain lists of :class:`~fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .balance import GaugeVector, RootCondition, classify_root_condition, gauge_partition
from .connectivity import ConnectivityReport, analyze_connectivity
from .graph import LaplacianView, SignedDigraph, induced_subgraph, laplacian, root_ordered_blocks
from .linalg import determinant, matvec, rank, to_exact

ZERO_TOL = 1e-10


class SpectralError(ArithmeticError):
    """Raised when the zero eigenvalue needed for a construction does not exist."""


def _principal_minor(M, i: int):
    keep = [k for k in range(len(M)) if k != i]
    if isinstance(M, np.ndarray):
        return M[np.ix_(keep, keep)]
    return [[M[r][c] for c in keep] for r in keep]


def _replace_column(M, j: int, col):
    if isinstance(M, np.ndarray):
        out = M.copy()
        out[:, j] = col
        return out
    return [row[:j] + [col[r]] + row[j + 1:] for r, row in enumerate(M)]


def _block(M, exact: bool):
    return to_exact(M) if exact else np.asarray(M, dtype=float)


def cramer_followers(M, A_rnr, xi_r, exact: bool = False):
    """Non-root entries ``-det(Phi_j) / det(M)``, ``Phi_j`` = ``M`` with column j set to ``-A_rnr xi_r``.

    ``M`` is ``L_nr + B``.  Raises :class:`SpectralError` when ``det(M)`` is zero.
    """
    M = _block(M, exact)
    k = len(M)
    if k == 0:
        return [] if exact else np.zeros(0)
    A = _block(A_rnr, exact)
    e = [-x for x in matvec(A, xi_r)]
    if exact:
        det_m = determinant(M)
        singular = det_m == 0
    else:
        det_m = determinant(M)
        singular = rank(M, ZERO_TOL) < k
    if singular:
        raise SpectralError("det(L_nr + B) vanishes: the non-root block is singular")
    out = [-determinant(_replace_column(M, j, e)) / det_m for j in range(k)]
    return out if exact else np.asarray(out, dtype=float)


def _gauge_on(g: SignedDigraph, nodes: Sequence[int]) -> GaugeVector | None:
    res = gauge_partition(induced_subgraph(g, nodes))
    return res.gauge


def left_eigenvector(g: SignedDigraph, view: LaplacianView, cond: RootCondition,
                     gauge: GaugeVector | None = None, exact: bool = False):
    """Left null vector: ``sigma_i det(L_ii)`` on roots, zero elsewhere, original node order.

    ``L_ii`` is ``L_r`` without row and column ``i``; the 0x0 minor counts as 1.
    Not normalized.
    """
    if cond is RootCondition.C3:
        raise SpectralError("no zero eigenvalue (condition C3)")
    if not view.has_blocks:
        raise ValueError("left_eigenvector needs a root-ordered LaplacianView")
    m = view.m
    roots = view.root_order[:m]
    if gauge is None:
        gauge = _gauge_on(g, roots)
    L_r = _block(view.L_r, exact)
    eta_r = [s * determinant(_principal_minor(L_r, i)) for i, s in enumerate(gauge.sigma)]
    return _unpermute(eta_r, [0] * (g.n - m), view.root_order, exact)


def right_eigenvector(g: SignedDigraph, view: LaplacianView, gauge: GaugeVector | None,
                      cond: RootCondition, exact: bool = False):
    """Right null vector with gauge signs on the roots and Cramer's rule on the rest.

    ``gauge`` lists the signs of the roots in the order of ``view.root_order``;
    ``None`` means the anchored gauge of the root subgraph.
    """
    if cond is RootCondition.C3:
        raise SpectralError("no zero eigenvalue (condition C3)")
    if not view.has_blocks:
        raise ValueError("right_eigenvector needs a root-ordered LaplacianView")
    m = view.m
    if gauge is None:
        gauge = _gauge_on(g, view.root_order[:m])
        if gauge is None:
            raise SpectralError("root subgraph is structurally unbalanced")
    xi_r = [Fraction(s) for s in gauge.sigma] if exact else np.asarray(gauge.sigma, dtype=float)
    M = np.asarray(view.L_nr) + np.asarray(view.B)
    xi_nr = cramer_followers(M, view.A_rnr, xi_r, exact)
    return _unpermute(xi_r, xi_nr, view.root_order, exact)


def _unpermute(head, tail, order, exact: bool):
    n = len(order)
    out = [Fraction(0)] * n if exact else np.zeros(n)
    for pos, val in zip(order, list(head) + list(tail)):
        out[pos] = Fraction(val) if exact else float(val)
    return out


@dataclass(frozen=True)
class LeaderBasis:
    """Null-vector pair attached to one structurally balanced leader SCC."""

    scc: tuple[int, ...]
    sigma: tuple[int, ...]
    xi: object
    eta: object
    inner: object


def leader_bases(g: SignedDigraph, report: ConnectivityReport | None = None,
                 exact: bool = False) -> list[LeaderBasis]:
    """One right/left null-vector pair per structurally balanced leader SCC.

    All leaders are treated as roots: the right vector carries the SCC's
    anchored gauge on that SCC and zero on the other leaders, and followers are
    solved by Cramer's rule exactly as for a single root block.  The left vector
    is supported on the SCC.  For a quasi-strongly connected graph with C1/C2
    this is the single pair of the classical construction.
    """
    report = report or analyze_connectivity(g)
    leaders = list(report.leaders)
    view = root_ordered_blocks(g, leaders)
    pos = {v: k for k, v in enumerate(view.root_order)}
    M = np.asarray(view.L_nr) + np.asarray(view.B)
    out = []
    for k in report.source_sccs:
        scc = report.sccs[k]
        gauge = _gauge_on(g, scc)
        if gauge is None:
            continue
        zero = Fraction(0) if exact else 0.0
        xi_l = [zero] * len(leaders)
        for v, s in zip(scc, gauge.sigma):
            xi_l[pos[v]] = Fraction(s) if exact else float(s)
        if not exact:
            xi_l = np.asarray(xi_l)
        xi_f = cramer_followers(M, view.A_rnr, xi_l, exact)
        xi = _unpermute(xi_l, xi_f, view.root_order, exact)

        sub_L = _block(laplacian(induced_subgraph(g, scc)).L, exact)
        eta = [Fraction(0)] * g.n if exact else np.zeros(g.n)
        for i, (v, s) in enumerate(zip(scc, gauge.sigma)):
            eta[v] = s * determinant(_principal_minor(sub_L, i))
        inner = sum((a * b for a, b in zip(eta, xi)), Fraction(0) if exact else 0.0)
        out.append(LeaderBasis(scc, gauge.sigma, xi, eta, inner))
    return out


def null_vector(g: SignedDigraph, anchors: Mapping[int, int] | None = None,
                exact: bool = False, report: ConnectivityReport | None = None):
    """Right null vector of ``L`` combining every balanced leader SCC.

    By default each SCC enters with its anchored gauge (smallest node +1).
    ``anchors`` maps a node (0-based) to the sign its entry must carry; the SCC
    containing that node is flipped accordingly.  Raises :class:`SpectralError`
    if ``L`` has no zero eigenvalue.
    """
    bases = leader_bases(g, report, exact)
    if not bases:
        raise SpectralError("no zero eigenvalue: every leader SCC is structurally unbalanced")
    signs = _basis_signs(bases, anchors)
    zero = Fraction(0) if exact else 0.0
    out = [zero] * g.n
    for s, b in zip(signs, bases):
        out = [o + s * x for o, x in zip(out, b.xi)]
    return out if exact else np.asarray(out, dtype=float)


def _basis_signs(bases: Sequence[LeaderBasis], anchors: Mapping[int, int] | None) -> list[int]:
    signs = [1] * len(bases)
    for node, want in (anchors or {}).items():
        if want not in (-1, 1):
            raise ValueError("anchor signs must be +1 or -1")
        for k, b in enumerate(bases):
            if node in b.scc:
                signs[k] = want * b.sigma[b.scc.index(node)]
                break
        else:
            raise ValueError(f"anchor node {node + 1} is not in a balanced leader SCC")
    return signs


@dataclass(frozen=True)
class SpectralCertificate:
    xi: object
    eta: object
    det_L: float | Fraction
    inner: float | Fraction
    residual_right: float
    residual_left: float
    condition: RootCondition | None
    rank_L: int
    exact: bool = False
    # per leader SCC pairs; a single entry for quasi-strongly connected graphs
    bases: tuple[LeaderBasis, ...] = field(default=(), repr=False)

    def to_json(self) -> dict:
        fmt = _fmt_exact if self.exact else float
        return {
            "xi": [fmt(x) for x in self.xi],
            "eta": [fmt(x) for x in self.eta],
            "det_L": fmt(self.det_L),
            "inner": fmt(self.inner),
            "residuals": {"right_inf": self.residual_right, "left_inf": self.residual_left},
            "condition": self.condition.value if self.condition else None,
            "rank_L": self.rank_L,
            "exact": self.exact,
            "leader_sccs": [[v + 1 for v in b.scc] for b in self.bases],
        }


def _fmt_exact(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _inf_residual(L, v) -> float:
    return float(np.max(np.abs(np.asarray(matvec(L, v), dtype=float)), initial=0.0))


def certificate(g: SignedDigraph, exact: bool = False,
                anchors: Mapping[int, int] | None = None) -> SpectralCertificate:
    """Build and self-check the eigenvector pair of ``g``.

    Quasi-strongly connected graphs use the root-block construction; other
    graphs combine the per-leader-SCC pairs (see :func:`leader_bases`).
    """
    report = analyze_connectivity(g)
    L = laplacian(g).L
    Lx = to_exact(L) if exact else L
    cond = None
    if report.is_quasi_strongly_connected:
        cond = classify_root_condition(g, report)
        if cond is RootCondition.C3:
            raise SpectralError("no zero eigenvalue (condition C3)")
    bases = leader_bases(g, report, exact)
    if not bases:
        raise SpectralError("no zero eigenvalue: every leader SCC is structurally unbalanced")
    signs = _basis_signs(bases, anchors)
    zero = Fraction(0) if exact else 0.0
    xi = [zero] * g.n
    eta = [zero] * g.n
    for s, b in zip(signs, bases):
        xi = [o + s * x for o, x in zip(xi, b.xi)]
        eta = [o + s * x for o, x in zip(eta, b.eta)]
    if not exact:
        xi, eta = np.asarray(xi), np.asarray(eta)
    inner = sum((a * b for a, b in zip(eta, xi)), zero)
    LT = [list(col) for col in zip(*Lx)] if exact else L.T
    return SpectralCertificate(
        xi=xi, eta=eta, det_L=determinant(Lx), inner=inner,
        residual_right=_inf_residual(Lx, xi), residual_left=_inf_residual(LT, eta),
        condition=cond, rank_L=rank(Lx, ZERO_TOL), exact=exact, bases=tuple(bases),
    )
