from fractions import Fraction

import numpy as np
import pytest

from signed_consensus.balance import RootCondition, classify_root_condition, gauge_partition, is_balanced_node
from signed_consensus.connectivity import analyze_connectivity
from signed_consensus.generate import random_rooted_graph
from signed_consensus.graph import SignedDigraph, conjugate, induced_subgraph, laplacian, root_ordered_blocks
from signed_consensus.linalg import in_span, matvec, nullspace_oracle, rank, to_exact
from signed_consensus.spectral import (SpectralError, certificate, leader_bases,
                                       left_eigenvector, null_vector, right_eigenvector)

from conftest import graph
from oracles import PRINTED_XI


def _construct(g, exact=False):
    r = analyze_connectivity(g)
    cond = classify_root_condition(g, r)
    view = root_ordered_blocks(g, r.roots)
    return (right_eigenvector(g, view, None, cond, exact=exact),
            left_eigenvector(g, view, cond, exact=exact), cond)


def rooted_corpus(count, conditions=("C1", "C2"), max_n=8, seed=0):
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        n = int(rng.integers(2, max_n + 1))
        out.append(random_rooted_graph(rng, n, conditions[k % len(conditions)]))
    return out


class TestSmallCases:
    def test_path_positive(self, path3):
        xi, eta, cond = _construct(path3)
        assert cond is RootCondition.C1
        assert np.array_equal(xi, [1, 1, 1])
        assert eta[0] > 0 and eta[1] == eta[2] == 0

    def test_path_negative_edge(self):
        g = graph(2, [(1, 2, -3.0)])
        xi, eta, _ = _construct(g, exact=True)
        assert xi == [1, -1]
        assert eta == [1, 0]

    def test_positive_two_cycle_cofactors(self, pos_two_cycle):
        _, eta, _ = _construct(pos_two_cycle, exact=True)
        assert eta == [1, 1]

    def test_c3_rejected(self, neg_two_cycle):
        r = analyze_connectivity(neg_two_cycle)
        view = root_ordered_blocks(neg_two_cycle, r.roots)
        with pytest.raises(SpectralError, match="C3"):
            right_eigenvector(neg_two_cycle, view, None, RootCondition.C3)
        with pytest.raises(SpectralError, match="C3"):
            left_eigenvector(neg_two_cycle, view, RootCondition.C3)
        with pytest.raises(SpectralError):
            certificate(neg_two_cycle)

    def test_blocks_required(self, path3):
        with pytest.raises(ValueError):
            right_eigenvector(path3, laplacian(path3), None, RootCondition.C1)


@pytest.mark.parametrize("seed", range(10))
def test_balanced_strongly_connected_left_vector_matches_oracle(seed):
    rng = np.random.default_rng(100 + seed)
    while True:
        g = random_rooted_graph(rng, 5, "C2")
        if len(analyze_connectivity(g).roots) == 5:
            break
    _, eta, _ = _construct(g)
    (v,) = nullspace_oracle(laplacian(g).L.T)
    k = int(np.argmax(np.abs(v)))
    assert np.allclose(eta, v * eta[k] / v[k], rtol=1e-9, atol=1e-12)


CORPUS = rooted_corpus(120)


@pytest.mark.parametrize("g", CORPUS)
def test_construction_agrees_with_oracle(g):
    xi, eta, cond = _construct(g)
    L = laplacian(g).L
    assert np.max(np.abs(L @ xi)) <= 1e-10 * np.abs(L).sum(axis=1).max()
    assert in_span(xi, nullspace_oracle(L), tol=1e-8)
    assert in_span(eta, nullspace_oracle(L.T), tol=1e-8)
    roots = analyze_connectivity(g).roots
    assert all(abs(xi[r]) == 1.0 for r in roots)
    assert all(eta[v] == 0 for v in range(g.n) if v not in roots)
    assert float(eta @ xi) > 0
    # rank of L is n-1 on rooted graphs
    assert rank(L) == g.n - 1


@pytest.mark.parametrize("g", CORPUS[:60])
def test_balanced_node_iff_unit_modulus(g):
    xi, _, _ = _construct(g, exact=True)
    for i in range(g.n):
        assert (abs(xi[i]) == 1) == is_balanced_node(g, i)
        assert abs(xi[i]) <= 1


@pytest.mark.parametrize("g", rooted_corpus(30, ("C3",), seed=7))
def test_c3_full_rank(g):
    assert rank(to_exact(laplacian(g).L)) == g.n


@pytest.mark.parametrize("seed", range(20))
def test_gauge_covariance_exact(seed):
    rng = np.random.default_rng(seed)
    g = random_rooted_graph(rng, int(rng.integers(2, 8)), ["C1", "C2"][seed % 2])
    sigma = [int(s) for s in rng.choice([-1, 1], size=g.n)]
    h = conjugate(g, sigma)
    xi_g = _construct(g, exact=True)[0]
    xi_h = _construct(h, exact=True)[0]
    # the anchored root may flip sign under D; compare up to that global sign
    root = analyze_connectivity(g).roots[0]
    s = xi_h[root] / (sigma[root] * xi_g[root])
    assert xi_h == [s * d * x for d, x in zip(sigma, xi_g)]
    # with the anchor pinned, equality is exact
    pinned = null_vector(h, anchors={root: sigma[root] * int(xi_g[root])}, exact=True)
    assert pinned == [d * x for d, x in zip(sigma, xi_g)]


class TestExample:
    def test_exact_vector_with_pinned_sign(self, ga):
        xi = null_vector(ga, anchors={0: -1}, exact=True)
        assert xi == PRINTED_XI
        assert all(x == 0 for x in matvec(to_exact(laplacian(ga).L), xi))

    def test_default_anchoring_differs_only_by_leader_block_signs(self, ga):
        xi = null_vector(ga, exact=True)
        bases = leader_bases(ga, exact=True)
        assert [b.scc for b in bases] == [(0, 4, 5), (3,), (9,)]
        # flipping the first block reproduces the printed vector
        flipped = [x - 2 * b for x, b in zip(xi, bases[0].xi)]
        assert flipped == PRINTED_XI

    def test_float_mode_close(self, ga):
        xi = null_vector(ga, anchors={0: -1})
        assert np.allclose(xi, [float(x) for x in PRINTED_XI], rtol=0, atol=1e-12)

    def test_certificate(self, ga):
        c = certificate(ga, exact=True, anchors={0: -1})
        assert c.xi == PRINTED_XI
        assert c.det_L == 0 and c.rank_L == 10
        assert c.residual_right == 0 and c.residual_left == 0
        assert c.condition is None and c.inner > 0
        js = c.to_json()
        assert js["xi"][2] == "1/4" and js["xi"][6] == "-3/16" and js["xi"][11] == "-7/22"

    def test_anchor_validation(self, ga):
        with pytest.raises(ValueError):
            null_vector(ga, anchors={1: -1})  # v2 is a follower
        with pytest.raises(ValueError):
            null_vector(ga, anchors={0: 2})


def test_single_root_eta_is_unit():
    g = graph(3, [(1, 2, 2.0), (1, 3, -1.0)])
    _, eta, _ = _construct(g, exact=True)
    assert eta == [1, 0, 0]


def test_all_leader_blocks_unbalanced():
    g = graph(3, [(1, 2, 1.0), (2, 1, -1.0), (1, 3, 1.0)])
    with pytest.raises(SpectralError):
        null_vector(g)


def test_certificate_float_rooted(pos_two_cycle):
    c = certificate(pos_two_cycle)
    assert c.condition is RootCondition.C2
    assert np.allclose(c.xi, [1, 1]) and np.allclose(c.eta, [1, 1])
    assert c.inner == pytest.approx(2.0)
