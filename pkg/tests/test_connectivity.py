import numpy as np
import pytest
from hypothesis import given, settings

from signed_consensus.connectivity import analyze_connectivity, ancestor_closure, weak_components
from signed_consensus.graph import GraphError, SignedDigraph, induced_unsigned

from conftest import graph
from oracles import brute_ancestors, brute_roots, brute_sccs, reach_matrix
from test_graph import weight_matrices


def test_three_cycle_any_signs():
    r = analyze_connectivity(graph(3, [(1, 2, -1.0), (2, 3, 1.0), (3, 1, -2.0)]))
    assert r.sccs == ((0, 1, 2),)
    assert r.roots == (0, 1, 2) and r.is_quasi_strongly_connected
    assert r.leaders == (0, 1, 2) and r.followers == ()


def test_path(path3):
    r = analyze_connectivity(path3)
    assert r.roots == (0,) and r.is_quasi_strongly_connected
    assert r.leaders == (0,) and r.followers == (1, 2)


def test_example_not_quasi_strongly_connected(ga):
    r = analyze_connectivity(ga)
    assert not r.is_quasi_strongly_connected
    assert r.roots == ()
    assert {3, 9} <= set(r.leaders)
    assert set(r.leaders) == {0, 3, 4, 5, 9}
    assert len(r.weak_components) == 1
    assert r.components_without_spanning_tree == (0,)
    assert r.sccs == tuple(sorted(r.sccs, key=lambda c: r.sccs.index(c)))


def test_example_matches_brute_force(ga):
    r = analyze_connectivity(ga)
    assert sorted(r.sccs, key=lambda c: c[0]) == brute_sccs(ga.weights)
    assert brute_roots(ga.weights) == []


def test_edgeless():
    r = analyze_connectivity(SignedDigraph(np.zeros((3, 3))))
    assert r.weak_components == ((0,), (1,), (2,))
    assert r.leaders == (0, 1, 2)
    assert not r.is_quasi_strongly_connected


def test_single_node_is_rooted():
    r = analyze_connectivity(SignedDigraph(np.zeros((1, 1))))
    assert r.roots == (0,) and r.is_quasi_strongly_connected


class TestAncestorClosure:
    def test_path(self, path3):
        assert ancestor_closure(path3, 2) == (0, 1, 2)

    def test_source(self, path3):
        assert ancestor_closure(path3, 0) == (0,)

    def test_example_v3(self, ga):
        assert ancestor_closure(ga, 2) == (0, 1, 2, 4, 5)

    def test_out_of_range(self, path3):
        with pytest.raises(GraphError):
            ancestor_closure(path3, 3)


@settings(max_examples=300)
@given(weight_matrices(max_n=7))
def test_against_brute_force(w):
    g = SignedDigraph(w)
    r = analyze_connectivity(g)
    assert sorted(r.sccs, key=lambda c: c[0]) == brute_sccs(w)
    assert sorted(r.roots) == brute_roots(w)
    assert r.is_quasi_strongly_connected == bool(brute_roots(w))
    for i in range(g.n):
        assert list(ancestor_closure(g, i)) == brute_ancestors(w, i)
    # partition and topological order
    assert sorted(v for c in r.sccs for v in c) == list(range(g.n))
    assert all(a < b for a, b in r.condensation)
    assert set(r.leaders) | set(r.followers) == set(range(g.n))
    assert not set(r.leaders) & set(r.followers)
    has_in = {b for _, b in r.condensation}
    assert set(r.leaders) == {v for k, c in enumerate(r.sccs) if k not in has_in for v in c}
    # every node is reachable from every root
    reach = reach_matrix(w)
    for root in r.roots:
        assert reach[root].all()
    if r.roots:
        assert len(r.source_sccs) == 1 and set(r.roots) == set(r.sccs[r.source_sccs[0]])
    # signs never matter
    assert analyze_connectivity(induced_unsigned(g)).sccs == r.sccs


@given(weight_matrices())
def test_weak_components_partition(w):
    g = SignedDigraph(w)
    comps = weak_components(g)
    assert sorted(v for c in comps for v in c) == list(range(g.n))
    assert [c[0] for c in comps] == sorted(c[0] for c in comps)
    label = {v: k for k, c in enumerate(comps) for v in c}
    for s, d, _ in g.edges():
        assert label[s] == label[d]
