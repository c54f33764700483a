import numpy as np
import pytest

from signed_consensus.balance import RootCondition, classify_root_condition, graph_balance
from signed_consensus.connectivity import analyze_connectivity
from signed_consensus.generate import InfeasibleError, random_rooted_graph, random_signed_digraph


@pytest.mark.parametrize("seed", range(20))
def test_flags(seed):
    g = random_signed_digraph(6, 0.3, 0.5, seed, spanning_tree=True, balanced=True)
    assert graph_balance(g)
    assert analyze_connectivity(g).roots


def test_same_seed_same_graph():
    assert random_signed_digraph(8, 0.4, 0.3, 9) == random_signed_digraph(8, 0.4, 0.3, 9)


def test_infeasible():
    with pytest.raises(InfeasibleError):
        random_signed_digraph(1, 0.5, 0.5, 0)


@pytest.mark.parametrize("cond", ["C1", "C2", "C3"])
def test_rooted_generator_hits_condition(cond):
    rng = np.random.default_rng(0)
    for _ in range(40):
        g = random_rooted_graph(rng, int(rng.integers(2, 9)), cond)
        rep = analyze_connectivity(g)
        assert rep.is_quasi_strongly_connected
        assert classify_root_condition(g, rep) is RootCondition(cond)
