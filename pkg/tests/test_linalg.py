from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from signed_consensus.linalg import (determinant, in_span, matvec, nullspace_oracle, rank,
                                     to_exact)

from oracles import PRINTED_LA, PRINTED_XI, leibniz_det

small_ints = st.integers(-3, 3).map(float)


def test_identity():
    assert determinant(np.eye(3)) == pytest.approx(1.0)
    assert determinant(to_exact(np.eye(3))) == 1


def test_two_by_two():
    assert determinant(np.array([[1.0, 1.0], [-1.0, 1.0]])) == pytest.approx(2.0)
    assert determinant(to_exact([[1, 1], [-1, 1]])) == 2


def test_empty_is_one():
    assert determinant(np.zeros((0, 0))) == 1.0
    assert determinant([]) == 1


def test_non_square():
    with pytest.raises(ValueError):
        determinant(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        determinant(to_exact([[1, 2, 3], [4, 5, 6]]))


def test_example_laplacian_singular():
    assert determinant(to_exact(PRINTED_LA)) == 0
    assert abs(determinant(np.array(PRINTED_LA))) < 1e-9
    assert rank(np.array(PRINTED_LA)) <= 12
    assert rank(to_exact(PRINTED_LA)) == 10


@settings(max_examples=200)
@given(st.integers(1, 5).flatmap(lambda n: arrays(float, (n, n), elements=small_ints)))
def test_determinant_against_leibniz(M):
    expected = leibniz_det(M.tolist())
    assert determinant(to_exact(M)) == expected
    assert determinant(M) == pytest.approx(float(expected), abs=1e-9)


def test_nullspace_zero_matrix():
    basis = nullspace_oracle(np.zeros((2, 2)))
    assert len(basis) == 2


def test_nullspace_rank_one():
    (v,) = nullspace_oracle(np.array([[1.0, -1.0], [-1.0, 1.0]]))
    assert np.allclose(v / v[0], [1, 1])


def test_example_nullspace_contains_printed_xi():
    La = to_exact(PRINTED_LA)
    assert all(x == 0 for x in matvec(La, PRINTED_XI))
    basis = nullspace_oracle(La)
    assert len(basis) == 3
    for v in basis:
        assert all(x == 0 for x in matvec(La, v))
    # printed vector is a rational combination of the basis: solve on free coordinates
    assert in_span([float(x) for x in PRINTED_XI], basis)


@settings(max_examples=200)
@given(st.integers(1, 6).flatmap(lambda n: arrays(float, (n, n), elements=small_ints)))
def test_nullspace_dimension(M):
    exact = to_exact(M)
    basis = nullspace_oracle(exact)
    assert len(basis) == len(M) - np.linalg.matrix_rank(M)
    for v in basis:
        assert all(x == 0 for x in matvec(exact, v))
    fbasis = nullspace_oracle(M)
    assert len(fbasis) == len(basis)
    for v in fbasis:
        assert np.allclose(M @ v, 0, atol=1e-9)


def test_matvec_exact():
    assert matvec([[Fraction(1, 2), Fraction(1)]], [Fraction(2), Fraction(3)]) == [Fraction(4)]
