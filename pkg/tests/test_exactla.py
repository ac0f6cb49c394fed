from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from strandlab.errors import InputError, NotAComplex, NotComposable
from strandlab.exactla import (
    ScalarField,
    SparseMatrix,
    homology_dim,
    kernel_basis,
    rank,
    rref,
    vector_in_span,
)

GF = ScalarField.prime()
QQ = ScalarField.rational()

small_matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def test_field_parse_roundtrip():
    assert ScalarField.parse("prime:32003") == GF
    assert ScalarField.parse("rational") == QQ
    assert str(ScalarField.parse("prime:7")) == "prime:7"
    with pytest.raises(InputError):
        ScalarField.parse("prime:8")
    with pytest.raises(InputError):
        ScalarField.parse("reals")


def test_reduce_fraction_mod_p():
    f = ScalarField.prime(7)
    assert f.reduce(Fraction(1, 2)) == 4
    assert f.mul(f.inv(3), 3) == 1


def test_zero_entries_are_dropped():
    A = SparseMatrix.from_dense([[0, 1], [0, 0]])
    assert A.entries == {(0, 1): 1}
    assert A.to_dense() == [[0, 1], [0, 0]]


def test_rank_small_cases():
    assert rank(SparseMatrix.zeros(3, 4)) == 0
    assert rank(SparseMatrix.identity(5)) == 5
    assert rank(SparseMatrix.from_dense([[1, 2], [2, 4]])) == 1
    assert rank(SparseMatrix.from_dense([[1, 2, 3], [4, 5, 6], [7, 8, 9]]), QQ) == 2


def test_rank_depends_on_characteristic():
    # det = 3, so the matrix drops rank mod 3 only
    A = SparseMatrix.from_dense([[1, 1], [1, 4]])
    assert rank(A, ScalarField.prime(3)) == 1
    assert rank(A, QQ) == 2


def test_rref_pivots():
    R, piv = rref(SparseMatrix.from_dense([[0, 2, 4], [0, 1, 3]]), QQ)
    assert piv == [1, 2]
    assert R.to_dense() == [[0, 1, 0], [0, 0, 1]]


def test_kernel_basis_annihilated():
    A = SparseMatrix.from_dense([[1, 1, 0], [0, 1, 1]])
    K = kernel_basis(A, QQ)
    assert len(K) == 1
    assert all(x == 0 for x in A.apply(K[0], QQ))


def test_homology_dim_and_errors():
    # Q --d_in--> Q^2 --d_out--> Q, exact in the middle
    d_in = SparseMatrix.from_dense([[1], [-1]])
    d_out = SparseMatrix.from_dense([[1, 1]])
    assert homology_dim(d_in, d_out) == 0
    assert homology_dim(SparseMatrix.zeros(2, 1), d_out) == 1
    with pytest.raises(NotComposable):
        homology_dim(d_in, SparseMatrix.zeros(1, 3))
    with pytest.raises(NotAComplex):
        homology_dim(SparseMatrix.from_dense([[1], [1]]), d_out)


def test_vector_in_span():
    vs = [[1, 0, 1], [0, 1, 1]]
    assert vector_in_span(vs, [1, 1, 2], QQ)
    assert not vector_in_span(vs, [1, 1, 1], QQ)
    assert vector_in_span([], [0, 0], QQ)


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_rank_prime_matches_rational_on_small_entries(rows):
    # entries bounded by 3 in at most 6x6: minors stay far below 32003
    A = SparseMatrix.from_dense(rows)
    assert rank(A, GF) == rank(A, QQ)


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_rank_nullity(rows):
    A = SparseMatrix.from_dense(rows)
    assert rank(A, QQ) + len(kernel_basis(A, QQ)) == A.cols
    assert rank(A.transpose(), QQ) == rank(A, QQ)


@settings(max_examples=40, deadline=None)
@given(small_matrices)
def test_matmul_matches_dense(rows):
    A = SparseMatrix.from_dense(rows)
    At = A.transpose()
    P = A.matmul(At)
    dense = [[sum(a * b for a, b in zip(r1, r2)) for r2 in rows] for r1 in rows]
    assert P.to_dense() == dense
