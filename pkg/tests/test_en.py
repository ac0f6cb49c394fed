from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from strandlab.chain import betti_from_minimal, exactness_check, is_minimal, verify_complex
from strandlab.en import (
    compositions,
    en_multidegree,
    en_rank,
    generalized_sparse_en,
    indexing_set,
    sparse_en,
    specialize_complex,
)
from strandlab.errors import IndexOutOfRange, InvalidShape
from strandlab.ideals import Monomial, Substitution, all_squarefree, power_of_max
from strandlab.oracle import multigraded_betti
from strandlab.simplicial import SimplicialComplex


def test_indexing_set_worked_values():
    assert indexing_set((1, 1, 1), (1, 2, 3, 4, 5, 6)) == [(1, 1), (1, 2), (2, 3), (2, 4), (3, 5), (3, 6)]
    assert indexing_set((1, 0, 2), (1, 2, 3, 4, 5, 6)) == [(1, 1), (1, 2), (3, 4), (3, 5), (3, 6)]
    assert indexing_set((2, 1), (1, 2, 4, 5, 6)) == [(1, 1), (1, 2), (1, 4), (2, 5), (2, 6)]
    assert indexing_set((0, 0, 0), (2, 4, 7)) == []
    with pytest.raises(IndexOutOfRange):
        indexing_set((2, 1), (1, 2, 3))


def test_en_rank():
    assert [en_rank(2, 3, l) for l in (1, 2)] == [3, 2]
    assert [en_rank(2, 4, l) for l in (1, 2, 3)] == [6, 8, 3]
    assert [en_rank(1, 5, l) for l in range(1, 6)] == [comb(5, l) for l in range(1, 6)]


def test_en_multidegree():
    want = Monomial.from_vars([(1, 1), (1, 2), (1, 4), (2, 5), (2, 6)])
    assert en_multidegree((2, 1), (1, 2, 4, 5, 6)) == want
    assert en_multidegree((0, 0, 0), (2, 4, 7)) == Monomial.from_vars([(1, 2), (2, 4), (3, 7)])


def test_sparse_en_shapes():
    assert sparse_en(2, 3).ranks() == (3, 2)
    assert sparse_en(1, 4).ranks() == (4, 6, 4, 1)
    assert sparse_en(3, 3).ranks() == (1,)
    with pytest.raises(InvalidShape):
        sparse_en(4, 3)


def test_generalized_on_full_simplex_is_sparse_en():
    full = generalized_sparse_en(SimplicialComplex.simplex(5), 2)
    C = sparse_en(2, 5)
    assert full.ranks() == C.ranks()
    assert [[b.label for b in lv] for lv in full.levels] == [[b.label for b in lv] for lv in C.levels]


def test_specializations_resolve_their_targets():
    S = specialize_complex(sparse_en(2, 4), Substitution.SQUAREFREE, 4)
    assert verify_complex(S) and is_minimal(S)
    assert exactness_check(S, all_squarefree(4, 2))
    assert betti_from_minimal(S).ranks() == (6, 8, 3)
    B = specialize_complex(sparse_en(2, 3), Substitution.BOXPOL, 2)
    assert exactness_check(B, power_of_max(2, 2))
    assert betti_from_minimal(B) == multigraded_betti(power_of_max(2, 2))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 3), st.integers(0, 3), st.data())
def test_indexing_set_size_and_rows(n, total, data):
    alpha = data.draw(st.sampled_from(compositions(total, n)))
    size = n + total
    I = tuple(sorted(data.draw(st.sets(st.integers(1, 9), min_size=size, max_size=size))))
    pairs = indexing_set(alpha, I)
    assert len(pairs) == sum(a + 1 for a in alpha if a > 0)
    rows = {r for r, _ in pairs}
    assert rows == {i for i, a in enumerate(alpha, start=1) if a > 0}
    mdeg = en_multidegree(alpha, I)
    assert mdeg.degree == size and mdeg.is_squarefree()
    assert all(mdeg[(r, c)] == 1 for r, c in pairs)


@pytest.mark.parametrize("n,m", [(1, 3), (2, 2), (2, 5), (3, 5), (4, 6)])
def test_sparse_en_is_a_minimal_complex(n, m):
    C = sparse_en(n, m)
    assert verify_complex(C) and is_minimal(C)
    assert C.ranks() == tuple(en_rank(n, m, l) for l in range(1, m - n + 2))
