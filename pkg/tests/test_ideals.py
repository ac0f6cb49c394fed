import pytest
from hypothesis import given, settings, strategies as st

from strandlab.errors import InputError, NotPure, OutOfRange, WrongCardinality
from strandlab.ideals import (
    Monomial,
    MonomialIdeal,
    Substitution,
    all_squarefree,
    canonical_ideal,
    diagonal_initial_term,
    initial_dfi,
    lcm_closed,
    load_ideal,
    minimalize,
    power_of_max,
    specialize,
)
from strandlab.simplicial import SimplicialComplex

x = Monomial.var


def mono(*vars):
    return Monomial.from_vars(vars)


def test_arithmetic():
    u, v = mono((1, 1), (2, 2)), mono((1, 1), (2, 3))
    assert u.lcm(v) == mono((1, 1), (2, 2), (2, 3))
    assert u.lcm(u) == u
    assert x(1, 1).divides(u)
    assert not u.divides(v)
    assert (u * v) / u == v
    assert (u * u).degree == 4 and not (u * u).is_squarefree() and u.is_squarefree()
    with pytest.raises(ValueError):
        u / v


def test_row_col_degree():
    assert mono((1, 1), (2, 3), (2, 1)).row_col_degree(2, 3) == ((1, 2), (2, 0, 1))


def test_json_roundtrip_and_render():
    u = Monomial({(1, 2): 1, (2, 5): 3})
    assert Monomial.from_json(u.to_json()) == u
    assert u.render() == "x[1][2]*x[2][5]^3"
    assert Monomial.from_json([["4", 2]]) == x(1, 4, 2)


def test_diagonal_initial_term():
    assert diagonal_initial_term((1, 2), 2) == mono((1, 1), (2, 2))
    assert diagonal_initial_term((2, 5, 6), 3) == mono((1, 2), (2, 5), (3, 6))
    with pytest.raises(WrongCardinality):
        diagonal_initial_term((1, 2, 3), 2)


def test_initial_dfi_examples():
    full = initial_dfi(SimplicialComplex.complete(3, 2), 2)
    assert set(full.gens) == {mono((1, 1), (2, 2)), mono((1, 1), (2, 3)), mono((1, 2), (2, 3))}
    g1 = SimplicialComplex.from_facets(4, [[1, 2], [1, 3], [1, 4], [2, 4], [3, 4]])
    assert len(initial_dfi(g1, 2)) == 5
    assert len(initial_dfi(SimplicialComplex.complete(6, 3), 3)) == 20
    with pytest.raises(NotPure):
        initial_dfi(SimplicialComplex.from_facets(4, [[1, 2], [2, 3, 4]]), 2)


def test_minimalize_and_membership():
    I = MonomialIdeal.of([x(1, 1), mono((1, 1), (1, 2)), x(1, 2, 2)])
    assert I.gens == (x(1, 1), x(1, 2, 2))
    assert mono((1, 2), (1, 1)) in I
    assert x(1, 2) not in I


def test_canonical_ideals():
    assert len(all_squarefree(3, 2)) == 3
    assert set(power_of_max(2, 2).gens) == {x(1, 1, 2), mono((1, 1), (1, 2)), x(1, 2, 2)}
    assert len(canonical_ideal("ALL_SQUAREFREE", 4, 4)) == 1
    with pytest.raises(ValueError):
        canonical_ideal("OTHER", 3, 2)


def test_specialize():
    assert specialize(mono((1, 1), (2, 2)), Substitution.SQUAREFREE) == mono((1, 1), (1, 2))
    assert specialize(mono((1, 2), (2, 5), (3, 6)), Substitution.BOXPOL) == Monomial({(1, 2): 1, (1, 4): 2})
    assert specialize(Monomial.one(), Substitution.BOXPOL) == Monomial.one()
    with pytest.raises(OutOfRange):
        specialize(x(2, 1), Substitution.BOXPOL)
    with pytest.raises(OutOfRange):
        specialize(x(1, 5), Substitution.SQUAREFREE, target=4)


def test_lcm_closed_examples():
    assert lcm_closed(SimplicialComplex.complete(5, 2), 2)
    g1 = SimplicialComplex.from_facets(4, [[1, 2], [1, 3], [1, 4], [2, 4], [3, 4]])
    verdict = lcm_closed(g1, 2)
    assert not verdict
    a, b = verdict.pair
    assert set(a) <= {1, 2, 4} and set(b) <= {1, 3, 4}
    assert lcm_closed(SimplicialComplex.from_facets(3, [[1, 2], [2, 3]]), 2)


def test_load_ideal(tmp_path):
    data = {"vars": {"rows": 2, "cols": 3}, "gens": [[["1,1", 1], ["2,2", 1]]]}
    assert load_ideal(data).gens == (mono((1, 1), (2, 2)),)
    assert load_ideal({"vars": {"count": 3}, "gens": [[["2", 2]]]}).gens == (x(1, 2, 2),)
    with pytest.raises(InputError):
        load_ideal({"vars": {"rows": 1, "cols": 1}, "gens": [[["2,2", 1]]]})
    with pytest.raises(InputError):
        load_ideal(str(tmp_path / "missing.json"))
    I = initial_dfi(SimplicialComplex.complete(4, 2), 2)
    assert load_ideal(I.to_json()) == I


monomials = st.dictionaries(
    st.tuples(st.integers(1, 3), st.integers(1, 4)), st.integers(0, 3), max_size=5
).map(Monomial)


@settings(max_examples=100, deadline=None)
@given(monomials, monomials, monomials)
def test_lcm_is_least_upper_bound(a, b, c):
    j = a.lcm(b)
    assert a.divides(j) and b.divides(j)
    assert j == b.lcm(a)
    assert a.lcm(j) == j
    if a.divides(c) and b.divides(c):
        assert j.divides(c)


@settings(max_examples=100, deadline=None)
@given(monomials, monomials)
def test_order_is_total_and_consistent(a, b):
    assert (a < b) + (b < a) + (a == b) == 1


@settings(max_examples=50, deadline=None)
@given(st.lists(monomials, min_size=1, max_size=6))
def test_minimalize_is_an_antichain_with_same_ideal(gens):
    kept = minimalize(gens)
    assert all(not u.divides(v) for u in kept for v in kept if u != v)
    assert all(any(k.divides(g) for k in kept) for g in gens)
