import pytest

from strandlab.boxes import (
    BoxComplex,
    box_facets,
    cell_homology,
    cellular_chain_complex,
    complex_of_boxes,
    f_vector,
    induced_box_subcomplex,
    is_cellular_linear_strand,
    is_cellular_resolution,
    restrict_leq,
)
from strandlab.chain import betti_from_minimal, exactness_check, is_homogeneous, is_minimal, verify_complex
from strandlab.en import en_rank
from strandlab.errors import InputError, LabelMismatch, NotPure
from strandlab.ideals import Monomial, MonomialIdeal, initial_dfi
from strandlab.oracle import multigraded_betti
from strandlab.simplicial import SimplicialComplex

G1 = SimplicialComplex.from_facets(4, [[1, 2], [1, 3], [1, 4], [2, 4], [3, 4]])
G2 = SimplicialComplex.from_facets(4, [[1, 2], [1, 3], [2, 3], [2, 4], [3, 4]])


def full_ideal(n, m):
    return initial_dfi(SimplicialComplex.complete(m, n), n)


def test_complex_of_boxes_f_vectors():
    assert f_vector(complex_of_boxes(2, 4)) == (6, 8, 3)
    assert f_vector(complex_of_boxes(3, 3)) == (1,)
    assert f_vector(complex_of_boxes(1, 4)) == (4, 6, 4, 1)
    for n, m in [(2, 5), (3, 6)]:
        assert f_vector(complex_of_boxes(n, m)) == tuple(en_rank(n, m, l) for l in range(1, m - n + 2))


def test_box_complex_is_face_closed():
    assert complex_of_boxes(3, 6).is_face_closed()
    assert induced_box_subcomplex(complex_of_boxes(2, 4), G1).is_face_closed()


def test_box_facets_square_to_zero():
    box = ((1, 2), (3, 4, 5))
    total = {}
    for s1, face in box_facets(box):
        for s2, sub in box_facets(face):
            total[sub] = total.get(sub, 0) + s1 * s2
    assert all(v == 0 for v in total.values())


def test_from_boxes_validates():
    with pytest.raises(InputError):
        BoxComplex.from_boxes(2, 4, [((1, 3), (2,))])
    P = complex_of_boxes(2, 3)
    assert BoxComplex.from_json(P.to_json()) == P


def test_induced_subcomplexes():
    assert f_vector(induced_box_subcomplex(complex_of_boxes(2, 4), G1)) == (5, 6, 2)
    assert f_vector(induced_box_subcomplex(complex_of_boxes(2, 4), G2)) == (5, 4)
    single = SimplicialComplex.from_facets(4, [[2, 3]])
    assert f_vector(induced_box_subcomplex(complex_of_boxes(2, 4), single)) == (1,)
    with pytest.raises(NotPure):
        induced_box_subcomplex(complex_of_boxes(2, 4), SimplicialComplex.from_facets(4, [[1, 2, 3]]))


def test_cellular_chain_complex_resolves():
    P = complex_of_boxes(2, 3)
    C = cellular_chain_complex(P)
    assert verify_complex(C) and is_homogeneous(C) and is_minimal(C)
    assert betti_from_minimal(C).coarse() == {(1, 2): 3, (2, 3): 2}
    assert exactness_check(cellular_chain_complex(complex_of_boxes(3, 5)), full_ideal(3, 5))


def test_restrict_leq():
    P = complex_of_boxes(2, 4)
    top = Monomial.one()
    for lab in P.vertex_labels().values():
        top = top.lcm(lab)
    assert restrict_leq(P, top) == P
    assert cell_homology(restrict_leq(P, top)).is_zero()
    assert restrict_leq(P, Monomial.one()).boxes == ()


def test_first_graph_restriction_is_a_path():
    # The restriction at x11 x12 x23 x24 keeps the edge between the vertices
    # 13 and 14 and the edge between 14 and 24, so it is connected.
    P1 = induced_box_subcomplex(complex_of_boxes(2, 4), G1)
    R = restrict_leq(P1, Monomial.from_vars([(1, 1), (1, 2), (2, 3), (2, 4)]))
    assert set(R.cells(0)) == {((1,), (3,)), ((1,), (4,)), ((2,), (4,))}
    assert set(R.cells(1)) == {((1,), (3, 4)), ((1, 2), (4,))}
    assert cell_homology(R).is_zero()


def test_cellular_tests_on_full_complex():
    for m in (2, 3, 4, 5):
        P, I = complex_of_boxes(2, m), full_ideal(2, m)
        assert is_cellular_resolution(P, I)
        assert is_cellular_linear_strand(P, I)


def test_cellular_tests_on_graphs():
    P1 = induced_box_subcomplex(complex_of_boxes(2, 4), G1)
    I1 = initial_dfi(G1, 2)
    assert is_cellular_linear_strand(P1, I1)
    P2 = induced_box_subcomplex(complex_of_boxes(2, 4), G2)
    I2 = initial_dfi(G2, 2)
    assert is_cellular_linear_strand(P2, I2)
    verdict = is_cellular_resolution(P2, I2)
    assert not verdict and verdict.witness == Monomial.from_vars([(1, 1), (1, 2), (2, 2), (2, 4)])


def test_first_graph_box_complex_matches_oracle_but_resolves_its_degree_two_ideal():
    # Every cellular chain complex over G1 agrees with the oracle: the
    # degree-two ideal has no Betti numbers off the linear strand.
    P1 = induced_box_subcomplex(complex_of_boxes(2, 4), G1)
    I1 = initial_dfi(G1, 2)
    assert betti_from_minimal(cellular_chain_complex(P1)) == multigraded_betti(I1)
    assert is_cellular_resolution(P1, I1)


def test_single_vertex():
    single = SimplicialComplex.from_facets(3, [[1, 3]])
    P = induced_box_subcomplex(complex_of_boxes(2, 3), single)
    I = initial_dfi(single, 2)
    assert is_cellular_resolution(P, I) and is_cellular_linear_strand(P, I)
    assert betti_from_minimal(cellular_chain_complex(P)).ranks() == (1,)


def test_label_mismatch():
    with pytest.raises(LabelMismatch):
        is_cellular_resolution(complex_of_boxes(2, 3), MonomialIdeal.of([Monomial.var(1, 1)]))
