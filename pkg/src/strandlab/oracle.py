"""Brute-force multigraded Betti numbers through upper Koszul simplicial complexes.

For a monomial ideal I and a multidegree alpha, the upper Koszul complex
K^alpha(I) has a face for each squarefree tau dividing alpha with
x^(alpha - tau) in I, and beta_{i,alpha}(I) = dim H~_{i-1}(K^alpha(I)).
In the level indexing used everywhere else, the generators sit at level 1,
so the table entry at level i is dim H~_{i-2}(K^alpha(I)).

Nothing here touches chain complexes; the oracle only needs the ideal.
"""
from __future__ import annotations

from dataclasses import dataclass

from .chain import BettiTable, Multidegree, join_closure
from .exactla import ScalarField
from .ideals import Monomial, MonomialIdeal, Var
from .simplicial import HomologyVector, SimplicialComplex, reduced_homology


@dataclass(frozen=True)
class KoszulComplex:
    """K^alpha(I) together with the variable carried by each vertex 1..k."""

    complex: SimplicialComplex
    variables: tuple[Var, ...]
    off_lattice: bool = False


def upper_koszul(I: MonomialIdeal, alpha: Multidegree, lattice: set | None = None) -> KoszulComplex:
    variables = alpha.support
    pos = {v: k for k, v in enumerate(variables, start=1)}
    facets = []
    for g in I.gens:
        if not g.divides(alpha):
            continue
        # tau may use v exactly when g still divides alpha / x_v.
        facets.append([pos[v] for v in variables if g[v] <= alpha[v] - 1])
    off = lattice is not None and alpha not in lattice
    return KoszulComplex(SimplicialComplex.from_facets(len(variables), facets), variables, off)


def koszul_homology(I: MonomialIdeal, alpha: Multidegree, f: ScalarField = ScalarField()) -> HomologyVector:
    K = upper_koszul(I, alpha).complex
    if K.is_void:
        return HomologyVector({})
    if len(K.facets) > 0 and all(K.facets) and set.intersection(*(set(x) for x in K.facets)):
        # A cone over a common vertex is acyclic.
        return HomologyVector({})
    return reduced_homology(K, f)


def multigraded_betti(I: MonomialIdeal, f: ScalarField = ScalarField()) -> BettiTable:
    """Betti table of R/I at levels >= 1 over the join-closure of the generators."""
    fine: dict[tuple[int, Monomial], int] = {}
    for alpha in join_closure(I.gens):
        H = koszul_homology(I, alpha, f)
        for d, c in H.nonzero().items():
            fine[(d + 2, alpha)] = c
    return BettiTable(fine)


def betti_at(I: MonomialIdeal, alpha: Multidegree, f: ScalarField = ScalarField()) -> dict[int, int]:
    """Nonzero level -> count at one multidegree (any alpha, on the lattice or not)."""
    return {d + 2: c for d, c in koszul_homology(I, alpha, f).nonzero().items()}
