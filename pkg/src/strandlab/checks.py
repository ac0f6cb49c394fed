"""Verification blocks run by ``strandlab verify``.

Each block returns a list of ``Check`` records; nothing here raises on a
failed verification. Blocks are pure functions of their arguments, so the
CLI can fan them out over a process pool and reassemble results in order.
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from . import catalog
from .boxes import (
    cell_homology,
    cellular_chain_complex,
    complex_of_boxes,
    f_vector,
    induced_box_subcomplex,
    is_cellular_linear_strand,
    is_cellular_resolution,
    restrict_leq,
)
from .chain import (
    betti_from_minimal,
    exactness_check,
    is_homogeneous,
    is_linear_strand_complex,
    is_minimal,
    linear_strand_table,
    strand_homology,
    verify_complex,
)
from .en import en_rank, generalized_sparse_en, indexing_set, sparse_en, specialize_complex
from .exactla import ScalarField
from .ideals import (
    Monomial,
    Substitution,
    all_squarefree,
    initial_dfi,
    lcm_closed,
    power_of_max,
    specialize,
)
from .oracle import multigraded_betti
from .simplicial import SimplicialComplex, clique_complex, i_nonfaces

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


@dataclass
class Check:
    name: str
    verdict: str
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "verdict": self.verdict, "detail": self.detail}


def _v(ok: bool) -> str:
    return PASS if ok else FAIL


def _faces(fs) -> list[list[int]]:
    return [list(f) for f in fs]


def run_parallel(fn, items, jobs: int = 1) -> list:
    """``[fn(x) for x in items]``, optionally across processes, order preserved."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def h1_vanishes(C, n: int, f: ScalarField) -> bool:
    """H_1 of a generalized sparse EN complex is zero in every degree n + 1."""
    variables = sorted({v for lv in C.levels for b in lv for v in b.mdeg.support})
    if len(C.levels) < 2:
        return True
    for b in C.levels[1]:
        for v in variables:
            alpha = b.mdeg * Monomial.var(*v)
            if alpha.degree == n + 1 and strand_homology(C, alpha, f)[1]:
                return False
    return True


def sparse_en_block(args) -> list[Check]:
    n, m, f = args
    tag = f"sparse-en[n={n},m={m}]"
    C = sparse_en(n, m)
    I = initial_dfi(SimplicialComplex.complete(m, n), n)
    expected = tuple(en_rank(n, m, l) for l in range(1, m - n + 2))
    ex = exactness_check(C, I, f)
    ours = betti_from_minimal(C)
    oracle = multigraded_betti(I, f)
    return [
        Check(f"{tag} d^2=0", _v(verify_complex(C))),
        Check(f"{tag} homogeneous (fine)", _v(is_homogeneous(C))),
        Check(f"{tag} homogeneous (row/column)", _v(is_homogeneous(C, (n, m)))),
        Check(f"{tag} minimal", _v(is_minimal(C))),
        Check(f"{tag} ranks", _v(C.ranks() == expected), {"ranks": list(C.ranks()), "expected": list(expected)}),
        Check(f"{tag} exact", _v(ex.ok), {"witness": ex.witness.to_json() if ex.witness else None}),
        Check(f"{tag} fine betti <= 1", _v(ours.max_entry() <= 1)),
        Check(f"{tag} oracle betti", _v(ours == oracle), {"oracle_ranks": list(oracle.ranks())}),
        Check(f"{tag} oracle coarse = EN ranks", _v(oracle.ranks() == expected)),
    ]


def specialization_block(args) -> list[Check]:
    n, m, f = args
    C = sparse_en(n, m)
    out = []
    for phi, target, ideal in (
        (Substitution.SQUAREFREE, m, all_squarefree(m, n)),
        (Substitution.BOXPOL, m - n + 1, power_of_max(m - n + 1, n)),
    ):
        tag = f"{phi.value}[n={n},m={m}]"
        S = specialize_complex(C, phi, target)
        ok = verify_complex(S) and is_minimal(S)
        ex = exactness_check(S, ideal, f)
        oracle = multigraded_betti(ideal, f)
        out.append(Check(f"{tag} complex & minimal", _v(ok)))
        out.append(Check(f"{tag} resolves", _v(ex.ok), {"witness": ex.witness.to_json() if ex.witness else None}))
        out.append(Check(f"{tag} oracle betti", _v(betti_from_minimal(S) == oracle), {"ranks": list(oracle.ranks())}))
    return out


def boxes_block(args) -> list[Check]:
    n, m, f = args
    tag = f"boxes[n={n},m={m}]"
    P = complex_of_boxes(n, m)
    I = initial_dfi(SimplicialComplex.complete(m, n), n)
    C = cellular_chain_complex(P)
    expected = tuple(en_rank(n, m, l) for l in range(1, m - n + 2))
    return [
        Check(f"{tag} f-vector = EN ranks", _v(f_vector(P) == expected), {"f_vector": list(f_vector(P))}),
        Check(f"{tag} cellular d^2=0 & homogeneous", _v(verify_complex(C) and is_homogeneous(C))),
        Check(f"{tag} cellular resolution", _v(is_cellular_resolution(P, I, f).ok)),
        Check(f"{tag} cellular linear strand", _v(is_cellular_linear_strand(P, I, f).ok)),
        Check(f"{tag} cellular betti = oracle", _v(betti_from_minimal(C) == multigraded_betti(I, f))),
    ]


def complex_report(delta: SimplicialComplex, n: int, f: ScalarField, name: str = "complex") -> tuple[list[Check], dict]:
    """Generalized sparse EN, box subcomplex and oracle for one pure complex."""
    K = clique_complex(delta, n)
    C = generalized_sparse_en(K, n)
    I = initial_dfi(delta, n)
    lin = linear_strand_table(multigraded_betti(I, f), n)
    P = induced_box_subcomplex(complex_of_boxes(n, delta.m), delta)
    nonfaces = {c: i_nonfaces(K, 1, c) for c in range(n + 1, delta.m + 1)}
    no_nf = not nonfaces.get(n + 1)
    h1 = h1_vanishes(C, n, f)
    checks = [
        Check(f"{name} H1 vanishing <=> no 1-nonface of size n+1", _v(h1 == no_nf), {"h1_vanishes": h1}),
        Check(f"{name} f-vector = oracle linear strand", _v(f_vector(P) == lin.ranks())),
        Check(f"{name} box subcomplex supports linear strand", _v(is_cellular_linear_strand(P, I, f).ok)),
    ]
    if no_nf:
        checks.append(Check(f"{name} generalized sparse EN = linear strand", _v(betti_from_minimal(C) == lin)))
        checks.append(Check(f"{name} linear-strand criterion", _v(is_linear_strand_complex(C, n, f).ok)))
    else:
        checks.append(Check(f"{name} generalized sparse EN = linear strand", SKIP, {"reason": "has 1-nonfaces of size n+1"}))
    tables = {
        "cliques": _faces(K.facets),
        "one_nonfaces": {str(c): _faces(v) for c, v in nonfaces.items()},
        "gen_sparse_en_ranks": list(C.ranks()),
        "f_vector": list(f_vector(P)),
        "linear_strand": lin.to_json(),
        "lcm_closed": bool(lcm_closed(delta, n)),
    }
    return checks, tables


def worked_examples(f: ScalarField) -> list[Check]:
    G1 = catalog.GRAPH_TWO_TRIANGLES_ON_14
    G2 = catalog.GRAPH_TWO_TRIANGLES_ON_23
    G3 = catalog.GRAPH_TWO_TRIANGLES_ON_24
    T = catalog.THREE_TRIANGLES_AT_1
    out = []
    cases = [
        (((1, 1, 1), (1, 2, 3, 4, 5, 6)), [(1, 1), (1, 2), (2, 3), (2, 4), (3, 5), (3, 6)]),
        (((1, 0, 2), (1, 2, 3, 4, 5, 6)), [(1, 1), (1, 2), (3, 4), (3, 5), (3, 6)]),
        (((2, 1), (1, 2, 4, 5, 6)), [(1, 1), (1, 2), (1, 4), (2, 5), (2, 6)]),
    ]
    for (alpha, I), want in cases:
        out.append(Check(f"indexing set {alpha} {I}", _v(indexing_set(alpha, I) == want)))

    K1, K2, K3 = (clique_complex(G, 2) for G in (G1, G2, G3))
    out.append(Check("cliques of graph 1 = 124, 134", _v(K1.facets == ((1, 2, 4), (1, 3, 4)))))
    out.append(Check("cliques of graph 2 = 123, 234", _v(K2.facets == ((1, 2, 3), (2, 3, 4)))))
    out.append(Check("cliques of graph 3 = 124, 234", _v(K3.facets == ((1, 2, 4), (2, 3, 4)))))
    out.append(Check("1234 is a 1-nonface of clique(graph 1)", _v(i_nonfaces(K1, 1, 4) == [(1, 2, 3, 4)])))
    out.append(Check("1234 is not a 1-nonface of clique(graph 2)", _v(i_nonfaces(K2, 1, 4) == [])))
    out.append(Check("clique(graph 2) has no 1-nonfaces of size 3", _v(i_nonfaces(K2, 1, 3) == [])))
    out.append(Check("clique(graph 3) has no 1-nonfaces of size 4", _v(i_nonfaces(K3, 1, 4) == [])))
    out.append(Check("134 is the 1-nonface of size 3 of clique(graph 3)", _v(i_nonfaces(K3, 1, 3) == [(1, 3, 4)])))
    out.append(Check("123,145,167 has no 1-nonfaces of size 4", _v(i_nonfaces(clique_complex(T, 3), 1, 4) == [])))

    I1 = initial_dfi(G1, 2)
    P1 = induced_box_subcomplex(complex_of_boxes(2, 4), G1)
    out.append(Check("f-vector of P(graph 1) = (5,6,2)", _v(f_vector(P1) == (5, 6, 2))))
    lin = linear_strand_table(multigraded_betti(I1, f), 2)
    out.append(Check("oracle linear strand of graph 1 = (5,6,2)", _v(lin.ranks() == (5, 6, 2))))

    C1 = generalized_sparse_en(K1, 2)
    ok, info = witness_cycle_class(C1, f)
    out.append(Check("witness cycle x22 f13 - x23 f12 is not a boundary", _v(ok), info))

    alpha = Monomial.from_vars([(1, 1), (1, 2), (2, 3), (2, 4)])
    R = restrict_leq(P1, alpha)
    H = cell_homology(R, f)
    out.append(Check(
        "P(graph 1)_<=x11x12x23x24 has H~0 = 1",
        _v(H[0] == 1),
        {"cells": [[list(X) for X in b] for b in R.boxes], "homology": {str(k): v for k, v in H.nonzero().items()}},
    ))
    out.append(Check("P(graph 1) supports the linear strand", _v(is_cellular_linear_strand(P1, I1, f).ok)))
    res = is_cellular_resolution(P1, I1, f)
    out.append(Check("P(graph 1) does not support the full resolution", _v(not res.ok), {"resolution_test": res.ok}))

    C23 = sparse_en(2, 3)
    out.append(Check("sparse EN 2x3 resolves in(I_2)", _v(exactness_check(C23, initial_dfi(SimplicialComplex.complete(3, 2), 2), f).ok)))
    P24 = complex_of_boxes(2, 4)
    I24 = initial_dfi(SimplicialComplex.complete(4, 2), 2)
    out.append(Check("complex of boxes 2x4 is a minimal linear cellular resolution",
                     _v(is_cellular_resolution(P24, I24, f).ok and is_cellular_linear_strand(P24, I24, f).ok)))
    out.append(Check("box polarization of x12x25x36 is z2 z4^2",
                     _v(specialize(Monomial.from_vars([(1, 2), (2, 5), (3, 6)]), Substitution.BOXPOL)
                        == Monomial({(1, 2): 1, (1, 4): 2}))))
    return out


def witness_cycle_class(C, f: ScalarField) -> tuple[bool, dict]:
    """Is ``x22 f_13 - x23 f_12`` a cycle of C that is not a boundary?

    C is the generalized sparse EN complex of the clique complex of graph 1;
    the element comes from the 1-nonface 123 (deleting positions 2 and 3).
    """
    from .exactla import SparseMatrix, vector_in_span

    idx = C.index(1)
    z = {idx[((0, 0), (1, 3))]: {Monomial.var(2, 2): 1}, idx[((0, 0), (1, 2))]: {Monomial.var(2, 3): -1}}
    is_cycle = not C.apply(1, z)
    alpha = Monomial.from_vars([(1, 1), (2, 2), (2, 3)])
    from .chain import strand

    S = strand(C, alpha, f)
    pos = {k: r for r, k in enumerate(S.basis[1])}
    vec = [0] * len(S.basis[1])
    for k, terms in z.items():
        vec[pos[k]] = f.reduce(sum(terms.values()))
    D2 = S.matrices.get(2, SparseMatrix(len(S.basis[1]), 0))
    cols = [[D2.entries.get((r, c), 0) for r in range(D2.rows)] for c in range(D2.cols)]
    boundary = vector_in_span(cols, vec, f)
    H = strand_homology(C, alpha, f)
    info = {"is_cycle": is_cycle, "is_boundary": boundary, "H1": H[1], "level2_reading_is_cycle": level_two_reading_is_cycle(C)}
    return is_cycle and not boundary, info


def level_two_reading_is_cycle(C) -> dict:
    """Whether ``x22 f_134 - x23 f_124`` at level 2 is a cycle, for each divided-power index."""
    idx = C.index(2)
    out = {}
    for a in ((1, 0), (0, 1)):
        z = {idx[(a, (1, 3, 4))]: {Monomial.var(2, 2): 1}, idx[(a, (1, 2, 4))]: {Monomial.var(2, 3): -1}}
        out[str(list(a))] = not C.apply(2, z)
    return out


def random_pure_complex(rng: random.Random) -> tuple[SimplicialComplex, int]:
    n = rng.choice((2, 3))
    m = rng.randint(n + 1, 6)
    pool = list(combinations(range(1, m + 1), n))
    k = rng.randint(1, len(pool))
    return SimplicialComplex.from_facets(m, rng.sample(pool, k)), n


def property_trial(args) -> dict:
    seed, t, f = args
    delta, n = random_pure_complex(random.Random(f"{seed}:{t}"))
    K = clique_complex(delta, n)
    out = {"facets": _faces(delta.facets), "n": n, "m": delta.m}
    nf = i_nonfaces(K, 1, n + 1)
    out["a_clique"] = h1_vanishes(generalized_sparse_en(K, n), n, f) == (not nf)
    out["a_delta"] = h1_vanishes(generalized_sparse_en(delta, n), n, f) == (not i_nonfaces(delta, 1, n + 1))
    closed = bool(lcm_closed(delta, n))
    out["b"] = (not closed) or not any(i_nonfaces(K, 1, c) for c in range(n + 1, delta.m + 1))
    out["alt_reading_differs"] = closed != bool(lcm_closed(delta, n, positional=False))
    if nf:
        out["c"] = None
    else:
        I = initial_dfi(delta, n)
        lin = linear_strand_table(multigraded_betti(I, f), n)
        P = induced_box_subcomplex(complex_of_boxes(n, delta.m), delta)
        C = generalized_sparse_en(K, n)
        out["c"] = f_vector(P) == lin.ranks() and betti_from_minimal(C) == lin
    return out


def property_suite(seed: int, trials: int, f: ScalarField, jobs: int = 1) -> tuple[list[Check], dict]:
    results = run_parallel(property_trial, [(seed, t, f) for t in range(trials)], jobs)
    bad = lambda key: [r["facets"] for r in results if r[key] is False]
    applicable = [r for r in results if r["c"] is not None]
    differs = [r["facets"] for r in results if r["alt_reading_differs"]]
    checks = [
        Check("H1 vanishing <=> no 1-nonface of size n+1 (clique complex)", _v(not bad("a_clique")), {"failures": bad("a_clique")}),
        Check("H1 vanishing <=> no 1-nonface of size n+1 (complex itself)", _v(not bad("a_delta")), {"failures": bad("a_delta")}),
        Check("lcm-closed => no 1-nonfaces of size >= n+1 in the clique complex", _v(not bad("b")),
              {"failures": bad("b"), "lcm_closed_instances": sum(1 for r in results if r["b"] is True),
               "alternative_reading_disagreements": differs}),
        Check("no 1-nonface of size n+1 => f-vector = oracle linear strand = generalized sparse EN",
              _v(not bad("c")) if applicable else SKIP, {"failures": bad("c"), "applicable": len(applicable)}),
    ]
    return checks, {"trials": trials, "seed": seed, "alternative_lcm_reading_disagreements": len(differs)}


def gen_sparse_block(args) -> list[Check]:
    name, delta, n, f = args
    K = clique_complex(delta, n)
    C = generalized_sparse_en(K, n)
    nf = i_nonfaces(K, 1, n + 1)
    return [
        Check(f"{name} d^2=0", _v(verify_complex(C))),
        Check(f"{name} homogeneous (fine and row/column)", _v(is_homogeneous(C) and is_homogeneous(C, (n, delta.m)))),
        Check(f"{name} minimal", _v(is_minimal(C))),
        Check(f"{name} H1 vanishing <=> no 1-nonface of size n+1", _v(h1_vanishes(C, n, f) == (not nf)),
              {"one_nonfaces": _faces(nf)}),
    ]


def linear_strand_block(args) -> tuple[list[Check], dict]:
    name, delta, n, f = args
    return complex_report(delta, n, f, name)
