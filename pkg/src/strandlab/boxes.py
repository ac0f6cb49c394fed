"""The complex of boxes for the diagonal initial ideal of maximal minors.

A box is a tuple ``(X_1, ..., X_n)`` of nonempty column sets with
``max(X_k) < min(X_{k+1})``; its vertices are the selection tuples
``(a_1, ..., a_n)`` with ``a_k`` in ``X_k``, all of them increasing. The box
is the product of simplices ``X_1 x ... x X_n``, of dimension
``sum |X_k| - n``, and carries the squarefree label
``prod_k prod_{c in X_k} x[k][c]``.

Orientation: each ``X_k`` is ordered increasingly and dropping its t-th
element (1-based, when ``|X_k| >= 2``) has sign
``(-1)^((t - 1) + sum_{l<k} (|X_l| - 1))``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product

from .chain import BasisElement, Entry, MonomialChainComplex, join_closure
from .errors import InputError, InvalidShape, LabelMismatch, NotPure
from .exactla import ScalarField, SparseMatrix
from .ideals import Monomial, MonomialIdeal
from .simplicial import HomologyVector, SimplicialComplex, homology_from_groups

Box = tuple[tuple[int, ...], ...]


def box_dim(box: Box) -> int:
    return sum(len(X) for X in box) - len(box)


def box_label(box: Box) -> Monomial:
    return Monomial.from_vars((k, c) for k, X in enumerate(box, start=1) for c in X)


def box_vertices(box: Box) -> list[tuple[int, ...]]:
    return list(product(*box))


def box_facets(box: Box) -> list[tuple[int, Box]]:
    """Codimension-one faces with their orientation signs."""
    out = []
    shift = 0
    for k, X in enumerate(box):
        if len(X) >= 2:
            for t in range(len(X)):
                sign = -1 if (t + shift) % 2 else 1
                out.append((sign, box[:k] + (X[:t] + X[t + 1:],) + box[k + 1:]))
        shift += len(X) - 1
    return out


def _is_box(box: Box) -> bool:
    if any(not X or list(X) != sorted(set(X)) for X in box):
        return False
    return all(box[k][-1] < box[k + 1][0] for k in range(len(box) - 1))


def _all_boxes(n: int, m: int) -> list[Box]:
    # Boxes whose parts fit in columns lo..m, for n parts, memoized by (n, lo).
    memo: dict[tuple[int, int], list[Box]] = {}

    def rec(parts: int, lo: int) -> list[Box]:
        if parts == 0:
            return [()]
        key = (parts, lo)
        if key not in memo:
            out = []
            # leave room for the remaining parts-1 parts
            for top in range(lo, m - parts + 2):
                for size in range(1, top - lo + 2):
                    for rest in combinations(range(lo, top), size - 1):
                        X = rest + (top,)
                        out.extend((X,) + tail for tail in rec(parts - 1, top + 1))
            memo[key] = out
        return memo[key]

    return rec(n, 1)


@dataclass(frozen=True)
class BoxComplex:
    n: int
    m: int
    boxes: tuple[Box, ...]

    @classmethod
    def from_boxes(cls, n: int, m: int, boxes) -> "BoxComplex":
        boxes = {tuple(tuple(X) for X in b) for b in boxes}
        for b in boxes:
            if len(b) != n or not _is_box(b) or b[-1][-1] > m:
                raise InputError(f"{b} is not a box inside K for n={n}, m={m}")
        return cls(n, m, tuple(sorted(boxes, key=lambda b: (box_dim(b), b))))

    @cached_property
    def box_set(self) -> frozenset:
        return frozenset(self.boxes)

    @property
    def dim(self) -> int:
        return max((box_dim(b) for b in self.boxes), default=-1)

    def cells(self, d: int) -> list[Box]:
        return [b for b in self.boxes if box_dim(b) == d]

    def vertex_labels(self) -> dict[tuple[int, ...], Monomial]:
        return {tuple(X[0] for X in b): box_label(b) for b in self.cells(0)}

    def is_face_closed(self) -> bool:
        s = self.box_set
        return all(face in s for b in self.boxes for _, face in box_facets(b))

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "boxes": [[list(X) for X in b] for b in self.boxes]}

    @classmethod
    def from_json(cls, data) -> "BoxComplex":
        if not isinstance(data, dict):
            with open(data) as fh:
                data = json.load(fh)
        return cls.from_boxes(data["n"], data["m"], data["boxes"])


def complex_of_boxes(n: int, m: int) -> BoxComplex:
    if not 1 <= n <= m:
        raise InvalidShape(f"need 1 <= n <= m, got n={n}, m={m}")
    return BoxComplex.from_boxes(n, m, _all_boxes(n, m))


def induced_box_subcomplex(P: BoxComplex, delta: SimplicialComplex) -> BoxComplex:
    """Boxes of P all of whose selection tuples are facets of ``delta``."""
    if delta.is_void or not delta.is_pure(P.n - 1):
        raise NotPure(f"complex is not pure of dimension {P.n - 1}")
    facets = set(delta.facets)
    keep = [b for b in P.boxes if all(v in facets for v in box_vertices(b))]
    return BoxComplex(P.n, P.m, tuple(keep))


def f_vector(P: BoxComplex) -> tuple[int, ...]:
    return tuple(len(P.cells(d)) for d in range(P.dim + 1))


def restrict_leq(P: BoxComplex, alpha: Monomial) -> BoxComplex:
    """Cells whose label divides ``x^alpha``."""
    return BoxComplex(P.n, P.m, tuple(b for b in P.boxes if box_label(b).divides(alpha)))


def cellular_chain_complex(P: BoxComplex) -> MonomialChainComplex:
    """Labeled cellular complex: level = dimension + 1, level 0 the empty cell."""
    levels = [[BasisElement("empty", Monomial.one())]]
    index: list[dict[Box, int]] = [{}]
    diffs: dict[int, list[Entry]] = {}
    for d in range(P.dim + 1):
        cells = P.cells(d)
        levels.append([BasisElement(b, box_label(b)) for b in cells])
        index.append({b: k for k, b in enumerate(cells)})
        entries = []
        for k, b in enumerate(cells):
            lab = box_label(b)
            if d == 0:
                entries.append(Entry(0, k, 1, lab))
                continue
            for sign, face in box_facets(b):
                entries.append(Entry(index[d][face], k, sign, lab / box_label(face)))
        diffs[d + 1] = entries
    return MonomialChainComplex(levels, diffs)


def cell_homology(P: BoxComplex, f: ScalarField = ScalarField()) -> HomologyVector:
    """Reduced cellular homology, keyed by dimension (-1 for the empty cell)."""
    if not P.boxes:
        return HomologyVector({})
    groups = [[()]] + [P.cells(d) for d in range(P.dim + 1)]
    bds = [SparseMatrix(1, len(groups[1]), {(0, k): 1 for k in range(len(groups[1]))})]
    for d in range(1, P.dim + 1):
        index = {b: r for r, b in enumerate(groups[d])}
        entries = {}
        for c, b in enumerate(groups[d + 1]):
            for sign, face in box_facets(b):
                entries[(index[face], c)] = sign
        bds.append(SparseMatrix(len(groups[d]), len(groups[d + 1]), entries))
    return homology_from_groups(groups, bds, f)


@dataclass(frozen=True)
class CellularVerdict:
    ok: bool
    witness: Monomial | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _check_labels(P: BoxComplex, I: MonomialIdeal) -> None:
    labels = sorted(P.vertex_labels().values())
    if labels != sorted(I.degree_part(P.n).gens):
        raise LabelMismatch("vertex labels differ from the degree-n generators of I")


def is_cellular_resolution(P: BoxComplex, I: MonomialIdeal, f: ScalarField = ScalarField()) -> CellularVerdict:
    """Does the labeled complex resolve R/I minimally?

    Every ``P_{<= alpha}`` with alpha in the join-closure of the labels must be
    acyclic, no incident cells may share a label, and the labels must generate
    all of I.
    """
    _check_labels(P, I)
    if len(I.degree_part(P.n)) != len(I):
        return CellularVerdict(False, reason="I has generators outside degree n")
    for b in P.boxes:
        lab = box_label(b)
        for _, face in box_facets(b):
            if box_label(face) == lab:
                return CellularVerdict(False, lab, "not minimal")
    for alpha in join_closure(P.vertex_labels().values()):
        if not cell_homology(restrict_leq(P, alpha), f).is_zero():
            return CellularVerdict(False, alpha, "P_<=alpha is not acyclic")
    return CellularVerdict(True)


def is_cellular_linear_strand(P: BoxComplex, I: MonomialIdeal, f: ScalarField = ScalarField()) -> CellularVerdict:
    """For all alpha with |alpha| = n + k, k > 0: H~_k and H~_(k-1) of P_<=alpha vanish.

    ``P_<=alpha`` only depends on the join beta of the labels below alpha, and
    squarefree labels let any beta in the join-closure be padded to every
    total degree >= |beta| without adding cells, so it is enough to test each
    beta against every k >= max(1, |beta| - n).
    """
    _check_labels(P, I)
    n = P.n
    for beta in join_closure(P.vertex_labels().values()):
        sub = restrict_leq(P, beta)
        H = cell_homology(sub, f)
        for k in range(max(1, beta.degree - n), sub.dim + 2):
            if H[k] or H[k - 1]:
                return CellularVerdict(False, beta, f"H~ nonzero near dimension {k}")
    return CellularVerdict(True)
