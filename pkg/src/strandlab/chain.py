"""Multigraded free complexes whose differential entries are scalar * monomial.

Level 0 is the rank-one ring itself (multidegree 1); level i >= 1 of an
ideal resolution is generated in total degree n + i - 1 when the ideal is
generated in degree n. All Betti tables use this level indexing, so a table
entry at index i corresponds to beta_i(R/I) = beta_{i-1}(I).

Because every free module here has one generator per basis element, the
multidegree-alpha piece of the complex is spanned by the basis elements with
multidegree dividing alpha; ``strand`` extracts that finite-dimensional
complex and everything else reduces to ranks over a field.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Sequence

from .errors import NonHomogeneous, NotAComplex, NotMinimal, ShapeMismatch
from .exactla import ScalarField, SparseMatrix, rank
from .ideals import Monomial, MonomialIdeal
from .simplicial import HomologyVector

Multidegree = Monomial


@dataclass(frozen=True)
class BasisElement:
    label: Hashable
    mdeg: Multidegree


@dataclass(frozen=True)
class Entry:
    """Coefficient ``coeff * mono`` from ``source`` (level l) to ``target`` (level l-1)."""

    target: int
    source: int
    coeff: int
    mono: Monomial


class MonomialChainComplex:
    def __init__(self, levels: Sequence[Sequence[BasisElement]], differentials: dict[int, Iterable[Entry]]):
        self.levels: list[list[BasisElement]] = [list(lv) for lv in levels]
        self.differentials: dict[int, list[Entry]] = {
            l: [e for e in entries if e.coeff != 0] for l, entries in differentials.items()
        }
        for l in range(1, len(self.levels)):
            self.differentials.setdefault(l, [])

    @property
    def length(self) -> int:
        return len(self.levels) - 1

    def ranks(self) -> tuple[int, ...]:
        """Ranks of levels 1..L (level 0 omitted)."""
        return tuple(len(lv) for lv in self.levels[1:])

    def index(self, level: int) -> dict[Hashable, int]:
        return {b.label: k for k, b in enumerate(self.levels[level])}

    def by_source(self, level: int) -> dict[int, list[Entry]]:
        out: dict[int, list[Entry]] = defaultdict(list)
        for e in self.differentials.get(level, ()):
            out[e.source].append(e)
        return out

    def apply(self, level: int, vec: dict[int, tuple[int, Monomial]] | dict) -> dict:
        """Apply d_level to a combination ``{source: {monomial: coeff}}``.

        Returns ``{target: {monomial: coeff}}`` with zero terms dropped.
        """
        bs = self.by_source(level)
        out: dict[int, dict[Monomial, int]] = defaultdict(lambda: defaultdict(int))
        for s, terms in vec.items():
            for mono, c in terms.items():
                for e in bs.get(s, ()):
                    out[e.target][mono * e.mono] += c * e.coeff
        return {t: {mo: c for mo, c in terms.items() if c} for t, terms in out.items() if any(terms.values())}

    @cached_property
    def _is_complex(self) -> bool:
        return verify_complex(self)

    def to_json(self) -> dict:
        def lab(x):
            if isinstance(x, tuple):
                return [lab(y) for y in x]
            return x

        return {
            "levels": [[{"label": lab(b.label), "mdeg": b.mdeg.to_json()} for b in lv] for lv in self.levels],
            "differentials": {
                str(l): [[e.target, e.source, e.coeff, e.mono.to_json()] for e in es]
                for l, es in sorted(self.differentials.items())
            },
        }


def _check_shapes(C: MonomialChainComplex) -> None:
    for l, entries in C.differentials.items():
        if not 1 <= l < len(C.levels):
            raise ShapeMismatch(f"differential at level {l} has no source level")
        nt, ns = len(C.levels[l - 1]), len(C.levels[l])
        for e in entries:
            if not (0 <= e.target < nt and 0 <= e.source < ns):
                raise ShapeMismatch(f"entry {e} outside {nt}x{ns} at level {l}")


def verify_complex(C: MonomialChainComplex) -> bool:
    """True iff every composite d_l o d_(l+1) vanishes as a polynomial matrix."""
    _check_shapes(C)
    for l in range(1, C.length):
        lower = C.by_source(l)
        acc: dict[tuple[int, int, Monomial], int] = defaultdict(int)
        for e in C.differentials[l + 1]:
            for g in lower.get(e.target, ()):
                acc[(e.source, g.target, e.mono * g.mono)] += e.coeff * g.coeff
        if any(acc.values()):
            return False
    return True


def is_homogeneous(C: MonomialChainComplex, coarse: tuple[int, int] | None = None) -> bool:
    """mdeg(source) == mono * mdeg(target) for every entry.

    With ``coarse=(n, m)`` the comparison is made in the row/column-sum grading.
    """
    _check_shapes(C)
    for l, entries in C.differentials.items():
        for e in entries:
            src = C.levels[l][e.source].mdeg
            tgt = e.mono * C.levels[l - 1][e.target].mdeg
            if coarse is None:
                if src != tgt:
                    return False
            elif src.row_col_degree(*coarse) != tgt.row_col_degree(*coarse):
                return False
    return True


def is_minimal(C: MonomialChainComplex) -> bool:
    return all(not e.mono.is_one() for es in C.differentials.values() for e in es)


@dataclass
class Strand:
    """The multidegree-alpha piece of a complex as a complex of vector spaces."""

    alpha: Multidegree
    basis: list[list[int]]
    matrices: dict[int, SparseMatrix] = field(default_factory=dict)

    def dims(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.basis)


def strand(C: MonomialChainComplex, alpha: Multidegree, f: ScalarField = ScalarField()) -> Strand:
    basis = [[k for k, b in enumerate(lv) if b.mdeg.divides(alpha)] for lv in C.levels]
    pos = [{k: r for r, k in enumerate(b)} for b in basis]
    mats = {}
    for l in range(1, len(C.levels)):
        tpos, spos = pos[l - 1], pos[l]
        entries = {}
        for e in C.differentials[l]:
            if e.source in spos and e.target in tpos:
                key = (tpos[e.target], spos[e.source])
                entries[key] = f.reduce(entries.get(key, 0) + e.coeff)
        mats[l] = SparseMatrix(len(basis[l - 1]), len(basis[l]), entries)
    return Strand(alpha, basis, mats)


def _strand_homology(S: Strand, f: ScalarField) -> HomologyVector:
    ranks = {l: rank(M, f) for l, M in S.matrices.items()}
    dims = {}
    for l, b in enumerate(S.basis):
        dims[l] = len(b) - ranks.get(l, 0) - ranks.get(l + 1, 0)
    return HomologyVector(dims)


def strand_homology(C: MonomialChainComplex, alpha: Multidegree, f: ScalarField = ScalarField()) -> HomologyVector:
    """Homology of the degree-alpha piece, keyed by level (level 0 included)."""
    if not C._is_complex:
        raise NotAComplex("d o d != 0")
    return _strand_homology(strand(C, alpha, f), f)


def join_closure(degrees: Iterable[Multidegree]) -> list[Multidegree]:
    """All joins (lcms) of nonempty subsets, sorted by (degree, exponents)."""
    gens = sorted(set(degrees))
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                j = a.lcm(g)
                if j not in seen:
                    seen.add(j)
                    new.append(j)
        frontier = new
    return sorted(seen)


@dataclass(frozen=True)
class ExactnessVerdict:
    ok: bool
    witness: Multidegree | None = None
    level: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def exactness_check(C: MonomialChainComplex, I: MonomialIdeal, f: ScalarField = ScalarField()) -> ExactnessVerdict:
    """Is C a free resolution of R/I?

    Checks every alpha in the join-closure of the generators of I together
    with all basis multidegrees. Since each strand only depends on which
    basis degrees lie below alpha, this finite set certifies exactness in
    every multidegree.
    """
    if not C._is_complex:
        raise NotAComplex("d o d != 0")
    if not is_homogeneous(C):
        raise NonHomogeneous("complex is not multigraded")
    if len(C.levels) < 2 or len(C.levels[0]) != 1 or not C.levels[0][0].mdeg.is_one():
        return ExactnessVerdict(False, reason="level 0 is not the ring")
    if sorted(b.mdeg for b in C.levels[1]) != sorted(I.gens):
        return ExactnessVerdict(False, level=1, reason="level-1 degrees differ from the generators of I")
    degrees = set(I.gens)
    for lv in C.levels[1:]:
        degrees.update(b.mdeg for b in lv)
    for alpha in join_closure(degrees):
        H = _strand_homology(strand(C, alpha, f), f)
        if H[0] != (0 if alpha in I else 1):
            return ExactnessVerdict(False, alpha, 0, "wrong cokernel at level 0")
        for l in range(1, len(C.levels)):
            if H[l]:
                return ExactnessVerdict(False, alpha, l, f"nonzero homology at level {l}")
    return ExactnessVerdict(True)


def is_linear_strand_complex(C: MonomialChainComplex, n: int, f: ScalarField = ScalarField()) -> ExactnessVerdict:
    """Linear-strand criterion in level indexing.

    Accepts iff for every level i >= 1 the homology at level i vanishes in
    all multidegrees of total degree n + i - 1 and n + i. Only degrees
    reachable from a level-i basis element can carry homology there, so the
    candidates are mdeg(b) and mdeg(b) * x_v.
    """
    if not C._is_complex:
        raise NotAComplex("d o d != 0")
    variables = sorted({v for lv in C.levels for b in lv for v in b.mdeg.support})
    for i in range(1, len(C.levels)):
        candidates = set()
        for b in C.levels[i]:
            if b.mdeg.degree == n + i - 1:
                candidates.add(b.mdeg)
            for v in variables:
                cand = b.mdeg * Monomial.var(*v)
                if cand.degree == n + i:
                    candidates.add(cand)
        for alpha in sorted(candidates):
            H = _strand_homology(strand(C, alpha, f), f)
            if H[i]:
                return ExactnessVerdict(False, alpha, i, f"H_{i} nonzero in degree {alpha.degree}")
    return ExactnessVerdict(True)


class BettiTable:
    """Multigraded Betti numbers ``(level, multidegree) -> count``, levels >= 1."""

    def __init__(self, fine: dict[tuple[int, Multidegree], int] | None = None):
        self.fine: dict[tuple[int, Multidegree], int] = {k: v for k, v in (fine or {}).items() if v}

    def coarse(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = defaultdict(int)
        for (i, a), c in self.fine.items():
            out[(i, a.degree)] += c
        return dict(sorted(out.items()))

    def ranks(self) -> tuple[int, ...]:
        """Total count per level 1..max."""
        if not self.fine:
            return ()
        top = max(i for i, _ in self.fine)
        tot = defaultdict(int)
        for (i, _), c in self.fine.items():
            tot[i] += c
        return tuple(tot[i] for i in range(1, top + 1))

    def max_entry(self) -> int:
        return max(self.fine.values(), default=0)

    def __eq__(self, other) -> bool:
        return isinstance(other, BettiTable) and self.fine == other.fine

    def __repr__(self) -> str:
        return f"BettiTable(ranks={self.ranks()}, coarse={self.coarse()})"

    def to_json(self) -> dict:
        fine = sorted(self.fine.items(), key=lambda kv: (kv[0][0], kv[0][1].sort_key()))
        return {
            "fine": [[i, a.to_json(), c] for (i, a), c in fine],
            "coarse": [[i, j, c] for (i, j), c in self.coarse().items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BettiTable":
        return cls({(i, Monomial.from_json(a)): c for i, a, c in data["fine"]})

    def render(self) -> str:
        """Betti diagram: column i, row j - i, entry beta_{i,j}; level 0 holds the ring."""
        coarse = self.coarse()
        if not coarse:
            return "(empty)"
        top = max(i for i, _ in coarse)
        shifts = sorted({j - i for i, j in coarse} | {0})
        width = max(len(str(c)) for c in list(coarse.values()) + [top]) + 1
        lines = ["      " + "".join(f"{i:>{width}}" for i in range(top + 1))]
        lines.append("total:" + "".join(f"{(1 if i == 0 else sum(c for (a, _), c in coarse.items() if a == i)):>{width}}" for i in range(top + 1)))
        for s in shifts:
            row = []
            for i in range(top + 1):
                if i == 0:
                    c = 1 if s == 0 else 0
                else:
                    c = coarse.get((i, i + s), 0)
                row.append("." if c == 0 else str(c))
            lines.append(f"{s:>5}:" + "".join(f"{x:>{width}}" for x in row))
        return "\n".join(lines)


def betti_from_minimal(C: MonomialChainComplex) -> BettiTable:
    if not is_minimal(C):
        raise NotMinimal("complex has a unit entry")
    fine: dict[tuple[int, Multidegree], int] = defaultdict(int)
    for l in range(1, len(C.levels)):
        for b in C.levels[l]:
            fine[(l, b.mdeg)] += 1
    return BettiTable(dict(fine))


def linear_strand_table(B: BettiTable, n: int) -> BettiTable:
    """Entries at level i >= 1 with total degree n + i - 1."""
    return BettiTable({(i, a): c for (i, a), c in B.fine.items() if i >= 1 and a.degree == n + i - 1})
