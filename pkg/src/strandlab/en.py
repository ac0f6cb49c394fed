"""Sparse Eagon-Northcott complexes for the diagonal initial ideal of maximal minors.

Level l >= 1 has basis ``g^(alpha) (x) f_I`` with ``|alpha| = l - 1`` and
``|I| = n + l - 1``; level 0 is the ring. The differential keeps, for each
row i with ``alpha_i > 0``, only the ``alpha_i + 1`` consecutive positions of
I returned by ``indexing_set``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .chain import BasisElement, Entry, MonomialChainComplex
from .errors import IndexOutOfRange, InvalidShape
from .ideals import Monomial, Substitution, diagonal_initial_term, specialize
from .simplicial import SimplicialComplex


@dataclass(frozen=True, order=True)
class ENBasis:
    I: tuple[int, ...]
    alpha: tuple[int, ...]

    @property
    def level(self) -> int:
        return sum(self.alpha) + 1


def compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` parts, lexicographic."""
    if parts == 0:
        return [()] if total == 0 else []
    out = []
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


def _row_runs(alpha: tuple[int, ...]) -> list[tuple[int, int]]:
    """1-based inclusive position range of I owned by each row."""
    runs = []
    before = 0
    for i, a in enumerate(alpha, start=1):
        runs.append((before + i, before + a + i))
        before += a
    return runs


def indexing_positions(alpha: tuple[int, ...], I: tuple[int, ...]) -> list[tuple[int, int]]:
    """``(row, position)`` pairs, positions 1-based into I."""
    out = []
    for row, (lo, hi) in enumerate(_row_runs(alpha), start=1):
        if alpha[row - 1] == 0:
            continue
        if hi > len(I):
            raise IndexOutOfRange(f"position {hi} exceeds |I| = {len(I)}")
        out.extend((row, p) for p in range(lo, hi + 1))
    return out


def indexing_set(alpha, I) -> list[tuple[int, int]]:
    """``{(i, I_{i+j}) : alpha_i > 0, |alpha_<=i-1| <= j <= |alpha_<=i|}``."""
    alpha, I = tuple(alpha), tuple(I)
    return [(row, I[p - 1]) for row, p in indexing_positions(alpha, I)]


def en_rank(n: int, m: int, level: int) -> int:
    if level < 1:
        raise ValueError("level must be >= 1")
    return comb(n + level - 2, n - 1) * comb(m, n + level - 1)


def en_multidegree(alpha, I) -> Monomial:
    """Row i takes the ``alpha_i + 1`` consecutive entries of I in its run."""
    alpha, I = tuple(alpha), tuple(I)
    if len(I) != len(alpha) + sum(alpha):
        raise IndexOutOfRange(f"|I| = {len(I)} does not match alpha {alpha}")
    return Monomial.from_vars((row, I[p - 1]) for row, (lo, hi) in enumerate(_row_runs(alpha), start=1) for p in range(lo, hi + 1))


def _build(n: int, m: int, keep) -> MonomialChainComplex:
    levels: list[list[BasisElement]] = [[BasisElement("ring", Monomial.one())]]
    diffs: dict[int, list[Entry]] = {}
    index: list[dict] = [{}]
    for l in range(1, m - n + 2):
        basis = [
            ENBasis(I, a)
            for I in combinations(range(1, m + 1), n + l - 1)
            if keep(I)
            for a in compositions(l - 1, n)
        ]
        basis.sort()
        if not basis:
            break
        levels.append([BasisElement((b.alpha, b.I), en_multidegree(b.alpha, b.I)) for b in basis])
        index.append({b: k for k, b in enumerate(basis)})
        entries = []
        for k, b in enumerate(basis):
            if l == 1:
                entries.append(Entry(0, k, 1, diagonal_initial_term(b.I, n)))
                continue
            for row, p in indexing_positions(b.alpha, b.I):
                alpha = tuple(a - (r == row) for r, a in enumerate(b.alpha, start=1))
                target = ENBasis(b.I[:p - 1] + b.I[p:], alpha)
                sign = 1 if (p + 1) % 2 == 0 else -1
                entries.append(Entry(index[l - 1][target], k, sign, Monomial.var(row, b.I[p - 1])))
        diffs[l] = entries
    return MonomialChainComplex(levels, diffs)


def sparse_en(n: int, m: int) -> MonomialChainComplex:
    if not 1 <= n <= m:
        raise InvalidShape(f"need 1 <= n <= m, got n={n}, m={m}")
    return _build(n, m, lambda I: True)


def generalized_sparse_en(delta: SimplicialComplex, n: int, m: int | None = None) -> MonomialChainComplex:
    """Subcomplex of ``sparse_en(n, m)`` on basis elements whose I is a face of ``delta``."""
    m = delta.m if m is None else m
    if not 1 <= n <= m:
        raise InvalidShape(f"need 1 <= n <= m, got n={n}, m={m}")
    return _build(n, m, lambda I: I in delta)


def specialize_complex(C: MonomialChainComplex, phi: Substitution, target: int | None = None) -> MonomialChainComplex:
    """Same basis and signs, every degree and entry pushed through ``specialize``."""
    levels = [[BasisElement(b.label, specialize(b.mdeg, phi, target)) for b in lv] for lv in C.levels]
    diffs = {
        l: [Entry(e.target, e.source, e.coeff, specialize(e.mono, phi, target)) for e in es]
        for l, es in C.differentials.items()
    }
    return MonomialChainComplex(levels, diffs)
