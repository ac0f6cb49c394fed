"""Monomials on the n x m variable grid and monomial ideals.

A variable is a pair ``(row, col)``. Single-index variables (the ``y_j`` of
the squarefree specialization, the ``z_r`` of box polarization) live in row
1, so one ``Monomial`` type serves every ring used here.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Mapping

from .errors import InputError, NotPure, OutOfRange, WrongCardinality
from .simplicial import Face, SimplicialComplex, clique_complex, clique_decomposition

Var = tuple[int, int]


class Monomial:
    """Immutable exponent vector with finite support; doubles as a multidegree."""

    __slots__ = ("_exps", "_dict", "_hash")

    def __init__(self, exps: Mapping[Var, int] | Iterable[tuple[Var, int]] = ()):
        items = exps.items() if isinstance(exps, Mapping) else exps
        d: dict[Var, int] = {}
        for v, e in items:
            if e < 0:
                raise ValueError(f"negative exponent on {v}")
            if e:
                d[v] = d.get(v, 0) + e
        self._exps = tuple(sorted(d.items()))
        self._dict = dict(self._exps)
        self._hash = hash(self._exps)

    @classmethod
    def one(cls) -> "Monomial":
        return cls()

    @classmethod
    def var(cls, row: int, col: int, e: int = 1) -> "Monomial":
        return cls({(row, col): e})

    @classmethod
    def from_vars(cls, vars: Iterable[Var]) -> "Monomial":
        return cls((v, 1) for v in vars)

    @property
    def exponents(self) -> dict[Var, int]:
        return dict(self._dict)

    def items(self):
        return self._exps

    def __getitem__(self, v: Var) -> int:
        return self._dict.get(v, 0)

    @property
    def support(self) -> tuple[Var, ...]:
        return tuple(v for v, _ in self._exps)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self._exps)

    def is_one(self) -> bool:
        return not self._exps

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self._exps)

    def row_col_degree(self, n: int, m: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Coarse Z^n x Z^m degree: exponent sums per row and per column."""
        rows = [0] * n
        cols = [0] * m
        for (i, j), e in self._exps:
            rows[i - 1] += e
            cols[j - 1] += e
        return tuple(rows), tuple(cols)

    def __mul__(self, other: "Monomial") -> "Monomial":
        d = dict(self._dict)
        for v, e in other._exps:
            d[v] = d.get(v, 0) + e
        return Monomial(d)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        d = dict(self._dict)
        for v, e in other._exps:
            d[v] -= e
        return Monomial(d)

    def divides(self, other: "Monomial") -> bool:
        od = other._dict
        return all(od.get(v, 0) >= e for v, e in self._exps)

    def lcm(self, other: "Monomial") -> "Monomial":
        d = dict(self._dict)
        for v, e in other._exps:
            if e > d.get(v, 0):
                d[v] = e
        return Monomial(d)

    join = lcm

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self._exps == other._exps

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self):
        return (self.degree, self._exps)

    def __lt__(self, other: "Monomial") -> bool:
        # Total order for reproducible sorting; divisibility is ``divides``.
        return self.sort_key() < other.sort_key()

    def render(self, var: str = "x") -> str:
        if not self._exps:
            return "1"
        parts = []
        for (i, j), e in self._exps:
            s = f"{var}[{i}][{j}]"
            parts.append(s if e == 1 else f"{s}^{e}")
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"Monomial({self.render()})"

    __str__ = render

    def to_json(self) -> list:
        return [[f"{i},{j}", e] for (i, j), e in self._exps]

    @classmethod
    def from_json(cls, data) -> "Monomial":
        exps = {}
        for key, e in data:
            parts = str(key).split(",")
            if len(parts) == 1:
                var = (1, int(parts[0]))
            elif len(parts) == 2:
                var = (int(parts[0]), int(parts[1]))
            else:
                raise InputError(f"bad variable key {key!r}")
            exps[var] = exps.get(var, 0) + int(e)
        return cls(exps)


def monomial_lcm(u: Monomial, v: Monomial) -> Monomial:
    return u.lcm(v)


def divides(u: Monomial, v: Monomial) -> bool:
    return u.divides(v)


def minimalize(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    """Drop every generator divisible by another one; sorted by (degree, exponents)."""
    uniq = sorted(set(gens))
    kept: list[Monomial] = []
    for g in uniq:
        if not any(k.divides(g) for k in kept):
            kept.append(g)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class MonomialIdeal:
    gens: tuple[Monomial, ...]
    rows: int | None = None
    cols: int | None = None

    @classmethod
    def of(cls, gens: Iterable[Monomial], rows: int | None = None, cols: int | None = None) -> "MonomialIdeal":
        return cls(minimalize(gens), rows, cols)

    def __contains__(self, mono: Monomial) -> bool:
        return any(g.divides(mono) for g in self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    def degree_part(self, d: int) -> "MonomialIdeal":
        """Ideal generated by the minimal generators of degree ``d``."""
        return MonomialIdeal(tuple(g for g in self.gens if g.degree == d), self.rows, self.cols)

    def to_json(self) -> dict:
        if self.rows == 1 or self.rows is None:
            cols = self.cols if self.cols is not None else max((j for g in self.gens for (_, j) in g.support), default=0)
            vars = {"count": cols}
        else:
            vars = {"rows": self.rows, "cols": self.cols}
        return {"vars": vars, "gens": [g.to_json() for g in self.gens]}

    def render(self, var: str = "x") -> str:
        return "(" + ", ".join(g.render(var) for g in self.gens) + ")"


def load_ideal(source) -> MonomialIdeal:
    if isinstance(source, dict):
        data = source
    else:
        try:
            with open(source) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read ideal: {exc}") from exc
    try:
        vars = data["vars"]
        gens = [Monomial.from_json(g) for g in data["gens"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad ideal JSON: {exc}") from None
    if "count" in vars:
        rows, cols = 1, int(vars["count"])
    else:
        rows, cols = int(vars["rows"]), int(vars["cols"])
    for g in gens:
        for i, j in g.support:
            if not (1 <= i <= rows and 1 <= j <= cols):
                raise InputError(f"variable ({i},{j}) outside the declared grid")
    return MonomialIdeal.of(gens, rows, cols)


def diagonal_initial_term(a: Face, n: int) -> Monomial:
    """``x[1][a1] * x[2][a2] * ... * x[n][an]`` for an increasing n-tuple ``a``."""
    if len(a) != n:
        raise WrongCardinality(f"|{a}| != {n}")
    if any(a[k] >= a[k + 1] for k in range(n - 1)):
        raise WrongCardinality(f"{a} is not strictly increasing")
    return Monomial.from_vars((k + 1, c) for k, c in enumerate(a))


def initial_dfi(delta: SimplicialComplex, n: int) -> MonomialIdeal:
    """Degree-n ideal generated by the diagonal terms of the facets of ``delta``."""
    if n < 1 or delta.is_void or not delta.is_pure(n - 1):
        raise NotPure(f"complex is not pure of dimension {n - 1}")
    return MonomialIdeal.of((diagonal_initial_term(f, n) for f in delta.facets), n, delta.m)


@dataclass(frozen=True)
class LcmClosedVerdict:
    closed: bool
    pair: tuple[Face, Face] | None = None
    cliques: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.closed


def lcm_closed(delta: SimplicialComplex, n: int, positional: bool = True) -> LcmClosedVerdict:
    """Decide lcm-closedness; on failure report the offending facets and clique indices.

    With ``positional`` two facets interact only when they agree in the same
    sorted position. ``positional=False`` lets any shared vertex trigger the
    condition; it exists so the two readings can be compared.
    """
    cliques = clique_complex(delta, n).facets
    pieces = clique_decomposition(delta, n)
    terms = {f: diagonal_initial_term(f, n) for f in delta.facets}
    for i, j in combinations(range(len(cliques)), 2):
        common = sorted(set(cliques[i]) & set(cliques[j]))
        inter = list(combinations(common, n))
        inter_set = set(inter)
        for a in pieces[i].facets:
            if a in inter_set:
                continue
            for b in pieces[j].facets:
                if b in inter_set:
                    continue
                if positional:
                    shares = any(a[k] == b[k] for k in range(n))
                else:
                    shares = bool(set(a) & set(b))
                if not shares:
                    continue
                top = terms[a].lcm(terms[b])
                if not any(diagonal_initial_term(c, n).divides(top) for c in inter):
                    return LcmClosedVerdict(False, (a, b), (i, j))
    return LcmClosedVerdict(True)


class Substitution(enum.Enum):
    SQUAREFREE = "squarefree"
    BOXPOL = "boxpol"


def specialize(mono: Monomial, phi: Substitution, target: int | None = None) -> Monomial:
    """Apply a variable substitution exponent-wise.

    SQUAREFREE sends ``x[i][j]`` to ``y_j``; BOXPOL relabels ``x[i][j]`` to
    ``x[j-i+1][i]`` and then forgets the column, landing on ``z_{j-i+1}``.
    Single-index targets are stored in row 1. ``target`` bounds the index.
    """
    exps: dict[Var, int] = {}
    for (i, j), e in mono.items():
        k = j if phi is Substitution.SQUAREFREE else j - i + 1
        if k < 1 or (target is not None and k > target):
            raise OutOfRange(f"x[{i}][{j}] leaves the target grid under {phi.value}")
        exps[(1, k)] = exps.get((1, k), 0) + e
    return Monomial(exps)


def all_squarefree(m: int, n: int) -> MonomialIdeal:
    """All squarefree monomials of degree n in y_1..y_m."""
    return MonomialIdeal.of((Monomial.from_vars((1, j) for j in c) for c in combinations(range(1, m + 1), n)), 1, m)


def power_of_max(r: int, n: int) -> MonomialIdeal:
    """``(z_1, ..., z_r)^n``."""
    return MonomialIdeal.of(
        (Monomial.from_vars((1, j) for j in c) for c in combinations_with_replacement(range(1, r + 1), n)), 1, r
    )


def canonical_ideal(kind: str, a: int, n: int) -> MonomialIdeal:
    if kind == "ALL_SQUAREFREE":
        return all_squarefree(a, n)
    if kind == "POWER_OF_MAX":
        return power_of_max(a, n)
    raise ValueError(f"unknown canonical ideal {kind!r}")
