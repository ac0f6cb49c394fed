"""Simplicial complexes on the vertex set 1..m.

A complex is presented by its facets. Faces are sorted tuples of vertices;
every set-valued result is returned in lexicographic order. The void complex
(no faces at all) and the complex ``{()}`` holding only the empty face are
different objects: the latter has reduced homology in degree -1.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .errors import InputError, NotPure
from .exactla import ScalarField, SparseMatrix, rank

Face = tuple[int, ...]


def _maximalize(faces: Iterable[Face]) -> tuple[Face, ...]:
    uniq = sorted(set(faces), key=lambda f: (-len(f), f))
    kept: list[Face] = []
    kept_sets: list[frozenset] = []
    for f in uniq:
        s = frozenset(f)
        if any(s <= k for k in kept_sets):
            continue
        kept.append(f)
        kept_sets.append(s)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class SimplicialComplex:
    m: int
    facets: tuple[Face, ...]
    input_was_antichain: bool = field(default=True, compare=False)

    @classmethod
    def from_facets(cls, m: int, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        raw = [tuple(sorted(f)) for f in facets]
        for f in raw:
            if len(set(f)) != len(f):
                raise InputError(f"repeated vertex in facet {f}")
            if f and (f[0] < 1 or f[-1] > m):
                raise InputError(f"facet {f} not inside 1..{m}")
        maximal = _maximalize(raw)
        antichain = len(maximal) == len(raw)
        return cls(m, maximal, antichain)

    @classmethod
    def void(cls, m: int) -> "SimplicialComplex":
        return cls(m, ())

    @classmethod
    def simplex(cls, m: int, vertices: Iterable[int] | None = None) -> "SimplicialComplex":
        verts = tuple(range(1, m + 1)) if vertices is None else tuple(sorted(vertices))
        return cls(m, (verts,))

    @classmethod
    def complete(cls, m: int, k: int) -> "SimplicialComplex":
        """All k-subsets of 1..m as facets."""
        return cls(m, tuple(combinations(range(1, m + 1), k)))

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def dim(self) -> int:
        """Dimension; -1 for ``{()}`` and, by convention, for the void complex too."""
        return max((len(f) for f in self.facets), default=0) - 1

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self.facets for v in f}))

    def is_pure(self, dim: int | None = None) -> bool:
        sizes = {len(f) for f in self.facets}
        if dim is None:
            return len(sizes) <= 1
        return sizes == {dim + 1}

    def __contains__(self, face) -> bool:
        s = set(face)
        return any(s.issubset(f) for f in self.facets)

    def faces(self, k: int) -> list[Face]:
        """All faces with exactly k vertices."""
        out = set()
        for f in self.facets:
            if len(f) >= k:
                out.update(combinations(f, k))
        return sorted(out)

    def all_faces(self) -> list[Face]:
        out = []
        for k in range(self.dim + 2):
            out.extend(self.faces(k))
        return out

    def to_json(self) -> dict:
        return {"m": self.m, "facets": [list(f) for f in self.facets]}


def faces(delta: SimplicialComplex, k: int) -> list[Face]:
    return delta.faces(k)


def skeleton(delta: SimplicialComplex, i: int) -> SimplicialComplex:
    """Faces of dimension at most ``i``, re-presented by maximal ones."""
    if delta.is_void:
        return delta
    out = []
    for f in delta.facets:
        if len(f) <= i + 1:
            out.append(f)
        else:
            out.extend(combinations(f, i + 1))
    return SimplicialComplex(delta.m, _maximalize(out))


def induced_subcomplex(delta: SimplicialComplex, W: Iterable[int]) -> SimplicialComplex:
    W = set(W)
    if delta.is_void:
        return delta
    return SimplicialComplex(delta.m, _maximalize(tuple(v for v in f if v in W) for f in delta.facets))


def _require_pure(delta: SimplicialComplex, n: int) -> None:
    if n < 1 or delta.is_void or not delta.is_pure(n - 1):
        raise NotPure(f"complex is not pure of dimension {n - 1}")


def clique_complex(delta: SimplicialComplex, n: int) -> SimplicialComplex:
    """Complex whose facets are the maximal cliques of a pure (n-1)-dim complex.

    A clique is a vertex set of size >= n all of whose n-subsets are facets.
    Cliques are grown one vertex at a time from the facets themselves.
    """
    _require_pure(delta, n)
    facet_set = set(delta.facets)
    level = {frozenset(f) for f in delta.facets}
    maximal: set[frozenset] = set()
    verts = range(1, delta.m + 1)
    while level:
        nxt = set()
        for gamma in level:
            grown = False
            for v in verts:
                if v in gamma:
                    continue
                if all(tuple(sorted(s + (v,))) in facet_set for s in combinations(sorted(gamma), n - 1)):
                    nxt.add(gamma | {v})
                    grown = True
            if not grown:
                maximal.add(gamma)
        level = nxt
    return SimplicialComplex(delta.m, tuple(sorted(tuple(sorted(g)) for g in maximal)))


def clique_decomposition(delta: SimplicialComplex, n: int) -> list[SimplicialComplex]:
    """The pieces Delta_i = (n-1)-skeleton of each maximal clique, in clique order."""
    cliques = clique_complex(delta, n)
    return [SimplicialComplex(delta.m, tuple(combinations(g, n))) for g in cliques.facets]


def _is_i_nonface(delta: SimplicialComplex, sigma: Face, i: int) -> bool:
    if sigma in delta:
        return False
    c = len(sigma)
    # j is 1-based; positions j..j+i must exist in sigma.
    for j in range(1, c - i + 1):
        if all(sigma[:p - 1] + sigma[p:] in delta for p in range(j, j + i + 1)):
            return True
    return False


def i_nonfaces(delta: SimplicialComplex, i: int, c: int) -> list[Face]:
    """Non-faces of size ``c`` with ``i + 1`` consecutive deletions landing in ``delta``."""
    if i < 1 or c < 1:
        return []
    return [s for s in combinations(range(1, delta.m + 1), c) if _is_i_nonface(delta, s, i)]


@dataclass(frozen=True)
class HomologyVector:
    """Homology dimensions keyed by degree; absent degrees are zero."""

    dims: dict[int, int]

    def __getitem__(self, k: int) -> int:
        return self.dims.get(k, 0)

    def nonzero(self) -> dict[int, int]:
        return {k: v for k, v in sorted(self.dims.items()) if v}

    def is_zero(self) -> bool:
        return not self.nonzero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomologyVector):
            return NotImplemented
        return self.nonzero() == other.nonzero()

    def __hash__(self):
        return hash(tuple(self.nonzero().items()))

    def __repr__(self) -> str:
        return f"HomologyVector({self.nonzero()})"


def chain_groups(delta: SimplicialComplex) -> list[list[Face]]:
    """Faces grouped by cardinality 0..dim+1 (empty face included)."""
    if delta.is_void:
        return []
    return [delta.faces(k) for k in range(delta.dim + 2)]


def boundary_matrix(lower: list[Face], upper: list[Face]) -> SparseMatrix:
    """Simplicial boundary from faces of size k+1 to faces of size k."""
    index = {f: r for r, f in enumerate(lower)}
    entries = {}
    for c, f in enumerate(upper):
        for t in range(len(f)):
            entries[(index[f[:t] + f[t + 1:]], c)] = -1 if t % 2 else 1
    return SparseMatrix(len(lower), len(upper), entries)


def homology_from_groups(groups: list[list], boundaries: list[SparseMatrix], f: ScalarField) -> HomologyVector:
    """Reduced homology from chain groups by cardinality and their boundaries.

    ``boundaries[k]`` maps cardinality k+1 to cardinality k.
    """
    ranks = [rank(B, f) for B in boundaries]
    dims = {}
    for k, g in enumerate(groups):
        out_rank = ranks[k - 1] if k >= 1 else 0
        in_rank = ranks[k] if k < len(ranks) else 0
        dims[k - 1] = len(g) - out_rank - in_rank
    return HomologyVector(dims)


def reduced_homology(delta: SimplicialComplex, f: ScalarField = ScalarField()) -> HomologyVector:
    groups = chain_groups(delta)
    bds = [boundary_matrix(groups[k], groups[k + 1]) for k in range(len(groups) - 1)]
    return homology_from_groups(groups, bds, f)


def euler_characteristic(delta: SimplicialComplex) -> int:
    """Reduced Euler characteristic: sum over faces (empty one included) of (-1)^dim."""
    return sum((-1) ** (k - 1) * len(g) for k, g in enumerate(chain_groups(delta)))


def load_complex(source) -> SimplicialComplex:
    """Load ``{"m": int, "facets": [[...], ...]}`` from a path, string or dict."""
    if isinstance(source, dict):
        data = source
    else:
        try:
            with open(source) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read complex: {exc}") from exc
    try:
        m = data["m"]
        facets = data["facets"]
    except (KeyError, TypeError):
        raise InputError('complex JSON needs "m" and "facets"') from None
    if not isinstance(m, int) or m < 0 or not isinstance(facets, list):
        raise InputError("bad complex JSON")
    for f in facets:
        if not isinstance(f, list) or not all(isinstance(v, int) for v in f):
            raise InputError(f"bad facet {f!r}")
    return SimplicialComplex.from_facets(m, facets)
