"""Exact sparse linear algebra over GF(p) or the rationals.

Matrices are stored as coordinate dictionaries of nonzero entries. Every
elimination works on a private copy, so a ``SparseMatrix`` can be shared
freely between callers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError, NotAComplex, NotComposable

DEFAULT_PRIME = 32003


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class ScalarField:
    """A prime field GF(p) (``p`` set) or the rationals (``p is None``)."""

    p: int | None = DEFAULT_PRIME

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise InputError(f"{self.p} is not prime")

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> "ScalarField":
        return cls(p)

    @classmethod
    def rational(cls) -> "ScalarField":
        return cls(None)

    @classmethod
    def parse(cls, text: str) -> "ScalarField":
        """Parse ``prime:P``, ``prime``, a bare integer, or ``rational``."""
        text = text.strip().lower()
        if text in ("rational", "q", "qq"):
            return cls.rational()
        if text == "prime":
            return cls.prime()
        if text.startswith("prime:"):
            text = text[len("prime:"):]
        try:
            return cls.prime(int(text))
        except ValueError:
            raise InputError(f"bad field spec {text!r}") from None

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __str__(self) -> str:
        return "rational" if self.p is None else f"prime:{self.p}"

    def reduce(self, x):
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return x % self.p

    def inv(self, x):
        if self.p is None:
            return 1 / x
        return pow(x, -1, self.p)

    def mul(self, a, b):
        if self.p is None:
            return a * b
        return a * b % self.p

    def sub(self, a, b):
        if self.p is None:
            return a - b
        return (a - b) % self.p


@dataclass
class SparseMatrix:
    rows: int
    cols: int
    entries: dict[tuple[int, int], object] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            if v != 0:
                clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        entries = {(r, c): v for r, row in enumerate(rows) for c, v in enumerate(row) if v != 0}
        return cls(nrows, ncols, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, size: int) -> "SparseMatrix":
        return cls(size, size, {(i, i): 1 for i in range(size)})

    def to_dense(self) -> list[list]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def matmul(self, other: "SparseMatrix", f: ScalarField | None = None) -> "SparseMatrix":
        """Product ``self @ other``; reduced in ``f`` when given."""
        if self.cols != other.rows:
            raise NotComposable(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        by_row: dict[int, list[tuple[int, object]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        acc: dict[tuple[int, int], object] = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        if f is not None:
            acc = {k: f.reduce(v) for k, v in acc.items()}
        return SparseMatrix(self.rows, other.cols, acc)

    def apply(self, vec: Sequence, f: ScalarField | None = None) -> list:
        out = [0] * self.rows
        for (r, c), v in self.entries.items():
            out[r] += v * vec[c]
        if f is not None:
            out = [f.reduce(x) for x in out]
        return out

    def triplets(self) -> list[tuple[int, int, object]]:
        """Coordinate triplets in (row, col) order, for debug dumps."""
        return [(r, c, self.entries[(r, c)]) for r, c in sorted(self.entries)]


def _row_dicts(A: SparseMatrix, f: ScalarField) -> list[dict[int, object]]:
    rows: list[dict[int, object]] = [dict() for _ in range(A.rows)]
    for (r, c), v in A.entries.items():
        v = f.reduce(v)
        if v != 0:
            rows[r][c] = v
    return rows


def _eliminate(A: SparseMatrix, f: ScalarField, full: bool):
    """Gaussian elimination with Markowitz pivoting.

    Returns ``(pivots, rows)`` where ``pivots`` lists ``(row, col)`` in the
    order chosen. With ``full`` the pivot column is cleared from every other
    row (Gauss-Jordan), otherwise only from rows not yet pivoted.
    """
    rows = _row_dicts(A, f)
    active = {r for r, row in enumerate(rows) if row}
    pivots: list[tuple[int, int]] = []
    while active:
        col_count: dict[int, int] = {}
        for r in active:
            for c in rows[r]:
                col_count[c] = col_count.get(c, 0) + 1
        best = None
        for r in sorted(active):
            rlen = len(rows[r]) - 1
            for c in rows[r]:
                key = (rlen * (col_count[c] - 1), r, c)
                if best is None or key < best:
                    best = key
        _, pr, pc = best
        active.discard(pr)
        prow = rows[pr]
        inv = f.inv(prow[pc])
        for c in prow:
            prow[c] = f.mul(prow[c], inv)
        targets = range(len(rows)) if full else list(active)
        for r in targets:
            if r == pr:
                continue
            row = rows[r]
            factor = row.get(pc)
            if factor is None:
                continue
            for c, v in prow.items():
                nv = f.sub(row.get(c, 0), f.mul(factor, v))
                if nv == 0:
                    row.pop(c, None)
                else:
                    row[c] = nv
            if not row:
                active.discard(r)
        pivots.append((pr, pc))
    return pivots, rows


def rank(A: SparseMatrix, f: ScalarField = ScalarField()) -> int:
    if not A.entries:
        return 0
    pivots, _ = _eliminate(A, f, full=False)
    return len(pivots)


def rref(A: SparseMatrix, f: ScalarField = ScalarField()) -> tuple[SparseMatrix, list[int]]:
    """Reduced row echelon form and the sorted list of pivot columns."""
    pivots, rows = _eliminate(A, f, full=True)
    pivots.sort(key=lambda rc: rc[1])
    entries = {}
    for i, (r, _) in enumerate(pivots):
        for c, v in rows[r].items():
            entries[(i, c)] = v
    return SparseMatrix(A.rows, A.cols, entries), [c for _, c in pivots]


def kernel_basis(A: SparseMatrix, f: ScalarField = ScalarField()) -> list[list]:
    """Basis of the right null space, one dense vector per free column."""
    pivots, rows = _eliminate(A, f, full=True)
    pivot_cols = {c: r for r, c in pivots}
    zero = f.reduce(0)
    basis = []
    for free in range(A.cols):
        if free in pivot_cols:
            continue
        v = [zero] * A.cols
        v[free] = f.reduce(1)
        for c, r in pivot_cols.items():
            x = rows[r].get(free)
            if x is not None:
                v[c] = f.sub(zero, x)
        basis.append(v)
    return basis


def homology_dim(d_in: SparseMatrix, d_out: SparseMatrix, f: ScalarField = ScalarField()) -> int:
    """``dim ker(d_out) - rank(d_in)`` for ``V' --d_in--> V --d_out--> V''``."""
    if d_out.cols != d_in.rows:
        raise NotComposable(f"d_out has {d_out.cols} columns, d_in has {d_in.rows} rows")
    if d_out.matmul(d_in, f).entries:
        raise NotAComplex("d_out * d_in is nonzero")
    return d_out.cols - rank(d_out, f) - rank(d_in, f)


def vector_in_span(vectors: Iterable[Sequence], target: Sequence, f: ScalarField = ScalarField()) -> bool:
    """True iff ``target`` is a linear combination of ``vectors``."""
    vectors = list(vectors)
    if not vectors:
        return all(f.reduce(x) == 0 for x in target)
    n = len(target)
    cols = vectors
    A = SparseMatrix(n, len(cols), {(i, j): v[i] for j, v in enumerate(cols) for i in range(n) if v[i] != 0})
    B = SparseMatrix(n, len(cols) + 1, {**A.entries, **{(i, len(cols)): target[i] for i in range(n) if target[i] != 0}})
    return rank(A, f) == rank(B, f)

