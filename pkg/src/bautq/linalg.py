"""Exact linear algebra over ℚ: sparse matrices with dense fraction elimination."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Vector = list  # list[Fraction]


class RationalMatrix:
    """Sparse rational matrix. Zero entries are never stored."""

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], object] = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        self.entries: dict[tuple[int, int], Fraction] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            if v:
                self.entries[i, j] = Fraction(v)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        n = len(rows)
        m = len(rows[0]) if n else 0
        return cls(n, m, {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v})

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping[int, object]]) -> "RationalMatrix":
        return cls(nrows, len(columns), {(i, j): v for j, col in enumerate(columns) for i, v in col.items()})

    @classmethod
    def identity(cls, k: int) -> "RationalMatrix":
        return cls(k, k, {(i, i): 1 for i in range(k)})

    def __getitem__(self, ij) -> Fraction:
        return self.entries.get(ij, Fraction(0))

    def __eq__(self, other):
        return (isinstance(other, RationalMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def column(self, j: int) -> Vector:
        col = [Fraction(0)] * self.rows
        for (i, jj), v in self.entries.items():
            if jj == j:
                col[i] = v
        return col

    def apply(self, vec: Sequence) -> Vector:
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        out = [Fraction(0)] * self.rows
        for (i, j), v in self.entries.items():
            if vec[j]:
                out[i] += v * vec[j]
        return out

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                acc[i, j] = acc.get((i, j), 0) + a * b
        return RationalMatrix(self.rows, other.cols, acc)

    def is_zero(self) -> bool:
        return not self.entries


def rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form (in place on a copy) and the pivot columns."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(M: RationalMatrix) -> int:
    if M.rows == 0 or M.cols == 0 or M.is_zero():
        return 0
    return len(rref(M.to_dense(), M.cols)[1])


def kernel_basis(M: RationalMatrix) -> list[Vector]:
    """Basis of the null space, one vector per free column of the RREF."""
    if M.cols == 0:
        return []
    if M.rows == 0 or M.is_zero():
        return [[Fraction(int(i == j)) for i in range(M.cols)] for j in range(M.cols)]
    reduced, pivots = rref(M.to_dense(), M.cols)
    free = [c for c in range(M.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = [Fraction(0)] * M.cols
        vec[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(vec)
    return basis


def span_rank(vectors: Iterable[Sequence], dim: int) -> int:
    vecs = [list(map(Fraction, v)) for v in vectors]
    if not vecs or dim == 0:
        return 0
    return len(rref(vecs, dim)[1])


def extend_basis(base: Sequence[Sequence], candidates: Sequence[Sequence], dim: int) -> list[int]:
    """Indices of candidates that enlarge ``span(base)``, chosen greedily in order."""
    reduced, pivots = rref([list(map(Fraction, v)) for v in base], dim) if base else ([], [])
    chosen = []
    for idx, cand in enumerate(candidates):
        vec = _reduce(list(map(Fraction, cand)), reduced, pivots)
        if any(vec):
            chosen.append(idx)
            reduced, pivots = rref(reduced + [vec], dim)
    return chosen


def _reduce(vec: list[Fraction], reduced, pivots) -> list[Fraction]:
    for row, p in zip(reduced, pivots):
        if vec[p]:
            f = vec[p]
            vec = [a - f * b for a, b in zip(vec, row)]
    return vec


def solve_in_span(basis: Sequence[Sequence], target: Sequence, dim: int):
    """Coefficients expressing ``target`` in the (independent) ``basis``, or ``None``."""
    k = len(basis)
    # augmented system: columns are basis vectors, last column is the target
    rows = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(dim)]
    reduced, pivots = rref(rows, k + 1)
    if k in pivots:
        return None
    coeffs = [Fraction(0)] * k
    for row, p in zip(reduced, pivots):
        coeffs[p] = row[k]
    return coeffs
