"""Exact Gaussian elimination over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _size(x: Fraction) -> int:
    return abs(x.numerator) * x.denominator


class EchelonBasis:
    """Incrementally maintained reduced row-echelon basis of a span of vectors."""

    def __init__(self, length: int):
        self.length = length
        self.rows: list[tuple[int, list[Fraction]]] = []  # (pivot column, row with 1 at pivot)

    def reduce(self, vector: Sequence) -> list[Fraction]:
        v = [Fraction(x) for x in vector]
        if len(v) != self.length:
            raise ValueError(f"expected length {self.length}, got {len(v)}")
        for col, row in self.rows:
            c = v[col]
            if c:
                for j in range(col, self.length):
                    if row[j]:
                        v[j] -= c * row[j]
        return v

    def add(self, vector: Sequence) -> bool:
        """Insert ``vector``; return False when it already lies in the span."""
        v = self.reduce(vector)
        col = next((j for j, x in enumerate(v) if x), None)
        if col is None:
            return False
        inv = 1 / v[col]
        v = [x * inv for x in v]
        for i, (c, row) in enumerate(self.rows):
            if row[col]:
                f = row[col]
                self.rows[i] = (c, [a - f * b for a, b in zip(row, v)])
        self.rows.append((col, v))
        self.rows.sort(key=lambda item: item[0])
        return True

    def contains(self, vector: Sequence) -> bool:
        return not any(self.reduce(vector))

    @property
    def rank(self) -> int:
        return len(self.rows)


def rank(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    eb = EchelonBasis(len(vectors[0]))
    for v in vectors:
        eb.add(v)
    return eb.rank


def solve(columns: Sequence[Sequence], target: Sequence, pivot: str = "small") -> list[Fraction] | None:
    """Exact ``c`` with ``sum_i c_i * columns[i] == target``.

    Returns None when the system is inconsistent; raises ValueError when the
    columns are linearly dependent (no unique solution).  ``pivot`` picks the
    pivot row among the candidates: ``"small"`` (smallest |num|*den),
    ``"first"`` or ``"last"``; the exact solution does not depend on it.
    """
    n = len(columns)
    m = len(target)
    if any(len(col) != m for col in columns):
        raise ValueError("columns and target have different lengths")
    rows = [[Fraction(columns[j][i]) for j in range(n)] + [Fraction(target[i])] for i in range(m)]
    pivot_rows = []
    r = 0
    for col in range(n):
        cand = [i for i in range(r, m) if rows[i][col]]
        if not cand:
            raise ValueError(f"column {col} is linearly dependent on the previous ones")
        if pivot == "small":
            p = min(cand, key=lambda i: _size(rows[i][col]))
        elif pivot == "first":
            p = cand[0]
        elif pivot == "last":
            p = cand[-1]
        else:
            raise ValueError(f"unknown pivot strategy {pivot!r}")
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        inv = 1 / prow[col]
        prow = [x * inv for x in prow]
        rows[r] = prow
        for i in range(m):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivot_rows.append(r)
        r += 1
    if any(rows[i][n] for i in range(r, m)):
        return None
    return [rows[i][n] for i in pivot_rows]


def inverse(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(matrix)
    cols = [[Fraction(matrix[i][j]) for i in range(n)] for j in range(n)]
    out_cols = []
    for k in range(n):
        e = [Fraction(int(i == k)) for i in range(n)]
        sol = solve(cols, e)
        if sol is None:
            raise ValueError("matrix is singular")
        out_cols.append(sol)
    return [[out_cols[j][i] for j in range(n)] for i in range(n)]
