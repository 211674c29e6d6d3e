"""Exact rational linear algebra on small dense matrices (lists of ``Fraction``)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = list
Matrix = list  # row-major, list of rows


class IncrementalBasis:
    """Greedy column basis built one vector at a time.

    ``add(v)`` returns ``(coeffs, is_new)``: ``coeffs`` expresses ``v`` in the
    vectors accepted so far (including ``v`` itself when it is new).
    """

    def __init__(self, length: int):
        self.length = length
        self._rows: list[tuple[int, list[Fraction], dict[int, Fraction]]] = []
        self.size = 0

    def _reduce(self, v: Sequence) -> tuple[list[Fraction], dict[int, Fraction]]:
        r = [Fraction(x) for x in v]
        expr: dict[int, Fraction] = {}
        for pivot, row, t in self._rows:
            c = r[pivot]
            if c:
                c = c / row[pivot]
                for i in range(self.length):
                    if row[i]:
                        r[i] -= c * row[i]
                for b, tb in t.items():
                    expr[b] = expr.get(b, 0) + c * tb
        return r, expr

    def add(self, v: Sequence) -> tuple[list[Fraction], bool]:
        if len(v) != self.length:
            raise ValueError("vector length mismatch")
        r, expr = self._reduce(v)
        pivot = next((i for i, x in enumerate(r) if x), None)
        if pivot is not None:
            new = self.size
            self.size += 1
            t = {b: -c for b, c in expr.items() if c}
            t[new] = Fraction(1)
            self._rows.append((pivot, r, t))
            coeffs = [Fraction(0)] * self.size
            coeffs[new] = Fraction(1)
            return coeffs, True
        coeffs = [Fraction(0)] * self.size
        for b, c in expr.items():
            coeffs[b] = c
        return coeffs, False


def rank(columns: Sequence[Sequence], length: int) -> int:
    """Rank of the matrix whose columns are ``columns`` (each of the given length)."""
    basis = IncrementalBasis(length)
    for c in columns:
        basis.add(c)
    return basis.size


def matmul(a: Matrix, b: Matrix, inner: int) -> Matrix:
    """``a @ b``; ``inner`` is the shared dimension (needed when a side has no rows)."""
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [Fraction(0)] * cols
        for k in range(inner):
            x = row[k]
            if x:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        acc[j] += x * bk[j]
        out.append(acc)
    return out


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def column(m: Matrix, j: int) -> list:
    return [row[j] for row in m]
