"""Polynomials in q with integer coefficients."""

from __future__ import annotations

from typing import Iterable


class QPolynomial:
    """Immutable polynomial in ``q`` with arbitrary-precision integer coefficients.

    Coefficients are stored in ascending degree with trailing zeros removed,
    so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._coeffs = tuple(c)

    @classmethod
    def from_dict(cls, terms: dict[int, int]) -> "QPolynomial":
        if not terms:
            return cls()
        if min(terms) < 0:
            raise ValueError("negative q-degree")
        c = [0] * (max(terms) + 1)
        for d, v in terms.items():
            c[d] += v
        return cls(c)

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "QPolynomial":
        return cls([0] * degree + [coeff])

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def terms(self) -> dict[int, int]:
        return {d: c for d, c in enumerate(self._coeffs) if c}

    def __call__(self, q):
        acc = 0
        for c in reversed(self._coeffs):
            acc = acc * q + c
        return acc

    def _coerce(self, other) -> "QPolynomial":
        if isinstance(other, QPolynomial):
            return other
        if isinstance(other, int):
            return QPolynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._coeffs, other._coeffs
        n = max(len(a), len(b))
        return QPolynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial(-c for c in self._coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return QPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPolynomial(out)

    __rmul__ = __mul__

    def shift(self, n: int) -> "QPolynomial":
        """Multiply by ``q**n``."""
        if not self._coeffs:
            return self
        return QPolynomial([0] * n + list(self._coeffs))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f"QPolynomial({list(self._coeffs)})"

    def __str__(self):
        parts = []
        for d, c in enumerate(self._coeffs):
            if c == 0:
                continue
            if d == 0:
                body = str(abs(c))
            else:
                mono = "q" if d == 1 else f"q^{d}"
                body = mono if abs(c) == 1 else f"{abs(c)}{mono}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts) if parts else "0"

    def to_json(self) -> list[int]:
        return list(self._coeffs)

    @classmethod
    def from_json(cls, data: list[int]) -> "QPolynomial":
        return cls(data)
