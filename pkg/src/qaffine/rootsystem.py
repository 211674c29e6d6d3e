"""Cartan data, weights and positive roots of finite and affine root systems.

Weights of an affine algebra are stored as ``(level, finite, energy)`` where
``finite`` holds the labels ``<x, coroot_i>`` for the finite nodes 1..r and
``energy`` is the coefficient of the null root ``delta``.  A weight of a finite
algebra uses the same container with level and energy fixed at zero.

Conventions: ``cartan[i][j] = <alpha_j, coroot_i>``; the invariant form is
normalised by ``(alpha_i, alpha_i) = 2 * comark_i / mark_i``, which gives
``(Lambda_0, delta) = 1`` and length 2 to the short roots of the finite part.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Sequence

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher


class CartanError(ValueError):
    """Raised for unsupported or malformed Cartan types."""


_VALID_RANKS = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 2,
    "C": lambda r: r >= 2,
    "D": lambda r: r >= 4,
    "E": lambda r: r in (6, 7, 8),
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}

# Source of the twisted algebra dual to X^{(1)}: (type of g', rank of g', order of sigma)
_TWIST_SOURCE = {
    "B": lambda r: ("A", 2 * r - 1, 2),
    "C": lambda r: ("D", r + 1, 2) if r >= 3 else ("A", 3, 2),  # D3 = A3
    "F": lambda r: ("E", 6, 2),
    "G": lambda r: ("D", 4, 3),
}


def parse_type(symbol: str, rank: int | None = None) -> tuple[str, int]:
    """Parse ``"A2"`` (or ``"A"`` plus an explicit rank) into ``("A", 2)``."""
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d*)\s*", symbol)
    if not m:
        raise CartanError(f"unrecognised type symbol {symbol!r}")
    letter = m.group(1).upper()
    if m.group(2):
        r = int(m.group(2))
        if rank is not None and rank != r:
            raise CartanError(f"rank {rank} conflicts with type symbol {symbol!r}")
    elif rank is None:
        raise CartanError(f"type symbol {symbol!r} needs a rank")
    else:
        r = rank
    if not _VALID_RANKS[letter](r):
        raise CartanError(f"{letter}{r} is not a valid simple finite type")
    return letter, r


def finite_cartan(letter: str, rank: int) -> list[list[int]]:
    """Finite Cartan matrix in Bourbaki numbering (0-based rows/columns)."""
    letter, r = parse_type(letter, rank)
    A = [[2 if i == j else 0 for j in range(r)] for i in range(r)]

    def link(i, j, aij=-1, aji=-1):
        A[i][j] = aij
        A[j][i] = aji

    if letter in "ABCD":
        for i in range(r - 2):
            link(i, i + 1)
        if letter == "A" and r > 1:
            link(r - 2, r - 1)
        elif letter == "B":
            link(r - 2, r - 1, -1, -2)
        elif letter == "C":
            link(r - 2, r - 1, -2, -1)
        elif letter == "D":
            link(r - 3, r - 1)
    elif letter == "E":
        # 1-3-4-5-6(-7-8), node 2 attached to 4
        link(0, 2)
        link(1, 3)
        link(2, 3)
        for i in range(3, r - 1):
            link(i, i + 1)
    elif letter == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif letter == "G":
        link(0, 1, -3, -1)
    return A


def symmetrizer(A: Sequence[Sequence[int]]) -> list[Fraction]:
    """Positive rationals ``d`` with ``d_i A_ij = d_j A_ji``, smallest entry 1."""
    n = len(A)
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and A[i][j] != 0 and d[j] is None:
                d[j] = d[i] * A[i][j] / A[j][i]
                stack.append(j)
    if any(x is None for x in d):
        raise CartanError("Cartan matrix is not connected")
    lo = min(d)
    d = [x / lo for x in d]
    for i in range(n):
        for j in range(n):
            if d[i] * A[i][j] != d[j] * A[j][i]:
                raise CartanError("Cartan matrix is not symmetrizable")
    return d


def finite_positive_roots(A: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Positive roots of a finite Cartan matrix in simple-root coordinates, by height."""
    n = len(A)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    ordered = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # alpha_i-string through beta: beta - p alpha_i ... beta + q alpha_i
                p = 0
                probe = list(beta)
                while True:
                    probe[i] -= 1
                    if tuple(probe) in roots:
                        p += 1
                    else:
                        break
                pairing = sum(A[i][j] * beta[j] for j in range(n))
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        nxt.sort(reverse=True)
        ordered.extend(nxt)
        layer = nxt
    return ordered


def _null_vector(A: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Primitive positive integer kernel vector of an affine GCM."""
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    pivots = []
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = 1 / M[row][col]
        M[row] = [x * inv for x in M[row]]
        for r in range(n):
            if r != row and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[row])]
        pivots.append(col)
        row += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        raise CartanError("matrix is not of affine type (corank != 1)")
    fc = free[0]
    v = [Fraction(0)] * n
    v[fc] = Fraction(1)
    for r, pc in enumerate(pivots):
        v[pc] = -M[r][fc]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if ints[0] < 0:
        ints = [-x for x in ints]
    if any(x <= 0 for x in ints):
        raise CartanError("null vector is not positive")
    return tuple(ints)


def _adjugate(A: Sequence[Sequence[int]]) -> tuple[list[list[int]], int]:
    """Integer adjugate and determinant, so that ``A^{-1} = adj / det``."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    det = Fraction(1)
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det *= M[col][col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    det = int(det)
    adj = [[int(M[i][n + j] * det) for j in range(n)] for i in range(n)]
    return adj, det


def twisted_imaginary_table(letter: str, rank: int) -> tuple[int, ...]:
    """Multiplicities of ``n delta`` for ``n = 0..m-1`` (mod m) of the dual of X^{(1)}.

    The dual of a non-simply-laced untwisted algebra is realised inside the loop
    algebra of a simply-laced ``g'`` twisted by a diagram automorphism ``sigma``
    of order ``m``.  The multiplicity of ``n delta`` is the dimension of the
    ``omega^n`` eigenspace of ``sigma`` on the Cartan subalgebra of ``g'``; on the
    span of simple coroots ``sigma`` permutes the basis, and an orbit of size
    ``s`` contributes one eigenvector for each ``s``-th root of unity.
    """
    gtype, grank, m = _TWIST_SOURCE[letter](rank)
    sigma = diagram_automorphism(gtype, grank, m)
    seen = set()
    orbit_sizes = []
    for v in range(grank):
        if v in seen:
            continue
        size = 0
        u = v
        while u not in seen:
            seen.add(u)
            u = sigma[u]
            size += 1
        orbit_sizes.append(size)
    return tuple(sum(1 for s in orbit_sizes if (n * s) % m == 0) for n in range(m))


def diagram_automorphism(letter: str, rank: int, order: int) -> tuple[int, ...]:
    """A Dynkin diagram automorphism of exactly the given order, as a node permutation."""
    A = finite_cartan(letter, rank)
    g = nx.Graph()
    g.add_nodes_from(range(rank))
    for i in range(rank):
        for j in range(i + 1, rank):
            if A[i][j]:
                g.add_edge(i, j, w=(A[i][j], A[j][i]))
    matcher = GraphMatcher(g, g, edge_match=lambda a, b: a["w"] == b["w"])
    for iso in sorted(tuple(iso[i] for i in range(rank)) for iso in matcher.isomorphisms_iter()):
        k, cur = 1, iso
        while any(cur[i] != i for i in range(rank)):
            cur = tuple(iso[c] for c in cur)
            k += 1
        if k == order:
            return iso
    raise CartanError(f"{letter}{rank} has no diagram automorphism of order {order}")


@dataclass(frozen=True, order=True)
class AffineWeight:
    """A point ``(level, finite, energy)`` of the weight lattice."""

    level: int
    finite: tuple[int, ...]
    energy: int = 0

    def __post_init__(self):
        object.__setattr__(self, "finite", tuple(int(x) for x in self.finite))

    def __add__(self, other: "AffineWeight") -> "AffineWeight":
        return AffineWeight(
            self.level + other.level,
            tuple(a + b for a, b in zip(self.finite, other.finite)),
            self.energy + other.energy,
        )

    def __sub__(self, other: "AffineWeight") -> "AffineWeight":
        return self + (-other)

    def __neg__(self) -> "AffineWeight":
        return AffineWeight(-self.level, tuple(-a for a in self.finite), -self.energy)

    def __mul__(self, n: int) -> "AffineWeight":
        return AffineWeight(n * self.level, tuple(n * a for a in self.finite), n * self.energy)

    __rmul__ = __mul__

    def shift_energy(self, n: int) -> "AffineWeight":
        return AffineWeight(self.level, self.finite, self.energy + n)

    def __str__(self):
        return f"({self.level}, {list(self.finite)}, {self.energy})"


@dataclass(frozen=True, eq=False)
class CartanData:
    """Cartan data of an affine algebra (nodes 0..r) or a finite one (nodes 1..r)."""

    letter: str
    rank: int
    dual: bool
    affine: bool
    twist: int
    cartan: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[Fraction, ...]
    marks: tuple[int, ...]
    comarks: tuple[int, ...]
    _imag_table: tuple[int, ...] = field(repr=False, default=())

    @property
    def label(self) -> str:
        base = f"{self.letter}{self.rank}"
        if not self.affine:
            return base
        return f"{base}^(1)" + ("^dual" if self.dual and self.twist > 1 else "")

    @property
    def nodes(self) -> range:
        return range(0, self.rank + 1) if self.affine else range(1, self.rank + 1)

    @property
    def dual_coxeter(self) -> int:
        """Sum of comarks; the level of rho."""
        return sum(self.comarks)

    @property
    def delta_height(self) -> int:
        """Height of delta, ie the sum of marks (the dual Coxeter number of G)."""
        return sum(self.marks)

    def imag_mult(self, n: int) -> int:
        if not self.affine or n <= 0:
            return 0
        return self._imag_table[n % self.twist]

    def cartan_entry(self, i: int, j: int) -> int:
        """``<alpha_j, coroot_i>`` by node labels."""
        off = 0 if self.affine else 1
        return self.cartan[i - off][j - off]

    @cached_property
    def finite_cartan(self) -> tuple[tuple[int, ...], ...]:
        if self.affine:
            return tuple(tuple(row[1:]) for row in self.cartan[1:])
        return self.cartan

    @cached_property
    def _adj_det(self):
        return _adjugate(self.finite_cartan)

    @cached_property
    def form_matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        """Gram matrix of the finite fundamental weights."""
        adj, det = self._adj_det
        d = self.symmetrizer[1:] if self.affine else self.symmetrizer
        r = self.rank
        return tuple(tuple(Fraction(adj[i][l], det) * d[i] for l in range(r)) for i in range(r))

    @cached_property
    def finite_roots(self) -> tuple[tuple[int, ...], ...]:
        """Positive roots of the finite part in coordinates over nodes 1..r."""
        return tuple(finite_positive_roots(self.finite_cartan))

    @cached_property
    def simple_roots(self) -> tuple[AffineWeight, ...]:
        out = []
        for j in self.nodes:
            labels = tuple(self.cartan_entry(i, j) for i in range(1, self.rank + 1))
            energy = 1 if (self.affine and j == 0) else 0
            out.append(AffineWeight(0, labels, energy))
        return tuple(out)

    def simple_root(self, i: int) -> AffineWeight:
        return self.simple_roots[i - self.nodes.start]

    def fundamental_weight(self, i: int) -> AffineWeight:
        labels = tuple(1 if j == i else 0 for j in range(1, self.rank + 1))
        if not self.affine:
            return AffineWeight(0, labels, 0)
        return AffineWeight(self.comarks[i], labels, 0)

    @cached_property
    def rho(self) -> AffineWeight:
        return AffineWeight(self.dual_coxeter if self.affine else 0, (1,) * self.rank, 0)

    @cached_property
    def delta(self) -> AffineWeight:
        return AffineWeight(0, (0,) * self.rank, 1 if self.affine else 0)

    def zero(self, level: int = 0) -> AffineWeight:
        return AffineWeight(level, (0,) * self.rank, 0)

    def weight(self, level: int, finite: Sequence[int], energy: int = 0) -> AffineWeight:
        if len(finite) != self.rank:
            raise CartanError(f"finite part must have {self.rank} entries")
        return AffineWeight(level if self.affine else 0, tuple(finite), energy if self.affine else 0)

    def pairing(self, x: AffineWeight, i: int) -> int:
        """``<x, coroot_i>``."""
        if i == 0 and self.affine:
            s = x.level - sum(c * a for c, a in zip(self.comarks[1:], x.finite))
            return s // self.comarks[0]
        if not (1 <= i <= self.rank):
            raise IndexError(f"node {i} out of range for {self.label}")
        return x.finite[i - 1]

    def pairings(self, x: AffineWeight) -> tuple[int, ...]:
        return tuple(self.pairing(x, i) for i in self.nodes)

    def is_dominant(self, x: AffineWeight) -> bool:
        return all(p >= 0 for p in self.pairings(x))

    def depth_of(self, coords: Sequence[int]) -> int:
        """Delta-coefficient of an element given in simple-root coordinates."""
        return coords[0] if self.affine else 0

    def to_root_coords(self, beta: AffineWeight) -> tuple[int, ...] | None:
        """Simple-root coordinates of a level-0 element, or ``None`` off the root lattice."""
        if beta.level != 0:
            return None
        r = self.rank
        if self.affine:
            c0 = beta.energy
            a0 = self.simple_roots[0].finite
            v = [beta.finite[i] - c0 * a0[i] for i in range(r)]
        else:
            if beta.energy != 0:
                return None
            v = list(beta.finite)
        adj, det = self._adj_det
        coords = []
        for i in range(r):
            num = sum(adj[i][j] * v[j] for j in range(r))
            if num % det:
                return None
            coords.append(num // det)
        return (c0, *coords) if self.affine else tuple(coords)

    def from_root_coords(self, coords: Sequence[int]) -> AffineWeight:
        out = self.zero()
        for c, alpha in zip(coords, self.simple_roots):
            if c:
                out = out + c * alpha
        return out

    def to_json(self) -> dict:
        return {
            "type": f"{self.letter}{self.rank}",
            "rank": self.rank,
            "dual": self.dual,
            "affine": self.affine,
            "twist": self.twist,
            "label": self.label,
            "cartan": [list(row) for row in self.cartan],
            "symmetrizer": [str(d) for d in self.symmetrizer],
            "marks": list(self.marks),
            "comarks": list(self.comarks),
            "dual_coxeter": self.dual_coxeter if self.affine else None,
            "imag_mult": list(self._imag_table) if self.affine else [],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def build_affine_data(type_symbol: str, rank: int | None = None, dual: bool = False) -> CartanData:
    """Untwisted affine Cartan data of a finite type, or its Langlands dual.

    ``dual=True`` transposes the generalised Cartan matrix; for non-simply-laced
    types this is a twisted affine algebra.
    """
    letter, r = parse_type(type_symbol, rank)
    A = finite_cartan(letter, r)
    d = symmetrizer(A)
    theta = max(finite_positive_roots(A), key=sum)
    theta_len = sum(theta[i] * theta[j] * d[i] * A[i][j] for i in range(r) for j in range(r))
    # theta^vee = sum_i theta_i |alpha_i|^2 / |theta|^2 coroot_i
    theta_co = [Fraction(theta[i]) * 2 * d[i] / theta_len for i in range(r)]
    G = [[0] * (r + 1) for _ in range(r + 1)]
    G[0][0] = 2
    for i in range(r):
        for j in range(r):
            G[i + 1][j + 1] = A[i][j]
    for j in range(r):
        val = -sum(theta_co[i] * A[i][j] for i in range(r))
        if val.denominator != 1:
            raise CartanError("non-integral affine Cartan entry")
        G[0][j + 1] = int(val)
    for i in range(r):
        G[i + 1][0] = -sum(A[i][j] * theta[j] for j in range(r))
    simply_laced = letter in "ADE"
    twist = 1
    if dual:
        G = [list(col) for col in zip(*G)]
        if not simply_laced:
            twist = _TWIST_SOURCE[letter](r)[2]
    marks = _null_vector(G)
    comarks = _null_vector([list(col) for col in zip(*G)])
    if marks[0] != 1 or comarks[0] != 1:
        raise CartanError("affine node must have mark and comark 1")
    sym = tuple(Fraction(c, m) for c, m in zip(comarks, marks))
    if twist == 1:
        table = (r,)
    else:
        table = twisted_imaginary_table(letter, r)
    return CartanData(
        letter=letter,
        rank=r,
        dual=dual,
        affine=True,
        twist=twist,
        cartan=tuple(tuple(row) for row in G),
        symmetrizer=sym,
        marks=marks,
        comarks=comarks,
        _imag_table=table,
    )


def build_finite_data(type_symbol: str, rank: int | None = None) -> CartanData:
    letter, r = parse_type(type_symbol, rank)
    A = finite_cartan(letter, r)
    return CartanData(
        letter=letter,
        rank=r,
        dual=False,
        affine=False,
        twist=1,
        cartan=tuple(tuple(row) for row in A),
        symmetrizer=tuple(symmetrizer(A)),
        marks=(),
        comarks=(),
    )


def bilinear_form(data: CartanData, x: AffineWeight, y: AffineWeight) -> Fraction:
    """Invariant form with ``(delta, delta) = (Lambda_0, Lambda_0) = 0`` and ``(Lambda_0, delta) = 1``."""
    F = data.form_matrix
    r = data.rank
    fin = sum(
        (x.finite[i] * F[i][j] * y.finite[j] for i in range(r) for j in range(r) if x.finite[i] and y.finite[j]),
        Fraction(0),
    )
    if not data.affine:
        return fin
    return fin + x.level * y.energy + x.energy * y.level


def _finite_root_length(data: CartanData, coords: Sequence[int]) -> Fraction:
    """(beta, beta) for a finite root given over nodes 1..r."""
    d = data.symmetrizer[1:] if data.affine else data.symmetrizer
    A = data.finite_cartan
    r = data.rank
    return sum(
        (coords[i] * coords[j] * d[i] * A[i][j] for i in range(r) for j in range(r)),
        Fraction(0),
    )


@dataclass(frozen=True)
class PositiveRoot:
    coords: tuple[int, ...]
    mult: int


def positive_root_coords(data: CartanData, depth: int) -> list[PositiveRoot]:
    """Positive roots with delta-coefficient at most ``depth``, in simple-root coordinates.

    Order: by depth, then finite roots before their negatives, imaginary last.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    fin = data.finite_roots
    if not data.affine:
        return [PositiveRoot(c, 1) for c in fin]
    lengths = [_finite_root_length(data, c) for c in fin]
    short = min(lengths)
    marks = data.marks
    out = [PositiveRoot((0, *c), 1) for c in fin]
    for n in range(1, depth + 1):
        base = tuple(n * m for m in marks)
        for sign in (1, -1):
            for c, ln in zip(fin, lengths):
                if data.twist > 1 and ln != short and n % data.twist:
                    continue
                coords = tuple(b + sign * x for b, x in zip(base, (0, *c)))
                out.append(PositiveRoot(coords, 1))
        mult = data.imag_mult(n)
        if mult:
            out.append(PositiveRoot(base, mult))
    return out


def positive_roots_up_to(data: CartanData, depth: int) -> list[tuple[AffineWeight, int]]:
    """Positive roots (as weights) with their multiplicities, delta-coefficient <= depth."""
    return [(data.from_root_coords(pr.coords), pr.mult) for pr in positive_root_coords(data, depth)]
