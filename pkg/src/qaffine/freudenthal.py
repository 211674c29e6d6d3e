"""Weight multiplicities of integrable highest-weight modules by Freudenthal's recursion.

This is the independent oracle for ``dim L(lam)_mu``: it shares only the root
data with the Weyl-Kostant route in :mod:`qaffine.kostant`.
"""

from __future__ import annotations

import csv
import io
from itertools import product
from fractions import Fraction

from .errors import DepthError, PreconditionError
from .qpoly import QPolynomial
from .rootsystem import AffineWeight, CartanData, bilinear_form, positive_root_coords
from .weyl import reduce_to_dominant


class MultiplicityTable:
    """Memoised multiplicities of ``L(lam)`` down to a fixed delta-depth.

    Values are stored for dominant weights only; any other weight is first moved
    into the dominant chamber (multiplicities are Weyl invariant).  A dominant
    ``mu`` is a weight of ``L(lam)`` iff ``lam - mu`` lies in the positive root
    cone, which keeps the recursion denominator strictly positive.
    """

    def __init__(self, data: CartanData, lam: AffineWeight, depth: int):
        if not data.is_dominant(lam):
            raise PreconditionError("highest weight must be dominant")
        if data.affine and lam.level <= 0:
            raise PreconditionError("affine highest weight needs positive level")
        if depth < 0:
            raise ValueError("depth must be nonnegative")
        self.data = data
        self.lam = lam
        self.depth = depth
        self._roots = [
            (data.from_root_coords(r.coords), r.coords, r.mult)
            for r in positive_root_coords(data, depth)
        ]
        shifted = lam + data.rho
        self._norm_top = bilinear_form(data, shifted, shifted)
        self._memo: dict[AffineWeight, int] = {lam: 1}

    def _cone(self, mu: AffineWeight):
        return self.data.to_root_coords(self.lam - mu)

    def multiplicity(self, mu: AffineWeight) -> int:
        data = self.data
        if data.affine and mu.level != self.lam.level:
            return 0
        coords = self._cone(mu)
        if coords is None:
            return 0
        if any(c < 0 for c in coords):
            return 0
        if data.depth_of(coords) > self.depth:
            raise DepthError(f"weight lies {data.depth_of(coords)} deep, table depth {self.depth}")
        if mu in self._memo:
            return self._memo[mu]
        dom, _ = reduce_to_dominant(data, mu)
        if dom != mu:
            val = self.multiplicity(dom)
            self._memo[mu] = val
            return val
        val = self._freudenthal(mu, coords)
        self._memo[mu] = val
        return val

    def _freudenthal(self, mu: AffineWeight, coords) -> int:
        data = self.data
        shifted = mu + data.rho
        denom = self._norm_top - bilinear_form(data, shifted, shifted)
        if denom <= 0:
            raise ArithmeticError(f"Freudenthal denominator {denom} at {mu} for highest weight {self.lam}")
        total = Fraction(0)
        for alpha, acoords, mult in self._roots:
            if any(a > c for a, c in zip(acoords, coords)):
                continue
            nu = mu + alpha
            rest = tuple(c - a for c, a in zip(coords, acoords))
            while all(x >= 0 for x in rest):
                m = self.multiplicity(nu)
                if m:
                    total += mult * m * bilinear_form(data, nu, alpha)
                nu = nu + alpha
                rest = tuple(c - a for c, a in zip(rest, acoords))
        val = 2 * total / denom
        if val.denominator != 1 or val < 0:
            raise ArithmeticError(f"non-integral multiplicity {val} at {mu}")
        return int(val)

    def dominant_weights(self) -> list[AffineWeight]:
        """Dominant weights of ``L(lam)`` within the table depth, sorted by (energy desc, finite)."""
        out = []
        for mu in _dominant_candidates(self.data, self.lam, self.depth):
            if self.multiplicity(mu):
                out.append(mu)
        return out

    def rows(self):
        for mu in self.dominant_weights():
            yield mu, self.multiplicity(mu)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        r = self.data.rank
        w.writerow(["level", *[f"finite_{i}" for i in range(1, r + 1)], "energy", "multiplicity"])
        for mu, m in self.rows():
            w.writerow([mu.level, *mu.finite, mu.energy, m])
        return buf.getvalue()


def _dominant_candidates(data: CartanData, lam: AffineWeight, depth: int):
    """Dominant weights ``mu <= lam`` with delta-coefficient of ``lam - mu`` at most ``depth``."""
    if data.affine:
        k = lam.level
        # level-k alcove: labels >= 0 with sum comark_i * label_i <= k
        alcove = [
            f for f in product(*[range(k // c + 1) for c in data.comarks[1:]])
            if sum(c * x for c, x in zip(data.comarks[1:], f)) <= k
        ]
        out = []
        for n in range(depth + 1):
            for f in alcove:
                for e in range(lam.energy - depth - 1, lam.energy + 1):
                    mu = AffineWeight(k, f, e)
                    coords = data.to_root_coords(lam - mu)
                    if coords is not None and all(c >= 0 for c in coords) and coords[0] == n:
                        out.append(mu)
        out.sort(key=lambda m: (-m.energy, m.finite))
        return out
    # finite: dominant weights below lam form a finite set; walk down by simple roots
    seen = {lam}
    stack = [lam]
    out = []
    while stack:
        mu = stack.pop()
        if data.is_dominant(mu):
            out.append(mu)
        for a in data.simple_roots:
            nu = mu - a
            if nu not in seen and _in_dominance_hull(data, lam, nu):
                seen.add(nu)
                stack.append(nu)
    return sorted(out, key=lambda m: (sum(data.to_root_coords(lam - m)), m.finite))


def _in_dominance_hull(data: CartanData, lam: AffineWeight, nu: AffineWeight) -> bool:
    dom, _ = reduce_to_dominant(data, nu)
    c = data.to_root_coords(lam - dom)
    return c is not None and all(x >= 0 for x in c)


def weight_multiplicity(data: CartanData, lam: AffineWeight, mu: AffineWeight, depth: int | None = None) -> int:
    """``dim L(lam)_mu``."""
    coords = data.to_root_coords(lam - mu) if (not data.affine or lam.level == mu.level) else None
    if coords is None:
        return 0
    drop = data.depth_of(coords)
    if depth is None:
        depth = max(drop, 0)
    elif drop > depth:
        raise DepthError(f"delta-coefficient {drop} of lam - mu exceeds depth {depth}")
    return MultiplicityTable(data, lam, max(depth, 0)).multiplicity(mu)


def maximal_lift(data: CartanData, lam: AffineWeight, finite, depth: int | None = None) -> AffineWeight:
    """Top ``mu_0`` of the string of a level-k finite weight inside ``L(lam)``.

    Energies are scanned downward from ``energy(lam)`` until the first nonzero
    multiplicity; ``LookupError`` if none is found within ``depth``.
    """
    if not data.affine:
        raise PreconditionError("maximal lift is defined for affine data")
    if depth is None:
        depth = 8
    table = MultiplicityTable(data, lam, depth)
    for e in range(lam.energy, lam.energy - depth - 1, -1):
        mu = AffineWeight(lam.level, tuple(finite), e)
        coords = data.to_root_coords(lam - mu)
        if coords is None:
            continue
        if coords[0] > depth:
            break
        if table.multiplicity(mu):
            return mu
    raise LookupError(f"no weight with finite part {tuple(finite)} within depth {depth}")


def string_q_character(data: CartanData, lam: AffineWeight, mu_top: AffineWeight, depth: int) -> QPolynomial:
    """``sum_{n=0..depth} dim L(lam)_{mu_top - n delta} q^n``."""
    coords = data.to_root_coords(lam - mu_top)
    base = data.depth_of(coords) if coords is not None else 0
    table = MultiplicityTable(data, lam, base + depth)
    return QPolynomial(table.multiplicity(mu_top.shift_energy(-n)) for n in range(depth + 1))


def colored_partitions(colors_of, n_max: int) -> list[int]:
    """Coefficients of ``prod_{n>=1} (1 - x^n)^(-colors_of(n))`` up to ``x^n_max``."""
    coeffs = [1] + [0] * n_max
    for part in range(1, n_max + 1):
        for _ in range(colors_of(part)):
            for i in range(part, n_max + 1):
                coeffs[i] += coeffs[i - part]
    return coeffs
