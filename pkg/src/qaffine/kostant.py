"""Kostant partition functions and the q-analog of weight multiplicity.

The partition generating series is the truncated expansion of
``prod_alpha (1 - q e^alpha)^(-mult alpha)`` over positive roots.  Series are
sparse maps from simple-root coordinate tuples to polynomials in ``q``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DepthError, PreconditionError
from .qpoly import QPolynomial
from .rootsystem import AffineWeight, CartanData, PositiveRoot, positive_root_coords
from .weyl import enumerate_contributing


class WeightQSeries:
    """Truncated partition series: coordinates -> coefficient list (ascending in q)."""

    def __init__(self, data: CartanData, depth: int, bound: tuple[int, ...], terms: dict):
        self.data = data
        self.depth = depth
        self.bound = bound
        self._terms = terms

    def __getitem__(self, coords: Sequence[int]) -> QPolynomial:
        return QPolynomial(self._terms.get(tuple(coords), ()))

    def covers(self, coords: Sequence[int]) -> bool:
        return all(0 <= c <= b for c, b in zip(coords, self.bound)) and (
            self.data.depth_of(coords) <= self.depth
        )

    def keys(self):
        return self._terms.keys()

    def items(self):
        for k, v in self._terms.items():
            yield k, QPolynomial(v)

    def __len__(self):
        return len(self._terms)


def default_bound(data: CartanData, depth: int) -> tuple[int, ...]:
    """Box used when none is given: ``(depth+1) delta`` for affine data, ``2 rho`` for finite."""
    if data.affine:
        return (depth, *((depth + 1) * m for m in data.marks[1:]))
    two_rho = [0] * data.rank
    for c in data.finite_roots:
        for i, x in enumerate(c):
            two_rho[i] += x
    return tuple(two_rho)


def _add_into(target: list[int], src: Sequence[int], shift: int) -> list[int]:
    need = len(src) + shift
    if len(target) < need:
        target = target + [0] * (need - len(target))
    for i, c in enumerate(src):
        target[i + shift] += c
    return target


def _multiply_factor(terms: dict, points: list[tuple[int, ...]], alpha: tuple[int, ...]) -> None:
    """In place: terms <- terms * (1 - q e^alpha)^(-1)."""
    for p in points:
        prev = tuple(a - b for a, b in zip(p, alpha))
        src = terms.get(prev)
        if src is None:
            continue
        cur = terms.get(p, [])
        terms[p] = _add_into(list(cur), src, 1)


def _box_points(bound: tuple[int, ...], depth: int | None) -> list[tuple[int, ...]]:
    ranges = [range(b + 1) for b in bound]
    if depth is not None:
        ranges[0] = range(min(bound[0], depth) + 1)
    pts = list(itertools.product(*ranges))
    pts.sort(key=sum)
    return pts


def partition_series(
    data: CartanData,
    depth: int,
    bound: Sequence[int] | None = None,
    root_order: Iterable[PositiveRoot] | None = None,
) -> WeightQSeries:
    """Expand ``prod (1 - q e^alpha)^(-mult)`` inside a coordinate box.

    ``bound`` caps each simple-root coordinate (finite roots have zero
    delta-coefficient, so the depth alone does not make the series finite).
    ``root_order`` may permute the factors; the result must not depend on it.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    bound = tuple(bound) if bound is not None else default_bound(data, depth)
    if len(bound) != len(data.nodes):
        raise ValueError("bound has wrong length")
    return _partition_series_cached(data, depth, bound) if root_order is None else _expand(
        data, depth, bound, list(root_order)
    )


@lru_cache(maxsize=64)
def _partition_series_cached(data: CartanData, depth: int, bound: tuple[int, ...]) -> WeightQSeries:
    return _expand(data, depth, bound, positive_root_coords(data, depth))


def _expand(data, depth, bound, roots) -> WeightQSeries:
    eff_depth = depth if data.affine else None
    points = _box_points(bound, eff_depth)
    terms: dict = {tuple(0 for _ in bound): [1]}
    for root in roots:
        if any(c > b for c, b in zip(root.coords, bound)):
            continue
        if data.affine and root.coords[0] > depth:
            continue
        for _ in range(root.mult):
            _multiply_factor(terms, points, root.coords)
    terms = {k: v for k, v in terms.items() if any(v)}
    return WeightQSeries(data, depth, bound, terms)


def kostant_partition(data: CartanData, beta: AffineWeight, depth: int) -> QPolynomial:
    """``K_beta(q)``; zero off the positive cone, an error past the truncation depth."""
    if beta.level != 0:
        raise PreconditionError("K_beta needs a level-0 argument")
    coords = data.to_root_coords(beta)
    if coords is None or any(c < 0 for c in coords):
        return QPolynomial()
    if data.depth_of(coords) > depth:
        raise DepthError(f"delta-coefficient {data.depth_of(coords)} exceeds depth {depth}")
    return partition_series(data, depth, bound=coords)[coords]


def q_multiplicity(
    data: CartanData,
    lam: AffineWeight,
    mu: AffineWeight,
    depth: int | None = None,
    *,
    allow_nondominant: bool = False,
) -> QPolynomial:
    """``C^lam_mu(q) = sum_w (-1)^l(w) K_{w.lam - mu}(q)``.

    Contract covers dominant ``mu`` only; ``allow_nondominant`` evaluates the same
    sum for other ``mu`` without any correctness claim.
    """
    if not data.is_dominant(lam):
        raise PreconditionError("lam must be dominant")
    if not allow_nondominant and not data.is_dominant(mu):
        raise PreconditionError("mu must be dominant (pass allow_nondominant to override)")
    if data.affine and (lam.level != mu.level or lam.level <= 0):
        raise PreconditionError("lam and mu must share a positive level")
    top = data.to_root_coords(lam - mu)
    if top is None or any(c < 0 for c in top):
        return QPolynomial()
    drop = data.depth_of(top)
    if depth is None:
        # tightest box that still holds every term of the sum
        series = partition_series(data, drop, bound=top)
    elif drop > depth:
        raise DepthError(f"delta-coefficient {drop} of lam - mu exceeds depth {depth}")
    else:
        box = tuple(max(a, b) for a, b in zip(default_bound(data, depth), top))
        series = partition_series(data, depth, bound=box)
    total = QPolynomial()
    for w, beta in enumerate_contributing(data, lam, mu, drop):
        term = series[data.to_root_coords(beta)]
        total = total + term if w.sign > 0 else total - term
    return total
