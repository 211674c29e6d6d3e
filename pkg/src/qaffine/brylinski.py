"""Explicit weight spaces of ``L(lam)`` with Chevalley generator matrices, and the
principal (Brylinski) filtration of a weight space.

Construction, height by height below ``lam``: every vector of ``L(lam)_mu`` is a
sum of ``f_i b`` with ``b`` in ``L(lam)_{mu + alpha_i}``.  In the irreducible module
a vector of weight ``mu != lam`` is determined by its images under all ``e_j``,
and those images follow from the commutation relation

    e_j f_i b = f_i e_j b + [i == j] <mu + alpha_i, coroot_i> b

using matrices already built at greater height.  Taking the span of these image
vectors is the same as quotienting the Verma module by the radical of its
contravariant form, done one weight at a time.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .errors import DepthError, PreconditionError, ResourceError
from .qpoly import QPolynomial
from .rootsystem import AffineWeight, CartanData, build_finite_data

GUARD_ENV = "QAFFINE_MAX_DIM"
DEFAULT_GUARD = 400


def resource_ceiling() -> int:
    raw = os.environ.get(GUARD_ENV)
    if raw is None:
        return DEFAULT_GUARD
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{GUARD_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{GUARD_ENV} must be positive")
    return value


@dataclass
class ModuleSlice:
    """Weight spaces of ``L(lam)`` whose weights lie at most ``depth`` below in delta.

    ``basis[mu]`` lists f-monomials (tuples of node indices, leftmost applied last)
    spanning ``L(lam)_mu``.  ``e[i][mu]`` is the matrix of ``e_i`` from ``L_mu`` to
    ``L_{mu + alpha_i}``; ``f[i][mu]`` the matrix of ``f_i`` from ``L_mu`` to
    ``L_{mu - alpha_i}``.  Missing entries mean a zero map.
    """

    data: CartanData
    lam: AffineWeight
    depth: int
    basis: dict[AffineWeight, list[tuple[int, ...]]] = field(default_factory=dict)
    e: dict[int, dict[AffineWeight, list]] = field(default_factory=dict)
    f: dict[int, dict[AffineWeight, list]] = field(default_factory=dict)
    height: dict[AffineWeight, int] = field(default_factory=dict)

    def dim(self, mu: AffineWeight) -> int:
        return len(self.basis.get(mu, ()))

    def weights(self) -> list[AffineWeight]:
        return sorted(self.basis, key=lambda m: (self.height[m], m))

    def contains(self, mu: AffineWeight) -> bool:
        coords = self.data.to_root_coords(self.lam - mu)
        if coords is None or any(c < 0 for c in coords):
            return False
        return self.data.depth_of(coords) <= self.depth

    def e_matrix(self, i: int, mu: AffineWeight) -> list:
        target = mu + self.data.simple_root(i)
        m = self.e[i].get(mu)
        if m is None:
            return linalg.zeros(self.dim(target), self.dim(mu))
        return m

    def f_matrix(self, i: int, mu: AffineWeight) -> list:
        target = mu - self.data.simple_root(i)
        m = self.f[i].get(mu)
        if m is None:
            return linalg.zeros(self.dim(target), self.dim(mu))
        return m

    def to_json(self) -> dict:
        def mat(m):
            return [[str(x) for x in row] for row in m]

        weights = self.weights()
        index = {mu: n for n, mu in enumerate(weights)}
        return {
            "algebra": self.data.label,
            "lambda": [self.lam.level, list(self.lam.finite), self.lam.energy],
            "depth": self.depth,
            "weights": [
                {"weight": [mu.level, list(mu.finite), mu.energy], "dim": self.dim(mu),
                 "basis": [list(b) for b in self.basis[mu]]}
                for mu in weights
            ],
            "e": [
                {"node": i, "source": index[mu], "matrix": mat(m)}
                for i in self.data.nodes for mu, m in sorted(self.e[i].items()) if m and m[0]
            ],
            "f": [
                {"node": i, "source": index[mu], "matrix": mat(m)}
                for i in self.data.nodes for mu, m in sorted(self.f[i].items()) if m and m[0]
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _e_image(sl: ModuleSlice, i: int, j: int, nu: AffineWeight, b: int) -> list[Fraction]:
    """Coordinates of ``e_j f_i b`` in ``L_{nu - alpha_i + alpha_j}``, ``b`` a basis index of ``L_nu``."""
    data = sl.data
    mu = nu - data.simple_root(i)
    target = mu + data.simple_root(j)
    out = [Fraction(0)] * sl.dim(target)
    if not out:
        return out
    up = nu + data.simple_root(j)
    ej = sl.e[j].get(nu)
    if ej is not None and sl.dim(up):
        fi = sl.f[i].get(up)
        if fi is not None:
            v = linalg.column(ej, b)
            for r in range(len(out)):
                row = fi[r]
                out[r] += sum(row[k] * v[k] for k in range(len(v)) if v[k])
    if i == j:
        c = data.pairing(nu, i)
        if c:
            out[b] += c
    return out


def construct_slice(data: CartanData, lam: AffineWeight, depth: int | None = None) -> ModuleSlice:
    """Build every nonzero weight space of ``L(lam)`` down to delta-depth ``depth``.

    Finite types ignore ``depth`` (the module is finite dimensional).  Raises
    ``ResourceError`` when a weight space would need more than the configured
    number of candidate vectors (environment variable ``QAFFINE_MAX_DIM``).
    """
    if not data.is_dominant(lam):
        raise PreconditionError("highest weight must be dominant")
    if data.affine:
        if lam.level <= 0:
            raise PreconditionError("affine highest weight needs positive level")
        if depth is None or depth < 0:
            raise ValueError("affine slices need a nonnegative depth")
    else:
        depth = 0
    ceiling = resource_ceiling()
    sl = ModuleSlice(data, lam, depth)
    sl.e = {i: {} for i in data.nodes}
    sl.f = {i: {} for i in data.nodes}
    sl.basis[lam] = [()]
    sl.height[lam] = 0
    frontier = [lam]
    h = 0
    while frontier:
        h += 1
        candidates: dict[AffineWeight, list] = {}
        for nu in frontier:
            for i in data.nodes:
                mu = nu - data.simple_root(i)
                if mu not in candidates and sl.contains(mu):
                    candidates[mu] = []
        for mu in sorted(candidates):
            _build_weight(sl, mu, h, ceiling)
        frontier = [mu for mu in sorted(candidates) if sl.dim(mu)]
    return sl


def _build_weight(sl: ModuleSlice, mu: AffineWeight, h: int, ceiling: int) -> None:
    data = sl.data
    nodes = list(data.nodes)
    # candidate vectors f_i b, labelled by their f-monomial
    cands = []
    for i in nodes:
        nu = mu + data.simple_root(i)
        for b, mono in enumerate(sl.basis.get(nu, ())):
            cands.append(((i,) + mono, i, nu, b))
    if len(cands) > ceiling:
        raise ResourceError(
            f"weight {mu} needs {len(cands)} candidate vectors, above the ceiling {ceiling} "
            f"(raise {GUARD_ENV} to allow it)"
        )
    if not cands:
        return
    cands.sort(key=lambda c: c[0])
    targets = [(j, mu + data.simple_root(j)) for j in nodes]
    length = sum(sl.dim(t) for _, t in targets)
    space = linalg.IncrementalBasis(length)
    exprs = []
    chosen = []
    images = []
    for mono, i, nu, b in cands:
        vec = []
        for j, _ in targets:
            vec.extend(_e_image(sl, i, j, nu, b))
        coeffs, new = space.add(vec)
        if new:
            chosen.append(mono)
            images.append(vec)
        exprs.append(coeffs)
    dim = len(chosen)
    if not dim:
        return
    sl.basis[mu] = chosen
    sl.height[mu] = h
    # f_i : L_nu -> L_mu, columns indexed by the basis of L_nu
    for n, (mono, i, nu, b) in enumerate(cands):
        m = sl.f[i].get(nu)
        if m is None:
            m = linalg.zeros(dim, sl.dim(nu))
            sl.f[i][nu] = m
        coeffs = exprs[n] + [Fraction(0)] * (dim - len(exprs[n]))
        for r in range(dim):
            m[r][b] = coeffs[r]
    # e_j : L_mu -> L_{mu + alpha_j}
    offset = 0
    for j, t in targets:
        d = sl.dim(t)
        if d:
            sl.e[j][mu] = [[images[c][offset + r] for c in range(dim)] for r in range(d)]
        offset += d


def _principal_kernel_dims(sl: ModuleSlice, mu: AffineWeight) -> list[int]:
    """``[dim ker e^0, dim ker e^1, ...]`` on ``L_mu`` until the kernel is everything."""
    data = sl.data
    dim = sl.dim(mu)
    dims = [0]
    current = {mu: [[Fraction(int(r == c)) for c in range(dim)] for r in range(dim)]}
    while dims[-1] < dim:
        nxt: dict[AffineWeight, list] = {}
        for nu, m in current.items():
            for j in data.nodes:
                ej = sl.e[j].get(nu)
                if ej is None:
                    continue
                up = nu + data.simple_root(j)
                img = linalg.matmul(ej, m, sl.dim(nu))
                if up in nxt:
                    acc = nxt[up]
                    for r in range(len(acc)):
                        for c in range(dim):
                            acc[r][c] += img[r][c]
                else:
                    nxt[up] = img
        cols = [[x for nu in sorted(nxt) for x in linalg.column(nxt[nu], c)] for c in range(dim)]
        length = sum(len(m) for m in nxt.values())
        dims.append(dim - linalg.rank(cols, length))
        current = nxt
        if len(dims) > 10_000:
            raise ArithmeticError("principal nilpotent failed to terminate")
    return dims


def principal_filtration(sl: ModuleSlice, mu: AffineWeight) -> QPolynomial:
    """Graded dimension of ``L(lam)_mu`` under ``F^i = ker e^i``, ``gr_i = F^{i+1}/F^i``.

    ``e`` is the sum of all Chevalley raising operators.  It only moves weights
    up towards ``lam``, so the slice always holds the images it needs.
    """
    data = sl.data
    coords = data.to_root_coords(sl.lam - mu) if (not data.affine or mu.level == sl.lam.level) else None
    if coords is None or any(c < 0 for c in coords):
        return QPolynomial()
    if data.depth_of(coords) > sl.depth:
        raise DepthError(f"weight {mu} lies below the slice depth {sl.depth}")
    if not sl.dim(mu):
        return QPolynomial()
    dims = _principal_kernel_dims(sl, mu)
    return QPolynomial(dims[i + 1] - dims[i] for i in range(len(dims) - 1))


def principal_vs_finite(sl: ModuleSlice, lam_bar, mu_bar, k: int) -> bool:
    """Compare the affine filtration at ``(k, mu_bar, m)`` with the finite one for ``L(lam_bar)``.

    ``sl`` must be a slice of ``L(k, lam_bar, m)`` over an untwisted affine algebra.
    """
    data = sl.data
    if not data.affine or data.twist != 1:
        raise PreconditionError("principal_vs_finite needs an untwisted affine slice")
    lam = data.weight(k, lam_bar, sl.lam.energy)
    if lam != sl.lam:
        raise PreconditionError("slice highest weight does not match (k, lam_bar)")
    mu = data.weight(k, mu_bar, lam.energy)
    fin = build_finite_data(f"{data.letter}{data.rank}")
    fin_slice = construct_slice(fin, fin.weight(0, lam_bar))
    return principal_filtration(sl, mu) == principal_filtration(fin_slice, fin.weight(0, mu_bar))
