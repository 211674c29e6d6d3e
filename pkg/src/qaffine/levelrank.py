"""Level-rank combinatorics between affine gl(k) at level N and affine sl(N) at level k.

A generalized Young diagram of shape (N, k) is a weakly decreasing integer
N-tuple with zero sum and spread ``mu_1 - mu_N <= k``; it encodes a level-k
dominant weight of affine sl(N).  ``psi`` sends it to the gl(k) data
``w = (w_1..w_k)``; ``transpose`` goes the other way round the duality.

The gl(k) side uses explicit E-coordinates: ``omega_i = (1, E_1+...+E_i, 0)``,
``alpha_i = (0, E_i - E_{i+1}, 0)`` and ``alpha_0 = alpha_k = (0, -E_1 + E_k, 1)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DepthError, PreconditionError
from .freudenthal import MultiplicityTable, _dominant_candidates, colored_partitions
from .rootsystem import AffineWeight, CartanData, bilinear_form, build_affine_data
from .weyl import reflect


class LevelRankError(ValueError):
    """Inputs that do not describe a consistent level-rank configuration."""


@dataclass(frozen=True)
class GeneralizedYoungDiagram:
    entries: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        e = tuple(int(x) for x in self.entries)
        object.__setattr__(self, "entries", e)
        if not e:
            raise LevelRankError("diagram needs at least one entry")
        if self.modulus < 1:
            raise LevelRankError("modulus must be positive")
        if any(a < b for a, b in zip(e, e[1:])):
            raise LevelRankError(f"entries {e} are not weakly decreasing")
        if sum(e) != 0:
            raise LevelRankError(f"entries {e} do not sum to zero")
        if e[0] - e[-1] > self.modulus:
            raise LevelRankError(f"spread of {e} exceeds {self.modulus}")

    @property
    def length(self) -> int:
        return len(self.entries)

    def norm2(self) -> int:
        """``(mu, mu)`` in the normalisation where roots have length 2."""
        return sum(x * x for x in self.entries)

    def sl_labels(self) -> tuple[int, ...]:
        e = self.entries
        return tuple(e[i] - e[i + 1] for i in range(len(e) - 1))

    def to_weight(self, data: CartanData, energy: int = 0) -> AffineWeight:
        return data.weight(self.modulus, self.sl_labels(), energy)

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.entries) + ")"


@dataclass(frozen=True)
class QuiverDims:
    v: tuple[int, ...]
    w: tuple[int, ...]

    def __post_init__(self):
        v = tuple(int(x) for x in self.v)
        w = tuple(int(x) for x in self.w)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "w", w)
        if len(v) != len(w):
            raise LevelRankError("v and w must have the same length")
        if any(x < 0 for x in v + w):
            raise LevelRankError("dimension vectors must be nonnegative")

    @property
    def k(self) -> int:
        return len(self.w)

    @property
    def N(self) -> int:
        return sum(self.w)


def all_diagrams(N: int, k: int) -> list[GeneralizedYoungDiagram]:
    """Every generalized Young diagram with N entries and modulus k, in lexicographic order."""
    out = []
    for top in range(0, k + 1):
        for rest in itertools.combinations_with_replacement(range(top, top - k - 1, -1), N - 1):
            e = (top,) + rest
            if sum(e) == 0 and e[0] - e[-1] <= k:
                out.append(GeneralizedYoungDiagram(e, k))
    return sorted(set(out), key=lambda d: d.entries)


def psi(N: int, k: int, diagram: GeneralizedYoungDiagram) -> tuple[int, ...]:
    """Residue counts ``w_i = #{j : mu_j = i mod k}``, class ``k`` standing for 0."""
    if diagram.length != N or diagram.modulus != k:
        raise LevelRankError(f"diagram {diagram} is not of shape N={N}, k={k}")
    w = [0] * k
    for x in diagram.entries:
        r = x % k
        w[(r or k) - 1] += 1
    return tuple(w)


def transpose(w: Sequence[int], N: int, k: int) -> GeneralizedYoungDiagram:
    """The diagram ``nu`` of length k, modulus N, with ``nu_i - nu_{i+1} = w_i`` for i < k."""
    w = tuple(w)
    if len(w) != k or any(x < 0 for x in w):
        raise LevelRankError(f"w={w} is not a nonnegative {k}-vector")
    if sum(w) != N:
        raise LevelRankError(f"w={w} does not sum to N={N}")
    num = -sum(j * w[j - 1] for j in range(1, k))
    if num % k:
        raise LevelRankError(f"w={w} admits no zero-sum diagram")
    t = num // k
    nu = [t + sum(w[j - 1] for j in range(i, k)) for i in range(1, k + 1)]
    return GeneralizedYoungDiagram(tuple(nu), N)


def psi_inverse(w: Sequence[int], N: int, k: int) -> GeneralizedYoungDiagram:
    """The unique diagram of shape (N, k) with residue counts ``w``."""
    nu = transpose(w, N, k)
    diagram = transpose(psi(k, N, nu), k, N)
    if psi(N, k, diagram) != tuple(w):
        raise LevelRankError(f"no diagram of shape N={N}, k={k} has residue counts {tuple(w)}")
    return diagram


def energy_of_highest(diagram: GeneralizedYoungDiagram) -> int:
    return sum(x for x in diagram.entries if x < 0)


def rho_check(k: int) -> tuple[Fraction, ...]:
    """``rho-check`` of SL(k) in E-coordinates: ``((k-1)/2, (k-3)/2, ..., (1-k)/2)``."""
    return tuple(Fraction(k - 1 - 2 * i, 2) for i in range(k))


def rho_pairing(k: int, vec: Sequence) -> Fraction:
    return sum((r * x for r, x in zip(rho_check(k), vec)), Fraction(0))


def fundamental_pairing(k: int, b: int) -> tuple[Fraction, Fraction]:
    """``(<rho-check, omega_{b mod k}>, closed form)`` for ``-k <= b <= k``."""
    if not -k <= b <= k:
        raise ValueError("b must lie in [-k, k]")
    j = b % k
    omega = [Fraction(int(i < j)) - Fraction(j, k) for i in range(k)]
    lhs = rho_pairing(k, omega)
    rhs = Fraction(b * k - b * b, 2) if b >= 0 else Fraction(-b * k - b * b, 2)
    return lhs, rhs


def transpose_identity(diagram: GeneralizedYoungDiagram) -> tuple[Fraction, Fraction]:
    """``(<rho-check_SL(k), tlam>, -(lam,lam)/2 - k E(lam))`` for a diagram ``lam`` of modulus k."""
    N, k = diagram.length, diagram.modulus
    nu = transpose(psi(N, k, diagram), N, k)
    lhs = rho_pairing(k, nu.entries)
    rhs = Fraction(-diagram.norm2(), 2) - k * energy_of_highest(diagram)
    return lhs, rhs


@dataclass(frozen=True)
class NakajimaLift:
    """Weights ``lam = (k, lam_bar, 0)`` and ``mu = (k, mu_bar, mu_energy)`` of affine sl(N).

    ``lam`` and ``mu`` are ``None`` when N = 1.
    """

    lam: AffineWeight | None
    mu: AffineWeight | None
    a: int
    lam_bar: GeneralizedYoungDiagram
    mu_bar: GeneralizedYoungDiagram
    gl_weight: tuple[int, tuple[int, ...], int]
    mu_energy: int


def gl_weight(dims: QuiverDims) -> tuple[int, tuple[int, ...], int]:
    """``sum w_i omega_i - sum v_i alpha_i`` as ``(level, E-vector, energy)``."""
    k = dims.k
    x = [0] * k
    for i, wi in enumerate(dims.w, start=1):
        for j in range(i):
            x[j] += wi
    for i, vi in enumerate(dims.v, start=1):
        if i < k:
            x[i - 1] -= vi
            x[i] += vi
        else:
            x[0] += vi
            x[k - 1] -= vi
    return dims.N, tuple(x), -dims.v[-1]


def gl_labels(weight: tuple[int, tuple[int, ...], int]) -> tuple[int, ...]:
    """Pairings with the simple coroots ``1..k-1`` followed by node 0."""
    level, x, _ = weight
    k = len(x)
    return tuple(x[i] - x[i + 1] for i in range(k - 1)) + (level - (x[0] - x[-1]),)


def nakajima_lifts(dims: QuiverDims, N: int | None = None, k: int | None = None) -> NakajimaLift:
    """Lift ``(v, w)`` to the pair of affine sl(N) weights at level k.

    ``mu_bar = psi^-1(w)``; ``lam_bar = psi^-1(w')`` where ``w'`` are the labels of
    the shifted gl(k) weight ``sum w_i omega_i - sum v_i alpha_i``, which must be
    dominant.  ``a = sum v``.
    """
    N = dims.N if N is None else N
    k = dims.k if k is None else k
    if dims.k != k or dims.N != N:
        raise LevelRankError(f"w={dims.w} is not a {k}-vector summing to N={N}")
    mu_bar = psi_inverse(dims.w, N, k)
    x = gl_weight(dims)
    labels = gl_labels(x)
    if any(c < 0 for c in labels):
        raise LevelRankError(f"shifted weight for v={dims.v}, w={dims.w} is not dominant")
    lam_bar = psi_inverse(labels, N, k)
    a = sum(dims.v)
    num = Fraction(2 * a + mu_bar.norm2() - lam_bar.norm2(), 2)
    if (num / k).denominator != 1:
        raise LevelRankError(f"energy {-num / k} of the lift is not an integer")
    energy = int(-num / k)
    if N == 1:
        # affine sl(1) has no weights beyond level and energy
        return NakajimaLift(None, None, a, lam_bar, mu_bar, x, energy)
    data = sl_data(N)
    lam = lam_bar.to_weight(data, 0)
    mu = mu_bar.to_weight(data, energy)
    return NakajimaLift(lam, mu, a, lam_bar, mu_bar, x, energy)


def check_nakaj_identity(lam_bar, mu_bar, v: Sequence[int], N: int, k: int) -> bool:
    """Exact test of ``v_k + E(lam) - E(mu) == (a + (mu,mu)/2 - (lam,lam)/2) / k``."""
    lam_bar = _as_diagram(lam_bar, k)
    mu_bar = _as_diagram(mu_bar, k)
    if lam_bar.length != N or mu_bar.length != N or len(v) != k:
        raise LevelRankError("shape mismatch")
    lhs = v[-1] + energy_of_highest(lam_bar) - energy_of_highest(mu_bar)
    rhs = Fraction(2 * sum(v) + mu_bar.norm2() - lam_bar.norm2(), 2 * k)
    return lhs == rhs


def _as_diagram(d, k: int) -> GeneralizedYoungDiagram:
    return d if isinstance(d, GeneralizedYoungDiagram) else GeneralizedYoungDiagram(tuple(d), k)


def dimension_formula(data: CartanData, lam: AffineWeight, mu: AffineWeight) -> int:
    """``2|lam - mu|``: twice the height of ``lam - mu`` in simple roots.

    Also evaluated as ``<2 rho-check, lam_bar - mu_bar> + 2 h (l - m)`` with ``h``
    the height of ``delta``; the two must agree.
    """
    if not data.affine or lam.level != mu.level or lam.level <= 0:
        raise PreconditionError("need affine weights of one positive level")
    coords = data.to_root_coords(lam - mu)
    if coords is None or any(c < 0 for c in coords):
        raise PreconditionError(f"{lam} is not above {mu}")
    value = 2 * sum(coords)
    fin = _finite_height(data, tuple(a - b for a, b in zip(lam.finite, mu.finite)))
    expanded = 2 * fin + 2 * data.delta_height * (lam.energy - mu.energy)
    if expanded != value:
        raise ArithmeticError(f"dimension expansions disagree: {value} vs {expanded}")
    return value


def _finite_height(data: CartanData, labels: Sequence[int]) -> Fraction:
    """``<rho-check, x>`` for a finite weight given by its labels (may be fractional)."""
    A = data.finite_cartan
    r = data.rank
    # solve A^T c = labels in simple-root coordinates c (labels_i = sum_j A[i][j] c_j)
    M = [[Fraction(A[i][j]) for j in range(r)] + [Fraction(labels[i])] for i in range(r)]
    for col in range(r):
        piv = next(i for i in range(col, r) if M[i][col])
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for i in range(r):
            if i != col and M[i][col]:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[col])]
    h = sum(M[i][r] for i in range(r))
    return h if h.denominator != 1 else int(h)


# -- tensor products ---------------------------------------------------------

@lru_cache(maxsize=None)
def sl_data(n: int) -> CartanData:
    if n < 2:
        raise PreconditionError("affine sl(n) needs n >= 2")
    return build_affine_data("A", n - 1)


def _norm(data, x):
    return bilinear_form(data, x, x)


class _GrowingTable:
    """Multiplicities of ``L(b)`` whose truncation depth grows on demand up to ``limit``."""

    def __init__(self, data: CartanData, b: AffineWeight, limit: int | None):
        self.data = data
        self.lam = b
        self.limit = limit
        self._table = MultiplicityTable(data, b, 0)

    def multiplicity(self, eta: AffineWeight) -> int:
        coords = self.data.to_root_coords(self.lam - eta)
        if coords is None or any(c < 0 for c in coords):
            return 0
        need = coords[0]
        if need > self._table.depth:
            if self.limit is not None and need > self.limit:
                raise DepthError(f"tensor oracle needs depth {need}, limit {self.limit}")
            grown = max(need, 2 * self._table.depth)
            if self.limit is not None:
                grown = min(grown, self.limit)
            self._table = MultiplicityTable(self.data, self.lam, grown)
        return self._table.multiplicity(eta)


def _pair_multiplicity(data: CartanData, a: AffineWeight, table: _GrowingTable, nu: AffineWeight) -> int:
    """Multiplicity of ``L(nu)`` in ``L(a) (x) L(b)``, ``table`` holding ``L(b)``.

    Sum over ``w`` of ``sign(w) dim L(b)_{w.nu - a}``.  The walk descends the orbit of
    ``nu + rho``; ``|w.nu - a|^2`` only grows along it, and weights of ``L(b)``
    have norm at most ``|b|^2``, which bounds the walk.
    """
    b = table.lam
    cap = _norm(data, b)
    rho = data.rho
    start = nu + rho
    total = 0
    seen = {start}
    layer = [(start, 0)]
    while layer:
        nxt = []
        for x, length in layer:
            eta = x - rho - a
            if _norm(data, eta) > cap:
                continue
            m = table.multiplicity(eta)
            if m:
                total += -m if length % 2 else m
            for i in data.nodes:
                if data.pairing(x, i) > 0:
                    y = reflect(data, i, x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append((y, length + 1))
        layer = nxt
    return total


def sl_tensor_multiplicity(
    data: CartanData, nu: AffineWeight, factors: Sequence[AffineWeight], depth: int | None = None
) -> int:
    """Multiplicity of ``L(nu)`` in ``L(b_1) (x) ... (x) L(b_n)``, decomposed left to right.

    ``depth`` caps the delta-depth of every weight multiplicity the oracle looks up
    (``None``: no cap).
    """
    if not factors:
        raise PreconditionError("need at least one factor")
    top = factors[0]
    for b in factors[1:]:
        top = top + b
    if nu.level != top.level:
        raise PreconditionError("level of nu differs from the total level of the factors")
    coords = data.to_root_coords(top - nu)
    if coords is None or any(c < 0 for c in coords):
        return 0
    gap = coords[0]
    if depth is not None and gap > depth:
        raise DepthError(f"nu lies {gap} below the top, depth {depth}")
    tables: dict[AffineWeight, _GrowingTable] = {}
    decomposition = {factors[0]: 1}
    remaining = top - factors[0]
    for b in factors[1:]:
        remaining = remaining - b
        table = tables.setdefault(b, _GrowingTable(data, b, depth))
        nxt: dict[AffineWeight, int] = {}
        for prev, m_prev in sorted(decomposition.items()):
            for cand in _dominant_candidates(data, prev + b, gap):
                reach = data.to_root_coords(cand + remaining - nu)
                if reach is None or any(c < 0 for c in reach):
                    continue
                m = _pair_multiplicity(data, prev, table, cand)
                if m:
                    nxt[cand] = nxt.get(cand, 0) + m_prev * m
        decomposition = {x: m for x, m in nxt.items() if m}
    return decomposition.get(nu, 0)


def tensor_multiplicity(dims: QuiverDims, depth: int | None = None) -> int:
    """Multiplicity of ``L_gl(sum w_i omega_i - sum v_i alpha_i)`` in ``(x)_i L_gl(omega_i)^{w_i}``.

    Each level-1 gl(k) module is a level-1 sl(k) module times a Heisenberg Fock
    space.  Over N factors the Heisenberg part splits into the diagonal boson,
    which rides along with ``L_gl(nu)``, and N-1 relative bosons commuting with
    gl(k); the latter contribute (N-1)-coloured partitions of the energy gap.
    """
    k, N = dims.k, dims.N
    if k < 2:
        raise PreconditionError("tensor oracle needs k >= 2")
    x = gl_weight(dims)
    labels = gl_labels(x)
    if any(c < 0 for c in labels):
        raise LevelRankError("target gl weight is not dominant")
    data = sl_data(k)
    factors = []
    for i, wi in enumerate(dims.w, start=1):
        factors += [data.fundamental_weight(i % k)] * wi
    nu = data.weight(N, labels[:-1], x[2])
    top = data.zero(0)
    for b in factors:
        top = top + b
    coords = data.to_root_coords(top - nu)
    if coords is None or any(c < 0 for c in coords):
        return 0
    gap = coords[0]
    parts = colored_partitions(lambda n: N - 1, gap)
    total = 0
    for j in range(gap + 1):
        if parts[j]:
            total += parts[j] * sl_tensor_multiplicity(data, nu.shift_energy(j), factors, depth)
    return total


@dataclass(frozen=True)
class DualityRow:
    v: tuple[int, ...]
    w: tuple[int, ...]
    lam: AffineWeight | None
    mu: AffineWeight | None
    a: int | None
    lhs: int | None
    rhs: int | None
    nakaj: bool | None
    status: str  # "ok", "mismatch", "inconsistent"
    note: str = ""

    def as_dict(self) -> dict:
        def wt(x):
            return None if x is None else [x.level, list(x.finite), x.energy]

        return {
            "v": list(self.v), "w": list(self.w), "lambda": wt(self.lam), "mu": wt(self.mu),
            "a": self.a, "lhs": self.lhs, "rhs": self.rhs, "nakaj": self.nakaj,
            "status": self.status, "note": self.note,
        }


def duality_row(dims: QuiverDims) -> DualityRow:
    N, k = dims.N, dims.k
    try:
        lift = nakajima_lifts(dims, N, k)
    except LevelRankError as exc:
        return DualityRow(dims.v, dims.w, None, None, None, None, None, None, "inconsistent", str(exc))
    data = sl_data(N)
    coords = data.to_root_coords(lift.lam - lift.mu)
    if coords is None or any(c < 0 for c in coords):
        rhs = 0
    else:
        rhs = MultiplicityTable(data, lift.lam, coords[0]).multiplicity(lift.mu)
    lhs = tensor_multiplicity(dims)
    ok = check_nakaj_identity(lift.lam_bar, lift.mu_bar, dims.v, N, k)
    status = "ok" if lhs == rhs and ok else "mismatch"
    return DualityRow(dims.v, dims.w, lift.lam, lift.mu, lift.a, lhs, rhs, ok, status)


def compositions(total: int, parts: int) -> Iterable[tuple[int, ...]]:
    for cuts in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cuts + (total + parts - 1,):
            out.append(c - prev - 1)
            prev = c
        yield tuple(out)


def duality_sweep(N: int, k: int, bound: int) -> list[DualityRow]:
    """Rows for every ``w`` in the image of ``psi`` and every ``v`` with ``sum v <= bound``
    whose shifted gl weight is dominant, ordered by (w, sum v, v)."""
    rows = []
    for w in sorted(psi(N, k, d) for d in all_diagrams(N, k)):
        for s in range(bound + 1):
            for v in sorted(compositions(s, k)):
                dims = QuiverDims(v, w)
                if any(c < 0 for c in gl_labels(gl_weight(dims))):
                    continue
                rows.append(duality_row(dims))
    return rows
