"""Weyl group actions on weights: reflections, dot action, chamber reduction, bounded search."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .rootsystem import AffineWeight, CartanData


@dataclass(frozen=True, order=True)
class WeylElement:
    """A Weyl group element as a reduced word ``s_{i1} s_{i2} ... s_{ik}``.

    The word acts right to left, so ``word[-1]`` is applied first.
    """

    length: int
    word: tuple[int, ...]

    @classmethod
    def from_word(cls, word: Sequence[int]) -> "WeylElement":
        return cls(len(word), tuple(word))

    @classmethod
    def identity(cls) -> "WeylElement":
        return cls(0, ())

    @property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        # concatenation; reducedness is the caller's responsibility
        return WeylElement.from_word(self.word + other.word)

    def __str__(self):
        return "id" if not self.word else "*".join(f"s{i}" for i in self.word)


def reflect(data: CartanData, i: int, x: AffineWeight) -> AffineWeight:
    """``s_i(x) = x - <x, coroot_i> alpha_i``."""
    if i not in data.nodes:
        raise IndexError(f"node {i} out of range for {data.label}")
    c = data.pairing(x, i)
    if c == 0:
        return x
    return x - c * data.simple_root(i)


def act(data: CartanData, w: WeylElement, x: AffineWeight) -> AffineWeight:
    for i in reversed(w.word):
        x = reflect(data, i, x)
    return x


def dot_action(data: CartanData, w: WeylElement, x: AffineWeight) -> AffineWeight:
    """``w . x = w(x + rho) - rho``."""
    return act(data, w, x + data.rho) - data.rho


def is_dominant(data: CartanData, x: AffineWeight) -> bool:
    return data.is_dominant(x)


def reduce_to_dominant(data: CartanData, x: AffineWeight) -> tuple[AffineWeight, WeylElement]:
    """Plain-action representative of the orbit of ``x`` in the dominant chamber.

    Returns ``(x+, w)`` with ``x+ = w(x)``.  Terminates for finite types and for
    affine weights of positive level.
    """
    if data.affine and x.level <= 0:
        raise ValueError("chamber reduction needs positive level")
    word: list[int] = []
    while True:
        for i in data.nodes:
            c = data.pairing(x, i)
            if c < 0:
                x = x - c * data.simple_root(i)
                word.insert(0, i)
                break
        else:
            return x, WeylElement.from_word(word)


def to_level_k_dominant(
    data: CartanData, finite: Sequence[int], k: int, dot: bool = False
) -> tuple[tuple[int, ...], int] | None:
    """Representative of ``finite`` in the level-``k`` alcove and the parity of the element used.

    With ``dot=True`` the shifted action ``w(x + rho) - rho`` is used instead; if
    the shifted orbit meets a wall the weight is singular and ``None`` is returned.
    Parity is ``+1`` for even length, ``-1`` for odd.
    """
    if not data.affine:
        raise ValueError("level-k reduction needs affine data")
    if k < 1:
        raise ValueError("level must be positive")
    x = data.weight(k, finite, 0)
    if dot:
        y, w = reduce_to_dominant(data, x + data.rho)
        if any(p == 0 for p in data.pairings(y)):
            return None
        return (y - data.rho).finite, w.sign
    y, w = reduce_to_dominant(data, x)
    return y.finite, w.sign


def enumerate_contributing(
    data: CartanData, lam: AffineWeight, mu: AffineWeight, depth: int | None = None
) -> list[tuple[WeylElement, AffineWeight]]:
    """All ``w`` with ``w . lam - mu`` in the positive root cone (delta-coefficient <= depth).

    Breadth-first search over the orbit of ``lam + rho``: a reflection is applied only
    when it moves the point down, so every visited point carries a reduced word and
    simple-root coordinates of ``w . lam - mu`` never increase along a path.  Points
    whose coordinates go negative are pruned together with all their descendants.
    Output is sorted by ``(length, word)``.
    """
    if data.affine:
        if lam.level <= 0 or lam.level != mu.level:
            raise ValueError("enumeration needs lam and mu at the same positive level")
    if not data.is_dominant(lam):
        raise ValueError("lam must be dominant")
    target = mu + data.rho
    start = lam + data.rho
    if data.to_root_coords(start - target) is None:
        return []
    out = []
    seen = {start}
    layer = [(start, ())]
    while layer:
        nxt = []
        for x, word in layer:
            coords = data.to_root_coords(x - target)
            if any(c < 0 for c in coords):
                continue
            if depth is None or data.depth_of(coords) <= depth:
                out.append((WeylElement.from_word(word), x - target))
            for i in data.nodes:
                c = data.pairing(x, i)
                if c > 0:
                    y = x - c * data.simple_root(i)
                    if y not in seen:
                        seen.add(y)
                        nxt.append((y, (i,) + word))
        nxt.sort(key=lambda t: t[1])
        layer = nxt
    out.sort(key=lambda t: (t[0].length, t[0].word))
    return out
