import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_level_k_reduce
from qaffine.rootsystem import AffineWeight, bilinear_form, build_affine_data, build_finite_data
from qaffine.weyl import (
    WeylElement,
    act,
    dot_action,
    enumerate_contributing,
    is_dominant,
    reflect,
    to_level_k_dominant,
)

A1 = build_affine_data("A1")
SL2 = build_finite_data("A1")


def s(*word):
    return WeylElement.from_word(word)


def test_reflect_examples():
    assert reflect(SL2, 1, SL2.weight(0, (3,))) == SL2.weight(0, (-3,))
    L0 = A1.fundamental_weight(0)
    assert reflect(A1, 0, L0) == L0 - A1.simple_root(0)
    with pytest.raises(IndexError):
        reflect(A1, 2, L0)


def test_dot_examples():
    L0 = A1.fundamental_weight(0)
    assert dot_action(A1, WeylElement.identity(), L0) == L0
    assert dot_action(A1, s(1), L0) == L0 - A1.simple_root(1)
    for m in range(-4, 5):
        assert dot_action(SL2, s(1), SL2.weight(0, (m,))) == SL2.weight(0, (-m - 2,))


def test_dominance_examples():
    L0 = A1.fundamental_weight(0)
    for n in range(-3, 4):
        assert is_dominant(A1, L0.shift_energy(n))
    assert not is_dominant(A1, A1.weight(1, (2,)))
    assert is_dominant(A1, A1.weight(2, (2,)))


def test_sign_and_identity():
    assert WeylElement.identity().sign == 1
    assert s(0, 1).sign == 1 and s(1).sign == -1
    assert str(WeylElement.identity()) == "id"


weights = st.builds(
    lambda lv, a, b, e: AffineWeight(lv, (a, b), e),
    st.integers(-4, 4), st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5),
)
A2 = build_affine_data("A2")
G2D = build_affine_data("G2", dual=True)


@given(weights, weights, st.sampled_from([0, 1, 2]), st.sampled_from([A2, G2D]))
def test_reflection_involution_and_isometry(x, y, i, d):
    assert reflect(d, i, reflect(d, i, x)) == x
    assert bilinear_form(d, reflect(d, i, x), reflect(d, i, y)) == bilinear_form(d, x, y)
    assert reflect(d, i, x).level == x.level


@given(weights, st.lists(st.sampled_from([0, 1, 2]), max_size=5), st.lists(st.sampled_from([0, 1, 2]), max_size=5))
def test_dot_action_is_an_action(x, u, v):
    a, b = WeylElement.from_word(u), WeylElement.from_word(v)
    assert dot_action(A2, a * b, x) == dot_action(A2, a, dot_action(A2, b, x))
    assert dot_action(A2, a, x).level == x.level


@given(st.integers(1, 3), st.integers(0, 2), st.integers(0, 2), st.lists(st.sampled_from([0, 1, 2]), min_size=1, max_size=6))
def test_dominant_weights_move_strictly_down(k, a, b, word):
    if a + b > k:
        return
    lam = A2.weight(k, (a, b))
    w = WeylElement.from_word(word)
    img = dot_action(A2, w, lam)
    if act(A2, w, lam + A2.rho) == lam + A2.rho:
        return  # word represents the identity
    coords = A2.to_root_coords(lam - img)
    assert coords is not None and min(coords) >= 0 and max(coords) > 0


def test_level_k_examples():
    assert to_level_k_dominant(A1, (3,), 2) == ((1,), -1)
    assert to_level_k_dominant(A1, (-1,), 1) == ((1,), -1)
    assert to_level_k_dominant(A1, (1,), 3) == ((1,), 1)
    with pytest.raises(ValueError):
        to_level_k_dominant(A1, (1,), 0)
    with pytest.raises(ValueError):
        to_level_k_dominant(SL2, (1,), 1)


@pytest.mark.parametrize("letter,rank", [("A", 1), ("A", 2)])
@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("dot", [False, True])
def test_level_k_reduction_matches_orbit_scan(letter, rank, k, dot):
    d = build_affine_data(f"{letter}{rank}")
    rng = range(-6, 7)
    pts = [(a,) for a in rng] if rank == 1 else [(a, b) for a in rng for b in rng]
    for p in pts:
        expected = brute_level_k_reduce(letter, rank, p, k, dot=dot)
        got = to_level_k_dominant(d, p, k, dot=dot)
        if expected is None:
            assert got is None, p
            continue
        assert got[0] == expected[0], p
        if expected[1] is not None:
            assert got[1] == expected[1], p


def test_enumerate_examples():
    L0 = A1.fundamental_weight(0)
    assert enumerate_contributing(A1, L0, L0, 3) == [(WeylElement.identity(), A1.zero())]
    got = enumerate_contributing(A1, L0, L0.shift_energy(-1), 1)
    assert got == [(WeylElement.identity(), A1.delta), (s(1), A1.simple_root(0))]
    got = enumerate_contributing(SL2, SL2.weight(0, (2,)), SL2.weight(0, (0,)))
    assert got == [(WeylElement.identity(), SL2.simple_root(1))]


def test_enumerate_rejects_bad_levels():
    with pytest.raises(ValueError):
        enumerate_contributing(A1, A1.weight(0, (0,)), A1.weight(0, (0,)), 1)
    with pytest.raises(ValueError):
        enumerate_contributing(A1, A1.weight(1, (0,)), A1.weight(2, (0,)), 1)
    with pytest.raises(ValueError):
        enumerate_contributing(A1, A1.weight(1, (2,)), A1.weight(1, (0,)), 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 2), st.integers(0, 2), st.integers(-2, 2), st.integers(0, 3), st.sampled_from(["A1", "A2", "B2"]))
def test_enumeration_truncation_stable(k, a, b, drop, t):
    d = build_affine_data(t)
    lam = d.weight(k, (min(a, k),) + (0,) * (d.rank - 1))
    if not d.is_dominant(lam):
        return
    mu = d.weight(k, (b,) + (0,) * (d.rank - 1), -drop)
    for D in range(0, 4):
        small = enumerate_contributing(d, lam, mu, D)
        big = enumerate_contributing(d, lam, mu, D + 1)
        assert small == [(w, beta) for w, beta in big if d.depth_of(d.to_root_coords(beta)) <= D]
        for w, beta in big:
            assert beta == dot_action(d, w, lam) - mu
            assert min(d.to_root_coords(beta)) >= 0
