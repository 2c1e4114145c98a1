from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from artifact.rootdata import (
    build_root_datum, coroot_coords, dominance_leq, dominantize, i_one, in_coroot_lattice,
    in_weyl_orbit_hull, is_dominant, kottwitz_class, pairing, reduced_words, reflect,
    tailored_w0_word, weyl_act, weyl_element, weyl_group,
)
from artifact.newton import invariant_form

CASES = [
    # type, rank, |Phi+|, |W|, highest root
    ("A", 1, 1, 2, (1,)),
    ("A", 2, 3, 6, (1, 1)),
    ("A", 3, 6, 24, (1, 1, 1)),
    ("B", 2, 4, 8, (1, 2)),
    ("B", 3, 9, 48, (1, 2, 2)),
    ("C", 2, 4, 8, (2, 1)),
    ("C", 3, 9, 48, (2, 2, 1)),
    ("D", 4, 12, 192, (1, 2, 1, 1)),
    ("G", 2, 6, 12, (3, 2)),
]


@pytest.mark.parametrize("tag,n,npos,order,theta", CASES)
def test_classification_counts(tag, n, npos, order, theta):
    R = build_root_datum(tag, n)
    assert len(R.pos_roots) == npos
    assert len(weyl_group(R)) == order
    assert R.highest_root == theta
    assert len(R.w0) == npos


@pytest.mark.parametrize("tag,n", [("X", 2), ("B", 1), ("G", 3), ("E", 5), ("A", 0)])
def test_bad_types_rejected(tag, n):
    with pytest.raises(ValueError):
        build_root_datum(tag, n)


def test_cartan_convention(rank_two):
    R = rank_two
    for i in range(1, 3):
        for j in range(1, 3):
            assert R.cartan[i - 1][j - 1] == pairing(R.simple_root(i), R.coroot(j))


def test_coroots_pair_to_two(rank_two):
    for beta, cor in zip(rank_two.pos_roots, rank_two.pos_coroots):
        assert pairing(beta, cor) == 2


def test_w0_action():
    # -w0 is the diagram automorphism: trivial except in type A (and D odd, E6)
    for tag, n in [("B", 2), ("C", 3), ("G", 2), ("D", 4)]:
        R = build_root_datum(tag, n)
        assert weyl_act(R.w0, R.rho_check) == tuple(-c for c in R.rho_check)
        assert all(i_one(R, i) == i for i in range(1, n + 1))
    A3 = build_root_datum("A", 3)
    assert [i_one(A3, i) for i in (1, 2, 3)] == [3, 2, 1]


def test_reduced_word_counts():
    A2 = build_root_datum("A", 2)
    assert reduced_words(A2, A2.w0) == [(1, 2, 1), (2, 1, 2)]
    assert len(reduced_words(build_root_datum("A", 3), build_root_datum("A", 3).w0)) == 16
    assert len(reduced_words(build_root_datum("B", 2), build_root_datum("B", 2).w0)) == 2


@pytest.mark.parametrize("tag,n", [("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("G", 2)])
def test_tailored_word(tag, n):
    R = build_root_datum(tag, n)
    for i in range(1, n + 1):
        word = tailored_w0_word(R, i)
        assert weyl_element(R, word) == R.w0 and len(word) == len(R.w0)
        tail = word[-n:]
        assert sorted(tail) == list(range(1, n + 1))
        assert tail[-1] == i_one(R, i)


vec2 = st.tuples(st.integers(-6, 6), st.integers(-6, 6))


@given(vec2, st.sampled_from("ABCG"))
def test_reflection_is_involution(v, tag):
    R = build_root_datum(tag, 2)
    for i in (1, 2):
        assert reflect(R, i, reflect(R, i, v)) == tuple(Fraction(c) for c in v)


@given(vec2, st.sampled_from("ABCG"))
def test_weyl_action_is_isometry(v, tag):
    R = build_root_datum(tag, 2)
    for w in weyl_group(R):
        wv = weyl_act(w, v)
        assert invariant_form(R, wv, wv) == invariant_form(R, v, v)


@given(vec2, st.sampled_from("ABCG"))
def test_dominantize(v, tag):
    R = build_root_datum(tag, 2)
    d, u = dominantize(R, v)
    assert is_dominant(d)
    assert weyl_act(u, v) == d
    # the dominant element is the unique dominant point of the orbit
    orbit = {weyl_act(w, v) for w in weyl_group(R)}
    assert [x for x in orbit if is_dominant(x)] == [d]


def _brute_leq(R, v1, v2, bound=60):  # covers |diff| <= 12 in G2
    diff = tuple(b - a for a, b in zip(v1, v2))
    for c in product(range(bound + 1), repeat=R.rank):
        s = tuple(sum(c[j] * R.coroot_coords[j][k] for j in range(R.rank)) for k in range(R.rank))
        if s == diff:
            return True
    return False


@given(vec2, vec2, st.sampled_from("ABCG"))
def test_dominance_order_against_brute_force(v1, v2, tag):
    R = build_root_datum(tag, 2)
    if in_coroot_lattice(R, tuple(b - a for a, b in zip(v1, v2))):
        assert dominance_leq(R, v1, v2) == _brute_leq(R, v1, v2)


@given(vec2, vec2, st.sampled_from("ABCG"))
def test_kottwitz_class_is_coroot_lattice_quotient(v1, v2, tag):
    R = build_root_datum(tag, 2)
    same = kottwitz_class(R, v1) == kottwitz_class(R, v2)
    assert same == in_coroot_lattice(R, tuple(a - b for a, b in zip(v1, v2)))


def test_kottwitz_group_orders():
    for tag, n, order in [("A", 2, 3), ("A", 3, 4), ("B", 2, 2), ("C", 3, 2), ("G", 2, 1), ("D", 4, 4)]:
        R = build_root_datum(tag, n)
        classes = {kottwitz_class(R, v) for v in product(range(4), repeat=n)}
        assert len(classes) == order


def test_hull_membership(A2):
    xi = (1, 1)
    inside = [v for v in product(range(-3, 4), repeat=2) if in_weyl_orbit_hull(A2, v, xi)]
    # integral points of the hexagon conv(W rho_check) in the root lattice class of rho_check
    assert (0, 0) in inside and (1, 1) in inside and (-1, -1) in inside
    assert (2, 0) not in inside
    with pytest.raises(ValueError):
        in_weyl_orbit_hull(A2, (0, 0), (-1, 1))


def test_coroot_coords(A2):
    assert coroot_coords(A2, (2, -1)) == (1, 0)
    assert coroot_coords(A2, (1, 0)) == (Fraction(2, 3), Fraction(1, 3))
