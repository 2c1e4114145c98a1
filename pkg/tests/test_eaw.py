from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from artifact.eaw import (
    ExtAffine, Hyperplane, alcove_vertices, base_alcove, conjugate, ext, format_element,
    in_shrunken_dominant, inverse, length, multiply, omega_elements, omega_permutation,
    panel_hyperplane, parse_element, reduced_affine_word, separation_count, sheet,
    simple_affine, translation, wall,
)
from artifact.rootdata import build_root_datum, pairing, weyl_group


def elements(tag, radius=3):
    R = build_root_datum(tag, 2)
    return st.builds(
        lambda a, b, k: ExtAffine((a, b), weyl_group(R)[k % len(weyl_group(R))]),
        st.integers(-radius, radius), st.integers(-radius, radius), st.integers(0, 11),
    )


def _brute_separation(R, x, y):
    """Count hyperplanes strictly between the barycenters of two alcoves."""
    def bary(z):
        vs = alcove_vertices(R, z)
        return tuple(sum(v[c] for v in vs) / len(vs) for c in range(R.rank))

    p, q = bary(x), bary(y)
    total = 0
    for beta in R.pos_roots:
        a, b = sorted((pairing(beta, p), pairing(beta, q)))
        total += sum(1 for k in range(-20, 21) if a < k < b)
    return total


@pytest.mark.parametrize("tag", "ABCG")
@given(data=st.data())
def test_group_axioms(tag, data):
    R = build_root_datum(tag, 2)
    x, y, z = (data.draw(elements(tag)) for _ in range(3))
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))
    e = translation(R, (0, 0))
    assert multiply(x, inverse(x)) == e and multiply(inverse(x), x) == e
    assert conjugate(x, y) == multiply(multiply(y, x), inverse(y))
    assert conjugate(conjugate(x, y), inverse(y)) == x


@pytest.mark.parametrize("tag", "ABCG")
@given(data=st.data())
def test_length_is_separation_count(tag, data):
    R = build_root_datum(tag, 2)
    x = data.draw(elements(tag))
    start = base_alcove(R, sheet(R, x))
    assert length(R, multiply(inverse(start), x)) == _brute_separation(R, start, x)
    assert separation_count(R, start, x) == _brute_separation(R, start, x)
    assert len(reduced_affine_word(R, x)) == length(R, multiply(inverse(start), x))


def test_translation_lengths(A2):
    # l(t^lam) = <2rho, lam> for dominant lam; x0 = t^lam w0 drops l(w0)
    for lam in product(range(4), repeat=2):
        two_rho = sum(pairing(b, lam) for b in A2.pos_roots)
        assert length(A2, translation(A2, lam)) == two_rho
        if min(lam) >= 1:
            assert length(A2, ext(A2, lam, A2.w0)) == two_rho - 3


@pytest.mark.parametrize("tag,n,count", [("A", 2, 3), ("A", 3, 4), ("B", 2, 2), ("C", 2, 2), ("G", 2, 1)])
def test_omega(tag, n, count):
    R = build_root_datum(tag, n)
    om = omega_elements(R)
    assert len(om) == count
    assert all(length(R, x) == 0 for x in om)
    for x in om:
        perm = omega_permutation(R, x)
        assert sorted(perm) == list(range(n + 1))


def test_simple_affine_and_walls(rank_two):
    R = rank_two
    e = translation(R, (0, 0))
    for j in range(3):
        s = simple_affine(R, j)
        assert multiply(s, s) == e and length(R, s) == 1
        assert panel_hyperplane(R, e, j) == wall(R, j)
    assert wall(R, 0) == Hyperplane(R.highest_root, 1)


def test_hyperplane_normalisation():
    H = Hyperplane.make((-1, 0), 2)
    assert H == Hyperplane((1, 0), -2)
    with pytest.raises(ValueError):
        Hyperplane.make((1, 0), Fraction(1, 2))


@given(elements("C"))
def test_parse_format_roundtrip(x):
    R = build_root_datum("C", 2)
    assert parse_element(R, format_element(x)) == x


@pytest.mark.parametrize("text", ["t^[oops]", "t^[1,2,3]", "s1x", "", "t^[1,2]*q"])
def test_parse_errors(A2, text):
    with pytest.raises(ValueError):
        parse_element(A2, text)


def test_parse_examples(A2):
    x = parse_element(A2, "t^[-2,1]*s1s2")
    assert x.lam == (-2, 1) and x.w == A2.s(1) * A2.s(2)
    assert parse_element(A2, "s1s2s1") == ext(A2, (0, 0), A2.w0)
    assert format_element(parse_element(A2, "t^[3,3]*s2s1s2")) == "t^[3,3]*s1s2s1"


def test_shrunken_chamber(A2):
    assert in_shrunken_dominant(A2, ext(A2, (3, 3), A2.w0))
    assert in_shrunken_dominant(A2, ext(A2, (2, 2), A2.w0))
    assert not in_shrunken_dominant(A2, ext(A2, (1, 1), A2.w0))
    assert in_shrunken_dominant(A2, translation(A2, (1, 1)))
    assert not in_shrunken_dominant(A2, translation(A2, (0, 1)))
