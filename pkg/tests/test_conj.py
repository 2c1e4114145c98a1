import pytest
from hypothesis import given, strategies as st

from artifact.conj import (
    brute_force_class, class_member, conjugacy_class_window, fills_out, integral_exception,
    inverse_problem, solve_conjugator, transverse_space,
)
from artifact.eaw import ExtAffine, conjugate
from artifact.newton import StandardRep, averaging_apply, invariants_of
from artifact.rootdata import build_root_datum, kottwitz_class, weyl_group


@pytest.mark.parametrize("tag,n", [("A", 2), ("B", 2), ("C", 2), ("G", 2), ("A", 3)])
def test_single_reflections(tag, n):
    R = build_root_datum(tag, n)
    for i in range(1, n + 1):
        cert = fills_out(R, R.s(i))
        # alpha_i^vee is in (I - s_i)R^vee iff some <alpha_i, alpha_j^vee> is odd
        odd = any(c % 2 for c in R.cartan[i - 1])
        assert cert.holds == odd
        assert all(w is not None for w in cert.witnesses) == odd
        assert (tag, i) in (("B", 1), ("C", 2)) or odd


def test_sl4_obstruction(A3):
    cert = fills_out(A3, A3.s(1) * A3.s(3))
    assert not cert.holds
    assert sorted(cert.generators) == [(0, 0, 1), (1, 0, 0)]
    (cong,) = cert.obstruction
    assert cong.modulus == 2
    # c1 alpha1^vee + c3 alpha3^vee lies in (I - v)R^vee iff c1 + c3 is even
    assert cong.holds((1, 1)) and cong.holds((2, 0)) and not cong.holds((1, 0))


def test_identity_and_w0(A2):
    assert fills_out(A2, A2.identity).holds
    assert fills_out(A2, A2.w0).holds


def test_transverse_space_rank_one(A2):
    rep = StandardRep((1, 1), A2.s(1))
    T = transverse_space(A2, rep)
    assert T.base == averaging_apply(A2.s(1), (1, 1))
    assert T.contains(A2, (1, 1)) and T.contains(A2, (3, 0))
    assert not T.contains(A2, (1, 0))


@pytest.mark.parametrize("tag,rep", [("A", ((1, 1), 1)), ("B", ((1, 1), 2)), ("G", ((1, 1), 1))])
def test_window_matches_brute_force(tag, rep):
    R = build_root_datum(tag, 2)
    eta, i = rep
    srep = StandardRep(eta, R.s(i))
    predicted = conjugacy_class_window(R, srep, 2)
    brute = brute_force_class(R, srep.element, 10, 2)
    assert brute <= predicted
    if tag == "A":
        assert brute == predicted
    for z in predicted:
        y = inverse_problem(R, srep, z)
        assert conjugate(srep.element, y) == z


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(0, 5))
def test_inverse_problem_on_random_conjugates(a, b, k):
    A2 = build_root_datum("A", 2)
    rep = StandardRep((1, 1), A2.s(1))
    y = ExtAffine((a, b), weyl_group(A2)[k])
    z = conjugate(rep.element, y)
    y2 = inverse_problem(A2, rep, z)
    assert conjugate(rep.element, y2) == z
    u, d = solve_conjugator(A2, rep, z)
    assert (u, d) in class_member(A2, rep, z)


def test_non_member_rejected(A2):
    rep = StandardRep((1, 1), A2.s(1))
    with pytest.raises(ValueError):
        inverse_problem(A2, rep, ExtAffine((0, 0), A2.s(1)))


def test_integral_exception_classes():
    B2, C2 = build_root_datum("B", 2), build_root_datum("C", 2)
    zero = kottwitz_class(B2, (0, 0))
    assert integral_exception(B2, 1, zero)
    assert not integral_exception(B2, 2, zero)
    assert integral_exception(C2, 2, kottwitz_class(C2, (0, 0)))
    assert not integral_exception(C2, 1, kottwitz_class(C2, (0, 0)))
    A2 = build_root_datum("A", 2)
    assert not any(integral_exception(A2, i) for i in (1, 2))
    # brute force in the exceptional class: every P_1 Newton point is integral
    for a in range(-6, 7, 2):
        for b in range(-6, 7):
            inv = invariants_of(B2, (0, abs(b) + 1), kottwitz_class(B2, (a, b)))
            if inv.kappa == zero:
                assert inv.integral or inv.std_rep is None
