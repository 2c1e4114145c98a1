import json
from fractions import Fraction
from itertools import product

import pytest

from artifact.adlv import verify_certificate
from artifact.construct import (
    ConstructionGap, apply_root_ops, build_base_gallery, build_gamma_pp, certificate_from_json,
    certificate_to_json, first_certificate, first_target_certificate, fold_first_target,
    lower_target_certificate, lower_targets, solve_lower_target, x0_element,
)
from artifact.eaw import ExtAffine, format_element, length
from artifact.gallery import Orientation, fold_stats
from artifact.rootdata import build_root_datum, weyl_act


def _pipeline(R, lam, i):
    return first_target_certificate(fold_first_target(build_base_gallery(R, lam, i)))


def test_a2_worked_instance(A2):
    st = build_base_gallery(A2, (3, 3), 1)
    assert st.gamma.type_vec == (0, 1, 2, 1, 0, 1, 2, 1, 0)
    assert st.segments == (0, 1, 4, 5, 8)
    assert st.marked == 7
    st = first_target_certificate(fold_first_target(st))
    assert format_element(st.target) == "t^[-3,3]*s2"
    assert format_element(st.y) == "t^[-2,1]*s1s2"
    assert st.d == 1
    assert st.m_prime() == (3,)
    cert = first_certificate(st)
    assert "".join(map(str, cert.gallery.mask)) == "011000000"
    s = cert.stats
    assert (s.p, s.f, s.dim) == (5, 2, 7)
    assert cert.nu == (Fraction(0), Fraction(3, 2))


@pytest.mark.parametrize("tag,rank,lam", [
    ("A", 2, (3, 5)), ("B", 2, (5, 6)), ("C", 2, (6, 5)), ("G", 2, (5, 5)), ("A", 3, (3, 3, 3)),
])
def test_fold_census_and_z(tag, rank, lam):
    R = build_root_datum(tag, rank)
    for i in range(1, rank + 1):
        st = fold_first_target(build_base_gallery(R, lam, i))
        assert len(st.gamma_rho.folds) == len(R.w0) - 1
        assert length(R, st.gamma.end) == len(st.gamma)
        # z = t^{rho + w0 s_i (lam - rho)} s_{i1}, computed independently
        rho = tuple(int(c) for c in R.rho_check)
        lr = tuple(a - b for a, b in zip(lam, rho))
        zeta = tuple(a + b for a, b in zip(rho, weyl_act(R.w0 * R.s(i), lr)))
        assert st.gamma_rho.end == ExtAffine(zeta, R.s(st.i1))


def test_input_errors(A2):
    with pytest.raises(ValueError):
        build_base_gallery(A2, (1, 1), 1)  # not far enough from the walls
    with pytest.raises(ValueError):
        build_base_gallery(A2, (3, 3), 3)
    with pytest.raises(ValueError):
        first_target_certificate(fold_first_target(build_base_gallery(A2, (4, 3), 1)))
    st = _pipeline(A2, (3, 3), 1)
    with pytest.raises(ValueError):
        apply_root_ops(st, (4,))
    with pytest.raises(ValueError):
        apply_root_ops(st, (1, 1))
    with pytest.raises(ValueError):
        solve_lower_target(st, (0, Fraction(1, 2)))  # wrong Kottwitz class
    with pytest.raises(ValueError):
        solve_lower_target(st, (0, Fraction(9, 2)))  # outside the hull


def test_gap_reported_for_g2():
    G2 = build_root_datum("G", 2)
    st = _pipeline(G2, (5, 3), 2)
    with pytest.raises(ConstructionGap):
        lower_target_certificate(st, (Fraction(1, 2), 0))


def test_repair_branch_requires_nonpositive_d(A2):
    st = _pipeline(A2, (3, 3), 1)
    with pytest.raises(ValueError):
        build_gamma_pp(st, (0,), 1, st.eta)


def test_json_roundtrip(A2):
    cert = first_certificate(_pipeline(A2, (3, 5), 1))
    back = certificate_from_json(json.dumps(certificate_to_json(cert)))
    assert back.gallery == cert.gallery and back.y == cert.y and back.nu == cert.nu
    assert verify_certificate(back)


@pytest.mark.parametrize("tag", ["A", "B", "C"])
def test_every_lower_target_certified(tag):
    R = build_root_datum(tag, 2)
    seen = 0
    for lam in product(range(3, 6), repeat=2):
        for i in (1, 2):
            try:
                st = _pipeline(R, lam, i)
            except ValueError:
                continue
            for nu in lower_targets(R, lam, i):
                cert = lower_target_certificate(st, nu)
                assert cert.branch == ("lower" if cert.d >= 1 else "repair")
                assert cert.stats.negative_folds == 0
                seen += 1
    assert seen > 0


def test_x0_element(A2):
    assert format_element(x0_element(A2, (3, 3))) == "t^[3,3]*s1s2s1"
