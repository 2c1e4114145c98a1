"""
The ten acceptance checks, each returning ``(passed, detail)``.

They are shared by ``tests/test_acceptance.py`` and ``artifact verify``.
"""

from __future__ import annotations

__all__ = ["CRITERIA", "FIGURE_GALLERY", "run_all"]

import time
from fractions import Fraction
from itertools import product

import numpy as np
from sympy import Matrix

from .adlv import box_window, dimension_lb, verify_certificate
from .conj import brute_force_class, conjugacy_class_window, fills_out, integral_exception, inverse_problem
from .construct import (
    ConstructionGap, build_base_gallery, first_certificate, first_target_certificate,
    fold_first_target, lower_target_certificate, lower_targets, x0_element,
)
from .eaw import ExtAffine, Hyperplane, ext, in_shrunken_dominant, multiply, spherical, translation
from .gallery import ChimneySpec, Orientation, act_left, fold_stats, root_operator_f
from .newton import (
    StandardRep, averaging_op, check_standard_rep, classify, invariant_form, invariants_of,
    rank_one_targets,
)
from .rootdata import (
    build_root_datum, dominance_leq, kottwitz_class, pairing, weyl_act, weyl_group,
)

# Figure-derived input data: the type vector printed with the figure and the
# two fold positions read off the picture (0-based), P_1-chimney with y = id.
FIGURE_GALLERY = {
    "root_system": "A2",
    "start": "t^[0,0]",
    "type": [2, 0, 1, 0, 2, 0, 1, 2, 0, 1, 2, 0, 1, 0, 2, 0],
    "mask": "0000000010000100",
    "chimney": {"parabolic": [1], "y": "t^[0,0]"},
    "source": "figure-derived",
}


def _box_lams(R, hi):
    """A2 lambdas with lambda - 2 rho_check regular dominant and |lambda| <= hi."""
    return [lam for lam in product(range(3, hi + 1), repeat=R.rank)]


def criterion_1():
    C2 = build_root_datum("C", 2)
    a = classify(C2, translation(C2, (0, 3)))
    lam = tuple(2 * p + 3 * q for p, q in zip(C2.coroot_coords[0], C2.coroot_coords[1]))
    b = classify(C2, ext(C2, lam, (1,)))
    three_w2 = (Fraction(0), Fraction(3))
    ok = (
        a.nu == three_w2 and a.integral and a.kappa == kottwitz_class(C2, (0, 1))
        and not a.kappa.is_zero()
        and b.nu == three_w2 and not b.integral and b.kappa.is_zero()
    )
    show = lambda v: "(" + ",".join(map(str, v)) + ")"  # noqa: E731
    return ok, (f"t^[0,3]: nu={show(a.nu)}, integral={a.integral}; "
                f"t^{list(lam)}*s1: nu={show(b.nu)}, kappa=0={b.kappa.is_zero()}")


def criterion_2():
    A3 = build_root_datum("A", 3)
    b = ext(A3, (1, 0, 1), (1, 3))  # t^{(1,0,0,-1)} s1 s3
    inv = classify(A3, b)
    accepted = check_standard_rep(A3, b, inv)
    cert = fills_out(A3, A3.s(1) * A3.s(3))
    singles = all(fills_out(A3, A3.s(i)).holds for i in (1, 2, 3))
    parity = [c for c in cert.obstruction if c.modulus == 2]
    ok = accepted and not cert.holds and bool(parity) and singles
    return ok, f"checker={accepted}; fills_out(s1s3)={cert.holds} [{cert.describe()}]; singles={singles}"


def _action(R, w):
    n = R.rank
    cols = [weyl_act(w, tuple(int(r == c) for r in range(n))) for c in range(n)]
    return np.array([[int(cols[c][r]) for c in range(n)] for r in range(n)], dtype=np.int64)


def criterion_3():
    checked = 0
    for tag, n in (("A", 2), ("B", 2), ("C", 2), ("G", 2), ("A", 3)):
        R = build_root_datum(tag, n)
        W = weyl_group(R)
        mats = {w: _action(R, w) for w in W}
        gram = np.array([[int(invariant_form(R, e, f)) for f in np.eye(n, dtype=int)]
                         for e in np.eye(n, dtype=int)], dtype=np.int64)
        scaled = {}
        for w in W:
            op = averaging_op(w)
            mA = np.array([[int(a * op.order) for a in row] for row in op.matrix], dtype=np.int64)
            if any(a * op.order != int(a * op.order) for row in op.matrix for a in row):
                return False, "averaging matrix times its order is not integral"
            scaled[w] = (op.order, mA)
        eye = np.eye(n, dtype=np.int64)
        for w in W:
            m, mA = scaled[w]
            Wm = mats[w]
            if not (mA @ Wm == mA).all():
                return False, f"A_w w != A_w for {w}"
            if not (mA @ mA == m * mA).all():
                return False, f"A_w is not a projection for {w}"
            if not ((mA @ (eye - Wm)) == 0).all() or not (((eye - Wm) @ mA) == 0).all():
                return False, f"Im(I-w) in Ker A_w or Im A_w in Ker(I-w) fails for {w}"
            if len(w) % 2 == 1 and weyl_order_is_two(Wm):
                if not (mA.T @ gram == gram @ mA).all():
                    return False, f"A_w is not orthogonal for the reflection {w}"
            rank_a = Matrix(mA.tolist()).rank()
            rank_iw = Matrix((eye - Wm).tolist()).rank()
            if rank_a + rank_iw != n:
                return False, f"Ker/Im equalities fail for {w}"
            for u in W:
                uu = mats[u]
                conj = u * w * u.inverse()
                lhs = uu @ mA @ mats[u.inverse()]
                if not (lhs == scaled[conj][1]).all():
                    return False, f"u A_w u^-1 != A_(uwu^-1) for u={u}, w={w}"
            checked += 1
    return True, f"{checked} Weyl elements"


def weyl_order_is_two(mat) -> bool:
    n = mat.shape[0]
    return (mat @ mat == np.eye(n, dtype=np.int64)).all() and not (mat == np.eye(n, dtype=np.int64)).all()


def criterion_4():
    from .newton import proj_onto_wall

    count = 0
    for tag in "ABCG":
        R = build_root_datum(tag, 2)
        for i in (1, 2):
            for nu, kappa in rank_one_targets(R, i, 4):
                inv = invariants_of(R, nu, kappa)
                if inv.integral:
                    continue
                if inv.std_rep is None or not check_standard_rep(R, inv.std_rep.element, inv):
                    return False, f"{tag}2 i={i}: nu={nu} fails the three conditions"
                count += 1
            # brute force: which classes carry a non-integral Newton point with parabolic {i}
            nonint = {}
            for lam in product(range(-10, 11), repeat=2):
                kappa = kottwitz_class(R, lam)
                nu = proj_onto_wall(R, i, lam)
                nonint.setdefault(kappa, False)
                if any(c <= 0 for k, c in enumerate(nu) if k != i - 1) or max(nu) > 4:
                    continue
                if not invariants_of(R, nu, kappa).integral:
                    nonint[kappa] = True
            exceptional = {k for k, v in nonint.items() if not v}
            if any(integral_exception(R, i, k) != (k in exceptional) for k in nonint):
                return False, f"{tag}2 i={i}: integral_exception disagrees with brute force"
            if bool(exceptional) != ((tag, i) in (("B", 1), ("C", 2))):
                return False, f"{tag}2 i={i}: integral-only classes {sorted(map(str, exceptional))}"
    return True, f"{count} standard representatives checked; exception only for B2 i=1 and C2 i=2"


def criterion_5():
    A2 = build_root_datum("A", 2)
    rep = StandardRep((1, 1), A2.s(1))
    brute = brute_force_class(A2, rep.element, 12, 3)
    predicted = conjugacy_class_window(A2, rep, 3)
    if brute != predicted:
        return False, f"brute force {len(brute)} members vs prediction {len(predicted)}"
    for z in sorted(predicted, key=str):
        inverse_problem(A2, rep, z)
    return True, f"{len(predicted)} class members, each with a conjugator"


def criterion_6():
    A2 = build_root_datum("A", 2)
    n = 0
    for lam in _box_lams(A2, 5):
        for i in (1, 2):
            if lam[i - 1] % 2 == 0:
                continue
            state = first_target_certificate(fold_first_target(build_base_gallery(A2, lam, i)))
            cert = first_certificate(state)
            if not verify_certificate(cert):
                return False, f"oracle disagrees for lambda={lam}, i={i}"
            n += 1
    return n > 0, f"{n} first-target certificates replayed by enumeration"


def criterion_7():
    A2 = build_root_datum("A", 2)
    state = first_target_certificate(fold_first_target(build_base_gallery(A2, (3, 3), 1)))
    k_root = state.primed[1]
    M = state.m_prime()[0]
    w0 = spherical(A2, A2.w0)
    sigma = act_left(w0, state.gamma_rho)
    w0z = multiply(w0, state.target)
    cor = A2.coroot_coords[k_root - 1]
    keep = state.gamma_rho.folds[: len(A2.w0) - 2]
    applied = 0
    while True:
        nxt = root_operator_f(sigma, k_root)
        if nxt is None:
            break
        sigma = nxt
        applied += 1
        if applied <= M:
            shift = translation(A2, tuple(-applied * c for c in cor))
            if sigma.end != multiply(shift, w0z):
                return False, f"end alcove after {applied} steps is not the translate of w0 z"
            if not set(keep) <= set(sigma.folds):
                return False, f"first folds changed after {applied} steps"
        if applied > M + 5:
            break
    return applied == M + 1, f"M2'={M}, applied {applied} times"


def criterion_8():
    A2 = build_root_datum("A", 2)
    counts = {"lower": 0, "repair": 0}
    for lam in _box_lams(A2, 5):
        for i in (1, 2):
            state = first_target_certificate(fold_first_target(build_base_gallery(A2, lam, i))) \
                if lam[i - 1] % 2 else fold_first_target(build_base_gallery(A2, lam, i))
            for nu in lower_targets(A2, lam, i):
                try:
                    cert = lower_target_certificate(state, nu)
                except ConstructionGap as exc:
                    return False, f"lambda={lam}, i={i}, nu'={nu}: {exc}"
                if (cert.branch == "lower") != (cert.d >= 1):
                    return False, "branch does not match the sign of d_i'"
                if cert.branch == "repair":
                    i1 = state.i1
                    zeta_p = list(state.zeta)
                    for c, j in zip(cert.c, state.order[1:]):
                        zeta_p = [a + c * b for a, b in zip(zeta_p, A2.coroot_coords[j - 1])]
                    cor1 = A2.coroot_coords[i1 - 1]
                    zeta_pp = tuple(int(a + (-2 * cert.d + 1) * b) for a, b in zip(zeta_p, cor1))
                    if cert.gallery.end != ExtAffine(zeta_pp, A2.s(i1)):
                        return False, f"zeta'' formula fails for lambda={lam}, nu'={nu}"
                    j = state.marked
                    H = Hyperplane(A2.simple_root(i1), -2 * cert.d + 2)
                    if cert.gallery.mask[j] != 1 or cert.gallery.panels[j] != H:
                        return False, f"repair fold is not in {H} for lambda={lam}, nu'={nu}"
                if not verify_certificate(cert):
                    return False, f"oracle disagrees for lambda={lam}, i={i}, nu'={nu}"
                counts[cert.branch] += 1
    total = counts["lower"] + counts["repair"]
    return total > 0, f"{counts['lower']} d'>=1 and {counts['repair']} d'<=0 certificates"


def _top(R, lam, i):
    from .newton import proj_onto_wall

    return proj_onto_wall(R, i, [a - 2 for a in lam])


def criterion_9():
    A2 = build_root_datum("A", 2)
    n = 0
    for lam in product(range(5), repeat=2):
        x = x0_element(A2, lam)
        if not in_shrunken_dominant(A2, x):
            continue
        top = (lam[0] - 2, lam[1] - 2)
        for mu in product(range(5), repeat=2):
            if not dominance_leq(A2, mu, top) or kottwitz_class(A2, mu) != kottwitz_class(A2, lam):
                continue
            window = box_window(A2, max(max(lam) + 2, 4))
            if ExtAffine((0, 0), A2.w0) not in window:
                return False, "w0 missing from the window"
            got = dimension_lb(A2, x, translation(A2, mu), window)
            want = sum(a - b for a, b in zip(lam, mu))
            if got != want:
                return False, f"lambda={lam}, mu={mu}: bound {got}, expected {want}"
            n += 1
    return n > 0, f"{n} (lambda, mu) pairs"


def criterion_10():
    from .eaw import parse_element
    from .gallery import gallery_from_json

    g = gallery_from_json(FIGURE_GALLERY)
    R = g.datum
    spec = ChimneySpec.make(FIGURE_GALLERY["chimney"]["parabolic"],
                            parse_element(R, FIGURE_GALLERY["chimney"]["y"]))
    st = fold_stats(g, Orientation(R, spec))
    ok = (st.p, st.f, st.dim) == (9, 2, 11) and st.negative_folds == 0
    return ok, f"(p, f, dim) = ({st.p}, {st.f}, {st.dim})"


CRITERIA = [
    (1, "C2 Newton and Kottwitz invariants", criterion_1),
    (2, "SL4 fills-out obstruction", criterion_2),
    (3, "averaging-operator identities", criterion_3),
    (4, "rank-1 standard representatives", criterion_4),
    (5, "fills-out equality at desk scale", criterion_5),
    (6, "first-target pipeline vs oracle", criterion_6),
    (7, "root-operator counts", criterion_7),
    (8, "remaining-targets totality", criterion_8),
    (9, "translation-case dimension", criterion_9),
    (10, "figure gallery dimension", criterion_10),
]


def run_all(selected=None):
    """Yield (number, name, passed, detail, seconds) for each criterion."""
    for num, name, fn in CRITERIA:
        if selected and num not in selected:
            continue
        t = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure with its message
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        yield num, name, ok, detail, time.perf_counter() - t
