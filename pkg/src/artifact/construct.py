"""
Explicit folded galleries for x0 = t^lam w0 with lam in the shrunken dominant
chamber and a rank-1 non-integral Newton point.

The pipeline is

1. ``build_base_gallery``: a minimal gallery a -> x0 assembled from five
   segments, the second one being the opposite gallery tau' at rho_check;
2. ``fold_first_target``: fold the first l(w0) - 1 crossings of tau';
3. ``first_target_certificate``: the conjugator y = t^mu w0 s_i;
4. ``apply_root_ops`` / ``solve_lower_target``: lowering operators on
   w0 gamma_rho to reach the other Newton points nu';
5. ``build_gamma_pp``: the repair used when d_i' <= 0.

Every stage checks its end alcove against the closed group-theoretic formula.

>>> from artifact.rootdata import build_root_datum
>>> R = build_root_datum("A", 2)
>>> st = first_target_certificate(fold_first_target(build_base_gallery(R, (3, 3), 1)))
>>> str(st.target), str(st.y), st.d
('t^[-3,3]*s2', 't^[-2,1]*s1s2', 1)
"""

from __future__ import annotations

__all__ = [
    "PipelineState", "Certificate", "ConstructionGap", "build_base_gallery", "fold_first_target",
    "first_target_certificate", "first_certificate", "apply_root_ops", "solve_lower_target",
    "build_gamma_pp", "lower_target_certificate", "certificate_to_json",
    "certificate_from_json", "x0_element", "lower_targets",
]

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .eaw import (
    ExtAffine, Hyperplane, affine_letter_between, conjugate, ext, format_element,
    in_sheet, in_shrunken_dominant, length, multiply, parse_element, reduced_affine_word,
    sheet, spherical,
)
from .gallery import (
    CROSS, FOLD, ChimneySpec, Gallery, Orientation, act_left, fold_stats,
    gallery_from_json, gallery_to_json, is_positively_folded, root_operator_f,
)
from .newton import invariants_of, proj_onto_wall
from .rootdata import (
    Coweight, RootDatum, build_root_datum, coroot_coords, cw, i_one, in_weyl_orbit_hull,
    is_integral, kottwitz_class, pairing, reduced_words, tailored_w0_word, weyl_act,
    weyl_element,
)


@dataclass(frozen=True)
class PipelineState:
    datum: RootDatum = field(repr=False)
    lam: tuple[int, ...]
    i: int
    i1: int
    w0_word: tuple[int, ...]
    gamma: Gallery
    segments: tuple[int, ...]  # start position of each of the five segments
    marked: int  # position of p_i(gamma, lam - rho_check)
    zeta: Coweight | None = None
    gamma_rho: Gallery | None = None
    target: ExtAffine | None = None
    eta: tuple[int, ...] | None = None
    d: int | None = None
    y: ExtAffine | None = None
    chimney: ChimneySpec | None = None

    @property
    def x0(self) -> ExtAffine:
        return x0_element(self.datum, self.lam)

    @property
    def order(self) -> tuple[int, ...]:
        """(i_1, ..., i_n): the Coxeter tail of the w0 word, read backwards."""
        n = self.datum.rank
        return tuple(reversed(self.w0_word[-n:]))

    @property
    def primed(self) -> tuple[int, ...]:
        """(i_1', ..., i_n') with alpha'_{i_j} = -w0 alpha_{i_j}."""
        return tuple(i_one(self.datum, j) for j in self.order)

    def m_prime(self) -> tuple[int, ...]:
        """M_j' = <alpha'_{i_j}, w0 zeta> for j = 2..n."""
        w0z = weyl_act(self.datum.w0, self.zeta)
        return tuple(int(pairing(self.datum.simple_root(k), w0z)) for k in self.primed[1:])


@dataclass(frozen=True)
class Certificate:
    """A positively folded gallery of type x0 ending at b_nu'^y."""
    lam: tuple[int, ...]
    i: int
    nu: Coweight
    branch: str  # "first", "lower" or "repair"
    c: tuple[int, ...]
    d: int
    y: ExtAffine
    gallery: Gallery
    chimney: ChimneySpec

    @property
    def stats(self):
        return fold_stats(self.gallery, Orientation(self.gallery.datum, self.chimney))


class ConstructionGap(RuntimeError):
    """The explicit construction does not apply to this instance."""


def x0_element(R: RootDatum, lam: Sequence[int]) -> ExtAffine:
    return ExtAffine(tuple(int(c) for c in lam), R.w0)


def _rho(R: RootDatum) -> tuple[int, ...]:
    return tuple(int(c) for c in R.rho_check)


def _minimal_letters(R: RootDatum, start: ExtAffine, end: ExtAffine) -> tuple[int, ...]:
    return reduced_affine_word(R, end, start)


def _path_letters(R: RootDatum, alcoves: Sequence[ExtAffine]) -> tuple[int, ...]:
    return tuple(affine_letter_between(R, a, b) for a, b in zip(alcoves, alcoves[1:]))


def build_base_gallery(R: RootDatum, lam: Sequence[int], i: int) -> PipelineState:
    """The minimal gallery a -> x0 through the opposite gallery tau' at rho_check."""
    if R.rank < 2:
        raise ValueError("the construction needs rank at least 2")
    if not 1 <= i <= R.rank:
        raise ValueError(f"wall index {i} out of range")
    lam = tuple(int(c) for c in lam)
    x0 = x0_element(R, lam)
    if not in_shrunken_dominant(R, x0):
        raise ValueError(f"the alcove of {format_element(x0)} is not in the shrunken dominant chamber")
    rho = _rho(R)
    if any(pairing(R.simple_root(j), lam) - 2 * pairing(R.simple_root(j), rho) < 1 for j in range(1, R.rank + 1)):
        # otherwise segment (3) doubles back through the star of rho_check
        raise ValueError("lam - 2 rho_check must be regular dominant")
    cls = sheet(R, x0)
    here = lambda x: in_sheet(R, x, cls)  # noqa: E731
    w0 = R.w0
    lr = tuple(a - b for a, b in zip(lam, rho))
    word = tailored_w0_word(R, i)
    ell = len(word)

    start = here(spherical(R, ()))
    seg = []
    # (1) a -> w0-position at rho_check
    a1 = here(ext(R, rho, w0))
    seg.append(_minimal_letters(R, start, a1))
    # (2) tau' = t^rho tau; tau passes through s_{k1}..s_{kj} w0 a
    tau = [here(ext(R, rho, _prefix(R, word, j) * w0)) for j in range(ell + 1)]
    seg.append(_path_letters(R, tau))
    # (3) identity position at rho_check -> w0-position at lam - rho_check
    a3 = here(ext(R, lr, w0))
    seg.append(_minimal_letters(R, tau[-1], a3))
    # (4) w0 -> identity at lam - rho_check, ending across the alpha_i-wall
    b = min(wd for wd in reduced_words(R, w0) if wd[0] == i)
    path = [here(ext(R, lr, _prefix(R, b, k))) for k in range(ell, -1, -1)]
    seg.append(_path_letters(R, path))
    # (5) identity at lam - rho_check -> x0
    seg.append(_minimal_letters(R, path[-1], x0))

    types = tuple(j for s in seg for j in s)
    offsets, pos = [], 0
    for s in seg:
        offsets.append(pos)
        pos += len(s)
    gamma = Gallery(R, start, types, (CROSS,) * len(types))
    if gamma.end != x0:
        raise AssertionError("base gallery does not end at x0")
    if len(types) != length(R, x0):
        raise AssertionError("base gallery is not minimal")
    marked = offsets[4] - 1
    H = gamma.panels[marked]
    if H != Hyperplane.make(R.simple_root(i), pairing(R.simple_root(i), lr)):
        raise AssertionError("segment (4) does not end across the alpha_i-wall through lam - rho_check")
    return PipelineState(R, lam, i, i_one(R, i), word, gamma, tuple(offsets), marked)


def _prefix(R: RootDatum, word: Sequence[int], j: int):
    return weyl_element(R, word[:j])


def fold_first_target(state: PipelineState) -> PipelineState:
    """Fold the first l(w0) - 1 crossings of tau'; the end alcove is z = t^zeta s_{i1}."""
    R = state.datum
    ell = len(state.w0_word)
    first = state.segments[1]
    mask = list(state.gamma.mask)
    for j in range(first, first + ell - 1):
        mask[j] = FOLD
    g = state.gamma.with_mask(mask)
    rho = _rho(R)
    for k, j in enumerate(range(first, first + ell - 1)):
        if g.panels[j] != Hyperplane(R.simple_root(state.w0_word[k]), 1):
            raise AssertionError("fold does not lie in H_{alpha_k, 1}")
    lr = tuple(a - b for a, b in zip(state.lam, rho))
    w0si = R.w0 * R.s(state.i)
    zeta = tuple(a + b for a, b in zip(rho, weyl_act(w0si, lr)))
    z = ExtAffine(tuple(int(c) for c in zeta), R.s(state.i1))
    if g.end != z or g.start != state.gamma.start:
        raise AssertionError("folded gallery does not end at t^zeta s_{i1}")
    return replace(state, zeta=zeta, gamma_rho=g, target=z)


def _top_newton(R: RootDatum, lam: Sequence[int], i: int) -> Coweight:
    rho = _rho(R)
    return proj_onto_wall(R, i, [a - 2 * b for a, b in zip(lam, rho)])


def _rank_one_rep(R: RootDatum, nu: Coweight, lam: Sequence[int], i: int):
    inv = invariants_of(R, nu, kottwitz_class(R, lam))
    if inv.parabolic != frozenset({i}):
        raise ValueError(f"Newton point {_fmt(nu)} does not have parabolic P_{i}")
    if inv.integral:
        raise ValueError(f"Newton point {_fmt(nu)} is integral for this Kottwitz class")
    if inv.std_rep is None:
        raise ValueError(f"no sigma-conjugacy class has Newton point {_fmt(nu)} on this sheet")
    return inv.std_rep


def _d_coefficient(R: RootDatum, i: int, zeta: Sequence, eta: Sequence[int]) -> int:
    """The integer d with s_i w0 zeta - eta = d alpha_i^vee."""
    v = weyl_act(R.s(i) * R.w0, zeta)
    diff = [a - b for a, b in zip(v, eta)]
    cor = R.coroot_coords[i - 1]
    d = Fraction(diff[i - 1], cor[i - 1])
    if d.denominator != 1 or any(a != d * c for a, c in zip(diff, cor)):
        raise AssertionError("s_i w0 zeta - eta is not an integer multiple of alpha_i^vee")
    return int(d)


def _conjugator(R: RootDatum, i: int, d: int, eta: Sequence[int]) -> ExtAffine:
    w0si = R.w0 * R.s(i)
    mu = tuple(d * int(c) for c in weyl_act(w0si, eta))
    return ExtAffine(mu, w0si)


def first_target_certificate(state: PipelineState) -> PipelineState:
    """y = t^{d_i w0 s_i eta} w0 s_i with b_nu^y = z, and the positivity check."""
    R, i, lam = state.datum, state.i, state.lam
    if state.gamma_rho is None:
        state = fold_first_target(state)
    a = pairing(R.simple_root(i), lam)
    if a % 2 == 0:
        raise ValueError(f"<alpha_{i}, lam> = {a} is even, so proj_{i}(lam - 2 rho_check) is integral")
    nu = _top_newton(R, lam, i)
    rep = _rank_one_rep(R, nu, lam, i)
    w0z = weyl_act(R.w0, state.zeta)
    if proj_onto_wall(R, i, w0z) != nu:
        raise AssertionError("proj_i(w0 zeta) differs from proj_i(lam - 2 rho_check)")
    d = _d_coefficient(R, i, state.zeta, rep.eta)
    y = _conjugator(R, i, d, rep.eta)
    if conjugate(rep.element, y) != state.target:
        raise AssertionError("z is not b_nu^y")
    chim = ChimneySpec.make({i}, y)
    if not is_positively_folded(state.gamma_rho, Orientation(R, chim)):
        raise AssertionError("gamma_rho is not positively folded for the (P_i, y)-chimney")
    return replace(state, eta=rep.eta, d=d, y=y, chimney=chim)


def apply_root_ops(state: PipelineState, cs: Sequence[int]) -> tuple[Gallery, ExtAffine]:
    """gamma_rho(c_2, ..., c_n) and its end alcove t^{zeta'} s_{i1}."""
    R = state.datum
    cs = tuple(int(c) for c in cs)
    if len(cs) != R.rank - 1:
        raise ValueError(f"expected {R.rank - 1} integers c_2..c_n")
    bounds = state.m_prime()
    for j, (c, mj) in enumerate(zip(cs, bounds), start=2):
        if not 0 <= c <= mj:
            raise ValueError(f"c_{j} = {c} lies outside [0, M_{j}'] = [0, {mj}]")
    w0 = spherical(R, R.w0)
    sigma = act_left(w0, state.gamma_rho)
    for c, k in zip(cs, state.primed[1:]):
        for _ in range(c):
            nxt = root_operator_f(sigma, k)
            if nxt is None:
                raise AssertionError("root operator undefined inside the guaranteed range")
            sigma = nxt
    if sigma.start != multiply(w0, state.gamma_rho.start):
        raise AssertionError("root operators moved the first alcove")
    g = act_left(w0, sigma)
    zeta_p = list(state.zeta)
    for c, j in zip(cs, state.order[1:]):
        zeta_p = [a + c * b for a, b in zip(zeta_p, R.coroot_coords[j - 1])]
    z_p = ExtAffine(tuple(int(a) for a in zeta_p), R.s(state.i1))
    if g.end != z_p:
        raise AssertionError("gamma_rho(c) does not end at t^{zeta'} s_{i1}")
    return g, z_p


def solve_lower_target(state: PipelineState, nu_prime: Sequence) -> tuple[tuple[int, ...], int, ExtAffine]:
    """The vector (c_2..c_n), the integer d_i' and the conjugator y' for nu'."""
    R, i, lam = state.datum, state.i, state.lam
    nu_prime = cw(nu_prime)
    rep = _rank_one_rep(R, nu_prime, lam, i)
    rho = _rho(R)
    xi = tuple(a - 2 * b for a, b in zip(lam, rho))
    if not in_weyl_orbit_hull(R, nu_prime, xi):
        raise ValueError(f"{_fmt(nu_prime)} is not in the convex hull of W(lam - 2 rho_check)")
    coeffs = coroot_coords(R, [a - b for a, b in zip(xi, rep.eta)])
    ds = [coeffs[k - 1] for k in state.primed]
    for j, dj in enumerate(ds, start=1):
        if dj.denominator != 1 or dj < 0:
            raise ConstructionGap(f"d_{j} = {dj} is not a non-negative integer")
    # d_j <= M_j can fail inside the hull; the root operators only need d_j <= M_j'
    cs = tuple(int(dj) for dj in ds[1:])
    for j, (c, mj) in enumerate(zip(cs, state.m_prime()), start=2):
        if c > mj:
            raise ConstructionGap(f"c_{j} = {c} exceeds M_{j}' = {mj}")
    _, z_p = apply_root_ops(state, cs)
    zeta_p = z_p.lam
    if proj_onto_wall(R, i, weyl_act(R.w0, zeta_p)) != nu_prime:
        raise AssertionError("proj_i(w0 zeta') differs from nu'")
    d = _d_coefficient(R, i, zeta_p, rep.eta)
    y = _conjugator(R, i, d, rep.eta)
    if conjugate(rep.element, y) != z_p:
        raise AssertionError("z' is not b_nu'^y'")
    return cs, d, y


def build_gamma_pp(state: PipelineState, cs: Sequence[int], d: int, eta: Sequence[int]):
    """Unfold the last H_{alpha_{i1},1} fold and refold at H_{alpha_{i1},-2d+2}.

    Returns (gamma'', z'', y'').
    """
    R, i1 = state.datum, state.i1
    if d >= 1:
        raise ValueError(f"d_i' = {d} >= 1: the gamma_rho(c) certificate applies directly")
    g, z_p = apply_root_ops(state, cs)
    a1 = R.simple_root(i1)
    hits = [j for j in g.folds if g.panels[j] == Hyperplane(a1, 1)]
    if not hits:
        raise AssertionError("gamma_rho(c) has no fold in H_{alpha_{i1}, 1}")
    mask = list(g.mask)
    mask[hits[-1]] = CROSS
    plus = g.with_mask(mask)
    j = state.marked
    if plus.mask[j] != CROSS or plus.panels[j] != Hyperplane(a1, -2 * d + 2):
        # happens when a fold relocated by the root operators follows the marked panel
        raise ConstructionGap("the reflected marked panel is not in H_{alpha_{i1}, -2d+2}")
    mask[j] = FOLD
    gpp = plus.with_mask(mask)
    zeta_pp = tuple(a + (-2 * d + 1) * b for a, b in zip(z_p.lam, R.coroot_coords[i1 - 1]))
    z_pp = ExtAffine(zeta_pp, R.s(i1))
    if gpp.end != z_pp:
        raise AssertionError("gamma'' does not end at t^{zeta''} s_{i1}")
    y_pp = _conjugator(R, state.i, -d + 1, eta)
    return gpp, z_pp, y_pp


def lower_target_certificate(state: PipelineState, nu_prime: Sequence) -> Certificate:
    """Certificate for nu' through the d_i' >= 1 branch or the repair branch."""
    R, i = state.datum, state.i
    nu_prime = cw(nu_prime)
    rep = _rank_one_rep(R, nu_prime, state.lam, i)
    cs, d, y = solve_lower_target(state, nu_prime)
    if d >= 1:
        g, _ = apply_root_ops(state, cs)
        branch = "lower"
    else:
        g, _, y = build_gamma_pp(state, cs, d, rep.eta)
        branch = "repair"
    chim = ChimneySpec.make({i}, y)
    cert = Certificate(state.lam, i, nu_prime, branch, cs, d, y, g, chim)
    _check(cert, rep.element)
    return cert


def first_certificate(state: PipelineState) -> Certificate:
    if state.y is None:
        state = first_target_certificate(state)
    R = state.datum
    nu = _top_newton(R, state.lam, state.i)
    cert = Certificate(
        state.lam, state.i, nu, "first", (0,) * (R.rank - 1), state.d, state.y,
        state.gamma_rho, state.chimney,
    )
    _check(cert, ExtAffine(state.eta, R.s(state.i)))
    return cert


def _check(cert: Certificate, b: ExtAffine) -> None:
    R = cert.gallery.datum
    if cert.gallery.end != conjugate(b, cert.y):
        raise AssertionError("certificate gallery does not end at b^y")
    if cert.gallery.type_vec != build_base_gallery(R, cert.lam, cert.i).gamma.type_vec:
        raise AssertionError("certificate gallery does not have type x0")
    if not is_positively_folded(cert.gallery, Orientation(R, cert.chimney)):
        raise AssertionError("certificate gallery is not positively folded")


def lower_targets(R: RootDatum, lam: Sequence[int], i: int):
    """Non-integral Newton points with parabolic P_i in Conv(W(lam - 2 rho_check)) on lam's sheet."""
    from .newton import rank_one_targets

    rho = _rho(R)
    xi = tuple(a - 2 * b for a, b in zip(lam, rho))
    kappa = kottwitz_class(R, lam)
    radius = max(abs(c) for c in xi) + 1
    out = []
    for nu, cls in rank_one_targets(R, i, radius, kappa):
        if in_weyl_orbit_hull(R, nu, xi) and not (is_integral(nu) and kottwitz_class(R, nu) == kappa):
            out.append(nu)
    return sorted(out)


def _fmt(v) -> str:
    return "(" + ",".join(str(c) for c in v) + ")"


# ---------------------------------------------------------------------------
# certificate records

def certificate_to_json(cert: Certificate) -> dict:
    R = cert.gallery.datum
    st = cert.stats
    return {
        "root_system": f"{R.type_tag}{R.rank}",
        "x0": format_element(x0_element(R, cert.lam)),
        "i": cert.i,
        "nu_prime": [str(c) for c in cert.nu],
        "branch": cert.branch,
        "c": list(cert.c),
        "d": cert.d,
        "y": format_element(cert.y),
        "chimney": sorted(cert.chimney.parabolic),
        "gallery": gallery_to_json(cert.gallery),
        "stats": {"p": st.p, "f": st.f, "dim": st.dim},
    }


def certificate_from_json(data: dict | str) -> Certificate:
    if isinstance(data, str):
        data = json.loads(data)
    tag = data["root_system"]
    R = build_root_datum(tag[0], int(tag[1:]))
    x0 = parse_element(R, data["x0"])
    y = parse_element(R, data["y"])
    return Certificate(
        x0.lam, int(data["i"]), tuple(Fraction(c) for c in data["nu_prime"]), data["branch"],
        tuple(data["c"]), int(data["d"]), y, gallery_from_json(data["gallery"]),
        ChimneySpec.make(data["chimney"], y),
    )
