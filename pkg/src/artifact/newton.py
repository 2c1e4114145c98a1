"""
Newton and Kottwitz invariants, averaging projections and standard
representatives.

For ``x = t^lam w`` the Newton point is ``(A_w lam)^+`` with
``A_w = (1/m)(I + w + ... + w^{m-1})``; together with the Kottwitz class of
``lam`` it determines the sigma-conjugacy class of x.

>>> from artifact.rootdata import build_root_datum
>>> from artifact.eaw import parse_element
>>> C2 = build_root_datum("C", 2)
>>> inv = classify(C2, parse_element(C2, "t^[1,2]*s1"))
>>> [str(c) for c in inv.nu], sorted(inv.parabolic), inv.integral
(['0', '3'], [1], False)
"""

from __future__ import annotations

__all__ = [
    "AveragingOp", "NewtonInvariants", "StandardRep", "weyl_order",
    "averaging_op", "averaging_apply", "newton_point", "proj_onto_wall",
    "invariant_form", "classify", "invariants_of", "standard_rep",
    "check_standard_rep", "levi_length", "levi_dominantize", "rank_one_targets",
]

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .eaw import ExtAffine, ext, length_zero_element
from .rootdata import (
    Coweight, LatticeClass, RootDatum, WeylElement, cw, dominantize, is_integral,
    kottwitz_class, pairing, reflect, root_act, weyl_act,
)

Matrix = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class AveragingOp:
    w: WeylElement
    order: int
    matrix: Matrix  # acts on coweight coordinates

    def __call__(self, v: Sequence) -> Coweight:
        return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in self.matrix)


def weyl_order(w: WeylElement) -> int:
    m, x = 1, w
    while not x.is_identity():
        x = x * w
        m += 1
    return m


def averaging_op(w: WeylElement) -> AveragingOp:
    m = weyl_order(w)
    n = len(w.mat)
    acc = [[Fraction(0)] * n for _ in range(n)]
    power = tuple(tuple(int(r == c) for c in range(n)) for r in range(n))
    for _ in range(m):
        for r in range(n):
            for c in range(n):
                acc[r][c] += power[r][c]
        power = tuple(
            tuple(sum(power[r][k] * w.mat[k][c] for k in range(n)) for c in range(n)) for r in range(n)
        )
    return AveragingOp(w, m, tuple(tuple(a / m for a in row) for row in acc))


def averaging_apply(w: WeylElement, lam: Sequence) -> Coweight:
    """(1/m) sum_k w^k(lam)."""
    return averaging_op(w)(cw(lam))


def newton_point(R: RootDatum, x: ExtAffine) -> Coweight:
    return dominantize(R, averaging_apply(x.w, x.lam))[0]


def proj_onto_wall(R: RootDatum, i: int, v: Sequence) -> Coweight:
    """Orthogonal projection onto H_{alpha_i}: v - <alpha_i, v>/2 alpha_i^vee."""
    v = cw(v)
    half = v[i - 1] / 2
    return tuple(a - half * c for a, c in zip(v, R.coroot_coords[i - 1]))


def invariant_form(R: RootDatum, v: Sequence, u: Sequence) -> Fraction:
    """A W-invariant inner product on coweights."""
    return sum(pairing(b, v) * pairing(b, u) for b in R.pos_roots)


# ---------------------------------------------------------------------------
# invariants and standard representatives

@dataclass(frozen=True)
class StandardRep:
    eta: tuple[int, ...]
    v: WeylElement

    @property
    def element(self) -> ExtAffine:
        return ExtAffine(self.eta, self.v)


@dataclass(frozen=True)
class NewtonInvariants:
    nu: Coweight
    kappa: LatticeClass
    parabolic: frozenset[int]
    integral: bool
    std_rep: StandardRep | None = None


def invariants_of(R: RootDatum, nu: Sequence, kappa: LatticeClass) -> NewtonInvariants:
    """Invariants of the class with Newton point nu and Kottwitz point kappa."""
    nu = cw(nu)
    if any(c < 0 for c in nu):
        raise ValueError("Newton point must be dominant")
    par = frozenset(i + 1 for i, c in enumerate(nu) if c == 0)
    integral = is_integral(nu) and kottwitz_class(R, nu) == kappa
    inv = NewtonInvariants(nu, kappa, par, integral)
    try:
        rep = standard_rep(R, inv)
    except ValueError:
        rep = None
    return NewtonInvariants(nu, kappa, par, integral, rep)


def classify(R: RootDatum, x: ExtAffine) -> NewtonInvariants:
    return invariants_of(R, newton_point(R, x), kottwitz_class(R, x.lam))


def standard_rep(R: RootDatum, inv: NewtonInvariants) -> StandardRep:
    """The standard representative b_nu for parabolics B, P_i and G."""
    nu, par = inv.nu, inv.parabolic
    if len(par) == R.rank:
        if any(nu):
            raise ValueError("a full parabolic forces nu = 0")
        om = length_zero_element(R, inv.kappa)
        return StandardRep(om.lam, om.w)
    if inv.integral and len(par) <= 1:
        return StandardRep(tuple(int(c) for c in nu), R.identity)
    if not par:
        raise ValueError("regular Newton point with mismatched Kottwitz class")
    if len(par) > 1:
        raise ValueError(
            f"standard representatives for parabolics of rank {len(par)} are not supported"
        )
    (i,) = par
    eta = tuple(a + Fraction(c, 2) for a, c in zip(nu, R.coroot_coords[i - 1]))
    if not is_integral(eta) or kottwitz_class(R, eta) != inv.kappa:
        raise ValueError("no sigma-conjugacy class has these Newton and Kottwitz points")
    return StandardRep(tuple(int(c) for c in eta), R.s(i))


def levi_length(R: RootDatum, x: ExtAffine, parabolic) -> int:
    """Iwahori-Matsumoto length restricted to the positive roots of the Levi."""
    winv = x.w.inverse()
    total = 0
    for alpha in R.pos_roots:
        if any(alpha[k] for k in range(R.rank) if k + 1 not in parabolic):
            continue
        a = pairing(alpha, x.lam)
        total += abs(a) if all(c >= 0 for c in root_act(winv, alpha)) else abs(a - 1)
    return total


def levi_dominantize(R: RootDatum, v: Sequence, parabolic) -> Coweight:
    """Make v dominant for the simple roots of the Levi only."""
    v = cw(v)
    while True:
        for i in sorted(parabolic):
            if v[i - 1] < 0:
                v = reflect(R, i, v)
                break
        else:
            return v


def _in_levi_weyl(R: RootDatum, w: WeylElement, parabolic) -> bool:
    # w lies in W_M iff it fixes every fundamental coweight outside the Levi
    for j in range(1, R.rank + 1):
        if j in parabolic:
            continue
        e = R.fundamental_coweight(j)
        if weyl_act(w, e) != e:
            return False
    return True


def check_standard_rep(R: RootDatum, b: ExtAffine, inv: NewtonInvariants) -> bool:
    """The three conditions characterising the standard representative."""
    par = inv.parabolic
    if kottwitz_class(R, b.lam) != inv.kappa:
        return False
    if not _in_levi_weyl(R, b.w, par) or levi_length(R, b, par) != 0:
        return False
    nu_m = levi_dominantize(R, averaging_apply(b.w, b.lam), par)
    return nu_m == tuple(inv.nu)


def rank_one_targets(R: RootDatum, i: int, radius: int, kappa: LatticeClass | None = None):
    """Non-integral Newton points with parabolic {i} and sup-norm at most radius.

    Yields (nu, kappa) pairs; each arises as proj_i(eta) with <alpha_i, eta> = 1.
    """
    from itertools import product

    seen = set()
    rng = range(-2 * radius - 2, 2 * radius + 3)
    for eta in product(rng, repeat=R.rank):
        if eta[i - 1] != 1:
            continue
        nu = proj_onto_wall(R, i, eta)
        if any(c <= 0 for k, c in enumerate(nu) if k != i - 1):
            continue
        if max(abs(c) for c in nu) > radius:
            continue
        cls = kottwitz_class(R, eta)
        if kappa is not None and cls != kappa:
            continue
        if (nu, cls) not in seen:
            seen.add((nu, cls))
            yield nu, cls
