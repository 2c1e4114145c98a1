"""
Transverse subspaces, the fills-out condition and the inverse conjugation
problem for rank-1 standard representatives.

Lattice questions are solved in simple-coroot coordinates, where R^vee is
Z^n and every Weyl element acts by an integer matrix.
"""

from __future__ import annotations

__all__ = [
    "TransverseSpace", "FillsOutCertificate", "Congruence", "transverse_space",
    "fills_out", "integral_exception", "conjugacy_class_window", "class_member",
    "solve_conjugator", "inverse_problem", "brute_force_class",
]

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_decomp

from .eaw import ExtAffine, conjugate, ext, length
from .newton import StandardRep, averaging_apply, averaging_op, proj_onto_wall
from .rootdata import (
    Coweight, LatticeClass, RootDatum, WeylElement, cw, coroot_coords,
    kottwitz_class, pairing, weyl_act, weyl_group,
)


@dataclass(frozen=True)
class TransverseSpace:
    """base + span(directions): the points with the same A_v-image as base."""
    base: Coweight
    directions: tuple[tuple[int, ...], ...]  # integral coweights

    def contains(self, R: RootDatum, v: Sequence) -> bool:
        diff = tuple(Fraction(a) - b for a, b in zip(v, self.base))
        if not self.directions:
            return not any(diff)
        mat = Matrix([list(d) for d in self.directions]).T
        return mat.rank() == mat.row_join(Matrix(diff)).rank()


@dataclass(frozen=True)
class Congruence:
    """sum_l coeffs[l] * c_l = 0 (mod modulus) on generator coefficients."""
    coeffs: tuple[int, ...]
    modulus: int
    names: tuple[str, ...] = ()

    def holds(self, c: Sequence[int]) -> bool:
        return sum(a * b for a, b in zip(self.coeffs, c)) % self.modulus == 0

    def __str__(self) -> str:
        terms = []
        for k, a in enumerate(self.coeffs):
            if a:
                name = self.names[k] if self.names else f"c{k + 1}"
                terms.append(f"{'' if a == 1 else a}{name}")
        return " + ".join(terms) + f" = 0 (mod {self.modulus})"


@dataclass(frozen=True)
class FillsOutCertificate:
    holds: bool
    generators: tuple[tuple[int, ...], ...]  # Ker A_v cap R^vee, coroot coordinates
    witnesses: tuple[tuple[int, ...] | None, ...]  # (I - v) d = generator
    obstruction: tuple[Congruence, ...] = field(default=())

    def describe(self) -> str:
        if self.holds:
            return "Ker A_v cap R^vee lies in (I - v) R^vee"
        gens = ", ".join("(" + ",".join(map(str, g)) + ")" for g in self.generators)
        conds = "; ".join(str(c) for c in self.obstruction)
        return f"sum c_k g_k over g = {gens} lies in (I - v) R^vee iff {conds}"


def _coroot_action(R: RootDatum, w: WeylElement) -> Matrix:
    cart = Matrix(R.cartan)
    return cart.inv() * Matrix(w.mat) * cart


def _int_tuple(col) -> tuple[int, ...]:
    return tuple(int(x) for x in col)


def _kernel_lattice(mat: Matrix) -> list[tuple[int, ...]]:
    """A basis of {x in Z^n : mat x = 0}, in Hermite normal form."""
    n = mat.shape[1]
    d, _, v = smith_normal_decomp(mat, domain=ZZ)
    cols = [v[:, k] for k in range(n) if k >= min(d.shape) or d[k, k] == 0]
    if not cols:
        return []
    basis = Matrix.hstack(*cols)
    basis = hermite_normal_form(basis)
    return [_int_tuple(basis[:, k]) for k in range(basis.shape[1])]


def fills_out(R: RootDatum, v: WeylElement) -> FillsOutCertificate:
    """Decide Ker A_v cap R^vee within (I - v) R^vee, with witnesses or congruences."""
    n = R.rank
    vc = _coroot_action(R, v)
    m = averaging_op(v).order
    total = Matrix.zeros(n, n)
    power = Matrix.eye(n)
    for _ in range(m):
        total += power
        power = power * vc
    gens = _kernel_lattice(total)
    t = Matrix.eye(n) - vc
    d, u, vv = smith_normal_decomp(t, domain=ZZ)
    diag = [int(d[k, k]) for k in range(n)]
    witnesses = []
    for g in gens:
        ug = u * Matrix(g)
        y = []
        ok = True
        for k in range(n):
            if diag[k] == 0:
                ok = ok and ug[k] == 0
                y.append(0)
            elif ug[k] % diag[k]:
                ok = False
                y.append(0)
            else:
                y.append(ug[k] // diag[k])
        witnesses.append(_int_tuple(vv * Matrix(y)) if ok else None)
    holds = all(w is not None for w in witnesses)
    congr = []
    if not holds and gens:
        ugen = u * Matrix([list(g) for g in gens]).T
        # a generator equal to a simple coroot is named after it
        names = tuple(
            f"c{g.index(1) + 1}" if sorted(g) == [0] * (n - 1) + [1] else f"x{l + 1}"
            for l, g in enumerate(gens)
        )
        for k in range(n):
            if abs(diag[k]) > 1:
                mod = abs(diag[k])
                coeffs = tuple(int(ugen[k, l]) % mod for l in range(len(gens)))
                congr.append(Congruence(coeffs, mod, names))
    return FillsOutCertificate(holds, tuple(gens), tuple(witnesses), tuple(congr))


def integral_exception(R: RootDatum, i: int, kappa: LatticeClass | None = None) -> bool:
    """True when every Newton point with parabolic {i} in class kappa is integral.

    This happens exactly when <alpha_i, lam> is even for every lam in kappa + R^vee.
    """
    row = R.cartan[i - 1]  # <alpha_i, alpha_j^vee>
    if any(c % 2 for c in row):
        return False
    rep = kappa.representative if kappa is not None and kappa.representative else (0,) * R.rank
    return rep[i - 1] % 2 == 0


def transverse_space(R: RootDatum, rep: StandardRep) -> TransverseSpace:
    nu = averaging_apply(rep.v, rep.eta)
    cert = fills_out(R, rep.v)
    dirs = tuple(
        tuple(int(x) for x in Matrix(R.cartan) * Matrix(g)) for g in cert.generators
    )
    return TransverseSpace(nu, dirs)


def _rank_one_index(R: RootDatum, rep: StandardRep) -> int:
    for i in range(1, R.rank + 1):
        if rep.v == R.s(i):
            return i
    raise ValueError("conjugacy windows need a rank-1 non-integral standard representative")


def class_member(R: RootDatum, rep: StandardRep, z: ExtAffine) -> list[tuple[WeylElement, int]]:
    """All (u, d) with z = t^{u(eta + d alpha_i^vee)} u s_i u^{-1}."""
    i = _rank_one_index(R, rep)
    si = R.s(i)
    out = []
    cor = R.coroot_coords[i - 1]
    for u in weyl_group(R):
        if u * si * u.inverse() != z.w:
            continue
        diff = [a - b for a, b in zip(weyl_act(u.inverse(), z.lam), rep.eta)]
        d = Fraction(diff[i - 1], cor[i - 1])
        if d.denominator == 1 and all(a == d * c for a, c in zip(diff, cor)):
            out.append((u, int(d)))
    return out


def solve_conjugator(R: RootDatum, rep: StandardRep, z: ExtAffine) -> tuple[WeylElement, int]:
    sols = class_member(R, rep, z)
    if not sols:
        raise ValueError(
            "z is not of the form t^xi u s_i u^-1 with xi on the twisted transverse line"
        )
    return min(sols, key=lambda s: (abs(s[1]), len(s[0]), s[0].word, s[1]))


def inverse_problem(R: RootDatum, rep: StandardRep, z: ExtAffine) -> ExtAffine:
    """A conjugator y = t^{d u eta} u with b_nu^y = z."""
    u, d = solve_conjugator(R, rep, z)
    mu = tuple(d * int(c) for c in weyl_act(u, rep.eta))
    y = ext(R, mu, u)
    if conjugate(rep.element, y) != z:
        raise AssertionError("inverse problem produced a wrong conjugator")
    return y


def conjugacy_class_window(R: RootDatum, rep: StandardRep, radius: int) -> set[ExtAffine]:
    """Members of the class of b_nu whose translation part has sup-norm <= radius."""
    i = _rank_one_index(R, rep)
    cor = R.coroot_coords[i - 1]
    out = set()
    bound = 4 * radius + 4 + max(abs(c) for c in rep.eta)
    for u in weyl_group(R):
        conj = u * R.s(i) * u.inverse()
        for d in range(-bound, bound + 1):
            xi = weyl_act(u, tuple(a + d * c for a, c in zip(rep.eta, cor)))
            if max(abs(c) for c in xi) <= radius:
                out.add(ExtAffine(tuple(int(c) for c in xi), conj))
    return out


def brute_force_class(R: RootDatum, b: ExtAffine, max_length: int, radius: int) -> set[ExtAffine]:
    """Conjugates b^y over all y with length <= max_length, restricted to the window."""
    out = set()
    # lengths exceed max_length once some <alpha, mu> is large
    box = max_length + len(R.pos_roots) + 1
    for w in weyl_group(R):
        for mu in product(range(-box, box + 1), repeat=R.rank):
            y = ExtAffine(mu, w)
            if length(R, y) > max_length:
                continue
            z = conjugate(b, y)
            if max(abs(c) for c in z.lam) <= radius:
                out.add(z)
    return out
