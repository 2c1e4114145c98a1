"""
Irreducible root systems with exact coordinates.

Coweights are tuples of `Fraction` in the fundamental-coweight basis, roots
are integer tuples in the simple-root basis, so the pairing is a dot product.
The Cartan matrix follows Bourbaki with ``cartan[i][j] = <alpha_i, alpha_j^vee>``;
the coordinates of the simple coroot ``alpha_j^vee`` are column ``j``.

>>> R = build_root_datum("A", 2)
>>> len(R.pos_roots), R.highest_root
(3, (1, 1))
>>> weyl_act(R.w0, cw(3, 1))
(Fraction(-1, 1), Fraction(-3, 1))

Indices of simple roots are 1-based everywhere in the public API, matching the
usual labelling of Dynkin diagrams; index 0 is reserved for the affine node.
"""

from __future__ import annotations

__all__ = [
    "Coweight", "RootVec", "RootDatum", "WeylElement", "LatticeClass",
    "cw", "build_root_datum", "pairing", "weyl_element", "weyl_from_matrix",
    "weyl_act", "root_act", "reflect", "reflection_in", "weyl_group",
    "dominantize", "is_dominant", "dominance_leq", "in_weyl_orbit_hull",
    "coroot_coords", "in_coroot_lattice", "is_integral", "kottwitz_class",
    "tailored_w0_word", "i_one", "reduced_words",
]

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Iterable, Sequence

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_decomp

Coweight = tuple[Fraction, ...]
RootVec = tuple[int, ...]
IntMatrix = tuple[tuple[int, ...], ...]


def cw(*coords) -> Coweight:
    """Build a coweight from numbers or strings such as ``"3/2"``."""
    if len(coords) == 1 and not isinstance(coords[0], (int, str, Fraction)):
        coords = tuple(coords[0])
    return tuple(Fraction(c) for c in coords)


def _identity(n: int) -> IntMatrix:
    return tuple(tuple(int(r == c) for c in range(n)) for r in range(n))


def _matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    n = len(a)
    return tuple(
        tuple(sum(a[r][k] * b[k][c] for k in range(n)) for c in range(n))
        for r in range(n)
    )


def _matvec(a, v):
    return tuple(sum(a[r][k] * v[k] for k in range(len(v))) for r in range(len(a)))


def _transpose(a):
    return tuple(zip(*a))


# ---------------------------------------------------------------------------
# Cartan data

def _cartan(type_tag: str, n: int) -> IntMatrix:
    c = [[2 if r == s else 0 for s in range(n)] for r in range(n)]

    def bond(a, b, ab=-1, ba=-1):
        # a, b are 1-based; ab = <alpha_a, alpha_b^vee>
        c[a - 1][b - 1] = ab
        c[b - 1][a - 1] = ba

    if type_tag == "A":
        for k in range(1, n):
            bond(k, k + 1)
    elif type_tag == "B":
        if n < 2:
            raise ValueError("type B needs rank >= 2")
        for k in range(1, n - 1):
            bond(k, k + 1)
        bond(n - 1, n, -2, -1)  # alpha_n short
    elif type_tag == "C":
        if n < 2:
            raise ValueError("type C needs rank >= 2")
        for k in range(1, n - 1):
            bond(k, k + 1)
        bond(n - 1, n, -1, -2)  # alpha_n long
    elif type_tag == "D":
        if n < 4:
            raise ValueError("type D needs rank >= 4")
        for k in range(1, n - 1):
            bond(k, k + 1)
        bond(n - 2, n)
    elif type_tag == "E":
        if n not in (6, 7, 8):
            raise ValueError("type E needs rank 6, 7 or 8")
        bond(1, 3)
        bond(3, 4)
        bond(2, 4)
        for k in range(4, n):
            bond(k, k + 1)
    elif type_tag == "F":
        if n != 4:
            raise ValueError("type F needs rank 4")
        bond(1, 2)
        bond(2, 3, -2, -1)  # alpha_3 short
        bond(3, 4)
    elif type_tag == "G":
        if n != 2:
            raise ValueError("type G needs rank 2")
        bond(1, 2, -1, -3)  # alpha_1 short
    else:
        raise ValueError(f"unsupported root system type {type_tag!r}")
    return tuple(tuple(row) for row in c)


_EXPECTED_POSITIVE = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


@dataclass(frozen=True)
class RootDatum:
    """An irreducible reduced root system given by its Cartan matrix."""
    type_tag: str
    rank: int
    cartan: IntMatrix
    pos_roots: tuple[RootVec, ...]
    pos_coroots: tuple[tuple[int, ...], ...]  # beta^vee in the coweight basis
    highest_root: RootVec
    two_rho: RootVec
    two_rho_check: tuple[int, ...]

    def __repr__(self) -> str:
        return f"RootDatum({self.type_tag}{self.rank})"

    @property
    def n(self) -> int:
        return self.rank

    @cached_property
    def coroot_coords(self) -> tuple[tuple[int, ...], ...]:
        """``coroot_coords[j-1]`` is alpha_j^vee in the coweight basis."""
        return tuple(_transpose(self.cartan))

    def coroot(self, i: int) -> Coweight:
        return cw(self.coroot_coords[i - 1])

    def simple_root(self, i: int) -> RootVec:
        return tuple(int(k == i - 1) for k in range(self.rank))

    def fundamental_coweight(self, i: int) -> Coweight:
        return cw(int(k == i - 1) for k in range(self.rank))

    @cached_property
    def rho_check(self) -> Coweight:
        return cw((1,) * self.rank)

    @cached_property
    def coxeter_number(self) -> int:
        return sum(self.highest_root) + 1

    @cached_property
    def labels(self) -> tuple[int, ...]:
        """Coefficients a_j of the highest root."""
        return self.highest_root

    @cached_property
    def root_index(self) -> dict[RootVec, int]:
        return {r: k for k, r in enumerate(self.pos_roots)}

    def coroot_of(self, beta: RootVec) -> tuple[int, ...]:
        """Coroot of a (possibly negative) root, in the coweight basis."""
        k = self.root_index.get(tuple(beta))
        if k is not None:
            return self.pos_coroots[k]
        k = self.root_index[tuple(-b for b in beta)]
        return tuple(-c for c in self.pos_coroots[k])

    @cached_property
    def cartan_inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        inv = Matrix(self.cartan).inv()
        return tuple(
            tuple(Fraction(int(inv[r, c].p), int(inv[r, c].q)) for c in range(self.rank))
            for r in range(self.rank)
        )

    @cached_property
    def smith(self):
        """Smith data (D, U) of the coroot matrix: U * coroots * V = D."""
        d, u, _ = smith_normal_decomp(Matrix(self.cartan))
        diag = tuple(abs(int(d[k, k])) for k in range(self.rank))
        umat = tuple(tuple(int(u[r, c]) for c in range(self.rank)) for r in range(self.rank))
        return diag, umat

    @cached_property
    def identity(self) -> "WeylElement":
        return weyl_element(self, ())

    @cached_property
    def w0(self) -> "WeylElement":
        return max(weyl_group(self), key=len)

    def s(self, i: int) -> "WeylElement":
        return weyl_element(self, (i,))


@lru_cache(maxsize=None)
def build_root_datum(type_tag: str, rank: int) -> RootDatum:
    """Return the root datum of type ``type_tag`` and rank ``rank``."""
    type_tag = type_tag.upper()
    if rank < 1:
        raise ValueError("rank must be positive")
    if rank == 1 and type_tag not in "A":
        raise ValueError(f"{type_tag}1 is not a valid type; use A1")
    cartan = _cartan(type_tag, rank)
    n = rank

    # close the simple roots (with their coroots) under simple reflections
    simple = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    found = {r: tuple(cartan[j][i] for j in range(n)) for i, r in enumerate(simple)}
    frontier = list(found)
    while frontier:
        new = []
        for beta in frontier:
            for i in range(n):
                pair = sum(beta[j] * cartan[j][i] for j in range(n))  # <beta, alpha_i^vee>
                gamma = tuple(beta[j] - (pair if j == i else 0) for j in range(n))
                if gamma in found or all(g <= 0 for g in gamma):
                    continue
                cor = found[beta]
                # s_i(beta^vee) = beta^vee - <alpha_i, beta^vee> alpha_i^vee
                ai = cor[i]
                found[gamma] = tuple(cor[j] - ai * cartan[j][i] for j in range(n))
                new.append(gamma)
        frontier = new
    pos = sorted(found, key=lambda r: (sum(r), tuple(-x for x in r)))
    if len(pos) != _EXPECTED_POSITIVE[type_tag](n):
        raise AssertionError("root closure disagrees with the classification")
    two_rho = tuple(sum(r[j] for r in pos) for j in range(n))
    return RootDatum(
        type_tag=type_tag,
        rank=n,
        cartan=cartan,
        pos_roots=tuple(pos),
        pos_coroots=tuple(found[r] for r in pos),
        highest_root=pos[-1],
        two_rho=two_rho,
        two_rho_check=(2,) * n,
    )


def pairing(root: Sequence, v: Sequence):
    """The evaluation pairing of a root (simple-root basis) with a coweight."""
    if len(root) != len(v):
        raise ValueError("rank mismatch in pairing")
    return sum(a * b for a, b in zip(root, v))


# ---------------------------------------------------------------------------
# Weyl group

@dataclass(frozen=True)
class WeylElement:
    """A finite Weyl group element; equality is equality of action matrices."""
    mat: IntMatrix  # action on the coweight basis
    inv: IntMatrix = field(compare=False, repr=False)
    word: tuple[int, ...] = field(compare=False, default=())
    datum: RootDatum | None = field(compare=False, repr=False, default=None)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(
            _matmul(self.mat, other.mat),
            _matmul(other.inv, self.inv),
            self.word + other.word,
            self.datum,
        )

    def inverse(self) -> "WeylElement":
        return WeylElement(self.inv, self.mat, tuple(reversed(self.word)), self.datum)

    def __len__(self) -> int:
        # number of positive roots sent negative by w^{-1}
        wrho = _matvec(self.mat, (1,) * len(self.mat))
        return sum(1 for beta in self.datum.pos_roots if pairing(beta, wrho) < 0)

    def is_identity(self) -> bool:
        return self.mat == _identity(len(self.mat))

    def __str__(self) -> str:
        return "".join(f"s{i}" for i in self.word) or "e"


def _simple_matrix(R: RootDatum, i: int) -> IntMatrix:
    n = R.rank
    col = R.coroot_coords[i - 1]
    return tuple(
        tuple(int(r == c) - (col[r] if c == i - 1 else 0) for c in range(n)) for r in range(n)
    )


def weyl_element(R: RootDatum, word: Iterable[int]) -> WeylElement:
    """The element given by a word in the simple reflections (1-based)."""
    word = tuple(word)
    mat = _identity(R.rank)
    for i in word:
        if not 1 <= i <= R.rank:
            raise ValueError(f"simple reflection index {i} out of range")
        mat = _matmul(mat, _simple_matrix(R, i))
    inv = _identity(R.rank)
    for i in reversed(word):
        inv = _matmul(inv, _simple_matrix(R, i))
    return WeylElement(mat, inv, word, R)


def weyl_group(R: RootDatum) -> tuple[WeylElement, ...]:
    """All elements of W, in breadth-first order with shortlex-least words."""
    return _weyl_group(R)


@lru_cache(maxsize=None)
def _weyl_group(R: RootDatum) -> tuple[WeylElement, ...]:
    if R.rank >= 7 and R.type_tag == "E":
        raise ValueError("Weyl group too large to enumerate")
    gens = [weyl_element(R, (i,)) for i in range(1, R.rank + 1)]
    seen = {R.identity.mat: weyl_element(R, ())}
    order = [seen[R.identity.mat]]
    frontier = list(order)
    while frontier:
        new = []
        for w in frontier:
            for g in gens:
                x = w * g
                if x.mat not in seen:
                    seen[x.mat] = x
                    new.append(x)
        order.extend(new)
        frontier = new
    return tuple(order)


@lru_cache(maxsize=None)
def _weyl_lookup(R: RootDatum) -> dict[IntMatrix, WeylElement]:
    return {w.mat: w for w in weyl_group(R)}


def weyl_from_matrix(R: RootDatum, mat) -> WeylElement:
    """The Weyl element (with a reduced word) acting by ``mat``."""
    mat = tuple(tuple(int(x) for x in row) for row in mat)
    try:
        return _weyl_lookup(R)[mat]
    except KeyError:
        raise ValueError("matrix is not in the Weyl group") from None


def weyl_act(w: WeylElement, v: Sequence) -> Coweight:
    return tuple(Fraction(x) for x in _matvec(w.mat, v))


def root_act(w: WeylElement, beta: Sequence[int]) -> RootVec:
    """Action on roots: the contragredient of the coweight action."""
    # <w beta, v> = <beta, w^{-1} v>, so w acts on roots by inv^T
    return tuple(sum(w.inv[k][r] * beta[k] for k in range(len(beta))) for r in range(len(beta)))


def reflect(R: RootDatum, i: int, v: Sequence) -> Coweight:
    """s_i(v) = v - <alpha_i, v> alpha_i^vee."""
    a = v[i - 1]
    col = R.coroot_coords[i - 1]
    return tuple(Fraction(x) - a * c for x, c in zip(v, col))


def reflection_in(R: RootDatum, beta: Sequence[int]) -> WeylElement:
    """The reflection s_beta as a Weyl element."""
    cor = R.coroot_of(tuple(beta))
    n = R.rank
    mat = tuple(tuple(int(r == c) - cor[r] * beta[c] for c in range(n)) for r in range(n))
    return weyl_from_matrix(R, mat)


def is_dominant(v: Sequence) -> bool:
    return all(x >= 0 for x in v)


def dominantize(R: RootDatum, v: Sequence) -> tuple[Coweight, WeylElement]:
    """Return (v+, u) with v+ dominant and u(v) = v+."""
    v = cw(v)
    word: list[int] = []
    while True:
        for i in range(1, R.rank + 1):
            if v[i - 1] < 0:
                v = reflect(R, i, v)
                word.insert(0, i)
                break
        else:
            return v, weyl_element(R, word)


def coroot_coords(R: RootDatum, v: Sequence) -> Coweight:
    """Coordinates of v in the basis of simple coroots."""
    return tuple(Fraction(x) for x in _matvec(R.cartan_inverse, cw(v)))


def is_integral(v: Sequence) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def in_coroot_lattice(R: RootDatum, v: Sequence) -> bool:
    return is_integral(coroot_coords(R, v))


def dominance_leq(R: RootDatum, v1: Sequence, v2: Sequence) -> bool:
    """v1 <= v2 iff v2 - v1 is a non-negative rational combination of coroots."""
    diff = tuple(Fraction(b) - Fraction(a) for a, b in zip(v1, v2))
    return all(c >= 0 for c in coroot_coords(R, diff))


def in_weyl_orbit_hull(R: RootDatum, v: Sequence, xi: Sequence) -> bool:
    """Is v in the convex hull of the W-orbit of the dominant coweight xi?"""
    if not is_dominant(xi):
        raise ValueError("hull test needs a dominant coweight")
    return dominance_leq(R, dominantize(R, v)[0], xi)


# ---------------------------------------------------------------------------
# Q^vee / R^vee

@dataclass(frozen=True)
class LatticeClass:
    """An element of Q^vee/R^vee in Smith normal form coordinates."""
    residues: tuple[int, ...]  # one entry per invariant factor > 1
    moduli: tuple[int, ...]
    representative: tuple[int, ...] = field(compare=False, default=())

    def __add__(self, other: "LatticeClass") -> "LatticeClass":
        rep = tuple(a + b for a, b in zip(self.representative, other.representative))
        res = tuple((a + b) % m for a, b, m in zip(self.residues, other.residues, self.moduli))
        return LatticeClass(res, self.moduli, rep)

    def __neg__(self) -> "LatticeClass":
        return LatticeClass(
            tuple((-a) % m for a, m in zip(self.residues, self.moduli)),
            self.moduli,
            tuple(-a for a in self.representative),
        )

    def __sub__(self, other: "LatticeClass") -> "LatticeClass":
        return self + (-other)

    def is_zero(self) -> bool:
        return not any(self.residues)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        return "[" + ",".join(str(x) for x in self.representative) + "]"


def kottwitz_class(R: RootDatum, lam: Sequence) -> LatticeClass:
    """The image of an integral coweight in Q^vee/R^vee."""
    if not is_integral(lam):
        raise ValueError(f"{tuple(str(x) for x in lam)} is not in the coweight lattice")
    lam = tuple(int(x) for x in lam)
    diag, umat = R.smith
    ulam = _matvec(umat, lam)
    keep = [k for k, d in enumerate(diag) if d != 1]
    moduli = tuple(diag[k] for k in keep)
    return LatticeClass(tuple(ulam[k] % diag[k] for k in keep), moduli, lam)


# ---------------------------------------------------------------------------
# reduced words

def reduced_words(R: RootDatum, w: WeylElement) -> list[tuple[int, ...]]:
    """All reduced words of w, lexicographically sorted."""
    out: list[tuple[int, ...]] = []

    def rec(x: WeylElement, suffix: tuple[int, ...]):
        if x.is_identity():
            out.append(suffix)
            return
        for i in range(1, R.rank + 1):
            y = x * R.s(i)
            if len(y) < len(x):
                rec(y, (i,) + suffix)

    rec(w, ())
    return sorted(set(out))


def i_one(R: RootDatum, i: int) -> int:
    """The index i1 with s_{i1} = w0 s_i w0."""
    target = R.w0 * R.s(i) * R.w0
    for j in range(1, R.rank + 1):
        if R.s(j) == target:
            return j
    raise AssertionError("w0 does not normalise the simple reflections")


def tailored_w0_word(R: RootDatum, i: int) -> tuple[int, ...]:
    """A reduced word for w0 ending in a Coxeter element whose last letter is i1."""
    if not 1 <= i <= R.rank:
        raise ValueError("index out of range")
    i1 = i_one(R, i)
    n = R.rank
    for order in permutations(range(1, n + 1)):
        if order[-1] != i1:
            continue
        cox = weyl_element(R, order)
        if len(cox) != n:
            continue
        head = R.w0 * cox.inverse()
        if len(head) + n != len(R.w0):
            continue
        words = reduced_words(R, head) if len(head) <= 12 else [_greedy_word(R, head)]
        return words[0] + order
    raise AssertionError("no reduced word of w0 ends in a Coxeter element")


def _greedy_word(R: RootDatum, w: WeylElement) -> tuple[int, ...]:
    word: list[int] = []
    while not w.is_identity():
        for i in range(1, R.rank + 1):
            y = R.s(i) * w
            if len(y) < len(w):
                word.append(i)
                w = y
                break
    return tuple(word)
