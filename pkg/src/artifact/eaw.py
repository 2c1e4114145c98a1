"""
The extended affine Weyl group Q^vee x W acting on the apartment.

An element ``t^lam w`` is stored as the pair ``(lam, w)`` and acts by
``v -> lam + w v``.  It doubles as the label of the extended alcove ``x a0``
on the sheet ``kottwitz_class(lam)``.  Affine letters are ``0..n``; letter 0
is ``s_0 = t^{alpha~^vee} s_{alpha~}``, the reflection in ``H_{alpha~,1}``.
A gallery step of type ``j`` from ``x`` goes to ``x s_j``, so types are read
by right multiplication and are intrinsic to each sheet.

>>> from artifact.rootdata import build_root_datum
>>> R = build_root_datum("A", 2)
>>> x = parse_element(R, "t^[3,3]*s1s2s1")
>>> length(R, x)
9
>>> format_element(conjugate(parse_element(R, "t^[1,1]*s1"), parse_element(R, "t^[-2,1]*s1s2")))
't^[-3,3]*s2'
"""

from __future__ import annotations

__all__ = [
    "ExtAffine", "Hyperplane", "ext", "translation", "spherical", "multiply",
    "inverse", "conjugate", "act_point", "length", "simple_affine", "wall",
    "panel_hyperplane", "hyperplane_image", "crossing_sequence",
    "length_zero_element", "omega_elements", "omega_permutation", "sheet",
    "base_alcove", "in_sheet", "affine_letter_between", "reduced_affine_word",
    "alcove_vertices", "in_shrunken_dominant", "interior_point_scaled",
    "separation_count", "parse_element", "format_element",
]

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from .rootdata import (
    Coweight, LatticeClass, RootDatum, RootVec, WeylElement, cw, is_integral,
    kottwitz_class, pairing, reflection_in, root_act, weyl_act, weyl_element,
    weyl_from_matrix, weyl_group,
)


@dataclass(frozen=True)
class ExtAffine:
    """The element t^lam w; also the extended alcove it labels."""
    lam: tuple[int, ...]
    w: WeylElement

    def __mul__(self, other: "ExtAffine") -> "ExtAffine":
        return multiply(self, other)

    def __str__(self) -> str:
        return format_element(self)


@dataclass(frozen=True, order=True)
class Hyperplane:
    """H_{root,index} = {v : <root, v> = index}, with the root positive."""
    root: RootVec
    index: int

    @staticmethod
    def make(root: Sequence[int], index) -> "Hyperplane":
        root = tuple(int(r) for r in root)
        index = Fraction(index)
        if index.denominator != 1:
            raise ValueError("hyperplane index must be an integer")
        if any(r < 0 for r in root):
            return Hyperplane(tuple(-r for r in root), int(-index))
        return Hyperplane(root, int(index))

    def value(self, v: Sequence) -> Fraction:
        """<root, v> - index; the sign tells the side of v."""
        return pairing(self.root, v) - self.index

    def __str__(self) -> str:
        return f"H[{','.join(map(str, self.root))};{self.index}]"


def ext(R: RootDatum, lam: Sequence, word: Iterable[int] | WeylElement = ()) -> ExtAffine:
    if not is_integral(lam):
        raise ValueError("translation part must be integral")
    w = word if isinstance(word, WeylElement) else weyl_element(R, word)
    return ExtAffine(tuple(int(x) for x in lam), w)


def translation(R: RootDatum, lam: Sequence) -> ExtAffine:
    return ext(R, lam)


def spherical(R: RootDatum, w: WeylElement | Iterable[int]) -> ExtAffine:
    return ext(R, (0,) * R.rank, w)


def multiply(x: ExtAffine, y: ExtAffine) -> ExtAffine:
    # (t^a u)(t^b v) = t^{a + u b} uv
    shift = weyl_act(x.w, y.lam)
    return ExtAffine(tuple(a + int(b) for a, b in zip(x.lam, shift)), x.w * y.w)


def inverse(x: ExtAffine) -> ExtAffine:
    winv = x.w.inverse()
    return ExtAffine(tuple(-int(c) for c in weyl_act(winv, x.lam)), winv)


def conjugate(b: ExtAffine, y: ExtAffine) -> ExtAffine:
    """b^y = y b y^{-1}."""
    return multiply(multiply(y, b), inverse(y))


def act_point(x: ExtAffine, v: Sequence) -> Coweight:
    return tuple(Fraction(a) + b for a, b in zip(x.lam, weyl_act(x.w, v)))


def length(R: RootDatum, x: ExtAffine) -> int:
    """Iwahori-Matsumoto length; zero exactly on Omega."""
    total = 0
    winv = x.w.inverse()
    for alpha in R.pos_roots:
        a = pairing(alpha, x.lam)
        if all(c >= 0 for c in root_act(winv, alpha)):
            total += abs(a)
        else:
            total += abs(a - 1)
    return total


# ---------------------------------------------------------------------------
# walls and panels

@lru_cache(maxsize=None)
def simple_affine(R: RootDatum, j: int) -> ExtAffine:
    """The affine simple reflection s_j, j in 0..n."""
    if j == 0:
        theta = R.highest_root
        return ExtAffine(R.coroot_of(theta), reflection_in(R, theta))
    if not 1 <= j <= R.rank:
        raise ValueError(f"affine letter {j} out of range")
    return spherical(R, (j,))


def wall(R: RootDatum, j: int) -> Hyperplane:
    """The wall of the base alcove of type j."""
    if j == 0:
        return Hyperplane(R.highest_root, 1)
    return Hyperplane(R.simple_root(j), 0)


def hyperplane_image(x: ExtAffine, H: Hyperplane) -> Hyperplane:
    beta = root_act(x.w, H.root)
    return Hyperplane.make(beta, H.index + pairing(beta, x.lam))


def panel_hyperplane(R: RootDatum, x: ExtAffine, j: int) -> Hyperplane:
    """Hyperplane containing the type-j panel of the alcove x."""
    return hyperplane_image(x, wall(R, j))


def crossing_sequence(R: RootDatum, word: Sequence[int], start: ExtAffine | None = None) -> list[Hyperplane]:
    """Walls crossed by the unfolded gallery of the given type from ``start``."""
    x = start if start is not None else spherical(R, ())
    out = []
    for j in word:
        out.append(panel_hyperplane(R, x, j))
        x = multiply(x, simple_affine(R, j))
    return out


def affine_letter_between(R: RootDatum, x: ExtAffine, y: ExtAffine) -> int:
    """The letter j with y = x s_j (adjacent alcoves on one sheet)."""
    d = multiply(inverse(x), y)
    for j in range(R.rank + 1):
        if d == simple_affine(R, j):
            return j
    raise ValueError("alcoves are not adjacent on a common sheet")


# ---------------------------------------------------------------------------
# sheets and Omega

def sheet(R: RootDatum, x: ExtAffine) -> LatticeClass:
    return kottwitz_class(R, x.lam)


@lru_cache(maxsize=None)
def omega_elements(R: RootDatum) -> tuple[ExtAffine, ...]:
    """The length-zero elements, one per class in Q^vee/R^vee."""
    found: dict[LatticeClass, ExtAffine] = {}
    # every length-zero element is t^{varpi_j} w with varpi_j minuscule or zero
    candidates = [(0,) * R.rank] + [
        tuple(int(k == j) for k in range(R.rank)) for j in range(R.rank) if R.labels[j] == 1
    ]
    for lam in candidates:
        for w in weyl_group(R):
            x = ExtAffine(lam, w)
            if length(R, x) == 0:
                found.setdefault(kottwitz_class(R, lam), x)
    return tuple(found.values())


def length_zero_element(R: RootDatum, cls: LatticeClass) -> ExtAffine:
    for om in omega_elements(R):
        if kottwitz_class(R, om.lam) == cls:
            return om
    raise ValueError("no length-zero element in this class")


def base_alcove(R: RootDatum, cls: LatticeClass | None = None) -> ExtAffine:
    """The base alcove of the sheet ``cls`` (the 0-sheet by default)."""
    if cls is None:
        return spherical(R, ())
    return length_zero_element(R, cls)


def in_sheet(R: RootDatum, x: ExtAffine, cls: LatticeClass) -> ExtAffine:
    """The extended alcove on sheet ``cls`` lying over the same alcove as x."""
    om = length_zero_element(R, cls - sheet(R, x))
    return multiply(x, om)


def omega_permutation(R: RootDatum, om: ExtAffine) -> tuple[int, ...]:
    """The permutation pi of 0..n with om s_j om^{-1} = s_{pi(j)}."""
    if length(R, om) != 0:
        raise ValueError("omega_permutation needs a length-zero element")
    perm = []
    for j in range(R.rank + 1):
        c = conjugate(simple_affine(R, j), om)
        perm.append(affine_letter_between(R, spherical(R, ()), c))
    return tuple(perm)


def reduced_affine_word(R: RootDatum, x: ExtAffine, start: ExtAffine | None = None) -> tuple[int, ...]:
    """Lexicographically least reduced word of start^{-1} x (types of a minimal gallery)."""
    if start is None:
        start = base_alcove(R, sheet(R, x))
    g = multiply(inverse(start), x)
    if not sheet(R, g).is_zero():
        raise ValueError("alcoves lie on different sheets")
    word = []
    ell = length(R, g)
    while ell:
        for j in range(R.rank + 1):
            h = multiply(simple_affine(R, j), g)
            lh = length(R, h)
            if lh < ell:
                word.append(j)
                g, ell = h, lh
                break
    return tuple(word)


# ---------------------------------------------------------------------------
# geometry of alcoves

def alcove_vertices(R: RootDatum, x: ExtAffine) -> list[Coweight]:
    """Vertices of x a0; the first one is the translation vertex."""
    base = [cw((0,) * R.rank)] + [
        tuple(Fraction(int(k == j), R.labels[j]) for k in range(R.rank)) for j in range(R.rank)
    ]
    return [act_point(x, v) for v in base]


def in_shrunken_dominant(R: RootDatum, x: ExtAffine) -> bool:
    """Does the closed alcove x a0 satisfy <alpha, v> >= 1 for every alpha > 0?"""
    return all(
        pairing(alpha, v) >= 1 for v in alcove_vertices(R, x) for alpha in R.pos_roots
    )


def interior_point_scaled(R: RootDatum, x: ExtAffine) -> tuple[int, ...]:
    """h * x(rho_check / h): an integer point whose scaling puts it inside x a0."""
    h = R.coxeter_number
    wr = weyl_act(x.w, R.rho_check)
    return tuple(h * a + int(b) for a, b in zip(x.lam, wr))


def separation_count(R: RootDatum, x: ExtAffine, y: ExtAffine) -> int:
    """Number of hyperplanes separating the alcoves x a0 and y a0."""
    h = R.coxeter_number
    p, q = interior_point_scaled(R, x), interior_point_scaled(R, y)
    return sum(abs(pairing(b, p) // h - pairing(b, q) // h) for b in R.pos_roots)


# ---------------------------------------------------------------------------
# text syntax

_ELT = re.compile(r"^\s*(?:t\^\[(?P<lam>[^\]]*)\])?\s*\*?\s*(?P<word>(?:s\d)*|e)?\s*$")


def parse_element(R: RootDatum, text: str) -> ExtAffine:
    """Parse ``t^[a,b,...]*s1s2`` (either factor may be omitted)."""
    m = _ELT.match(text)
    if not m or not text.strip():
        raise ValueError(f"malformed element {text!r}")
    lam_text = m.group("lam")
    if lam_text is None:
        lam = (0,) * R.rank
    else:
        try:
            lam = tuple(int(c) for c in lam_text.split(","))
        except ValueError:
            raise ValueError(f"malformed translation in {text!r}") from None
    if len(lam) != R.rank:
        raise ValueError(f"translation in {text!r} has the wrong rank")
    word_text = m.group("word") or ""
    word = [] if word_text in ("", "e") else [int(c) for c in word_text[1:].split("s")]
    return ext(R, lam, word)


def format_element(x: ExtAffine) -> str:
    lam = "t^[" + ",".join(str(c) for c in x.lam) + "]"
    if x.w.is_identity():
        return lam
    # canonical shortlex-least reduced word
    word = weyl_from_matrix(x.w.datum, x.w.mat).word
    return lam + "*" + "".join(f"s{i}" for i in word)
