"""
Combinatorial galleries, chimney orientations, PRS folding and the lowering
root operators.

A gallery is a start alcove, a type vector of affine letters and a mask of
actions.  Step ``j`` with letter ``L`` either crosses the type-``L`` panel of
the current alcove (``c_j = c_{j-1} s_L``) or folds there (``c_j = c_{j-1}``).
Because of this right-multiplication rule, flipping the action at ``j`` is
the same as reflecting the whole tail of the gallery through panel ``p_j``.

Positions in masks and panel lists are 0-based.
"""

from __future__ import annotations

__all__ = [
    "CROSS", "FOLD", "Gallery", "ChimneySpec", "Orientation", "FoldStats",
    "minimal_gallery", "orientation_sign", "fold_stats", "is_positively_folded",
    "prs_fold", "min_index", "root_operator_f", "marked_panel_image",
    "affine_reflection", "act_left", "first_vertex", "final_vertex",
    "gallery_to_text", "gallery_from_text", "gallery_to_json", "gallery_from_json",
]

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .eaw import (
    ExtAffine, Hyperplane, base_alcove, ext, format_element, inverse, length,
    multiply, panel_hyperplane, parse_element, reduced_affine_word, sheet, simple_affine,
)
from .rootdata import RootDatum, build_root_datum, pairing, root_act, weyl_act

CROSS = 0
FOLD = 1


@dataclass(frozen=True)
class Gallery:
    datum: RootDatum = field(repr=False)
    start: ExtAffine
    type_vec: tuple[int, ...]
    mask: tuple[int, ...]

    def __post_init__(self):
        if len(self.type_vec) != len(self.mask):
            raise ValueError("type vector and mask differ in length")
        if any(a not in (CROSS, FOLD) for a in self.mask):
            raise ValueError("mask entries must be CROSS or FOLD")
        if any(not 0 <= j <= self.datum.rank for j in self.type_vec):
            raise ValueError("affine letter out of range")

    def __len__(self) -> int:
        return len(self.type_vec)

    @cached_property
    def alcoves(self) -> tuple[ExtAffine, ...]:
        out = [self.start]
        for letter, act in zip(self.type_vec, self.mask):
            c = out[-1]
            out.append(c if act == FOLD else multiply(c, simple_affine(self.datum, letter)))
        return tuple(out)

    @cached_property
    def panels(self) -> tuple[Hyperplane, ...]:
        """panels[j] is the hyperplane of the panel used at step j."""
        return tuple(
            panel_hyperplane(self.datum, c, letter)
            for c, letter in zip(self.alcoves, self.type_vec)
        )

    @property
    def end(self) -> ExtAffine:
        return self.alcoves[-1]

    @property
    def folds(self) -> tuple[int, ...]:
        return tuple(j for j, a in enumerate(self.mask) if a == FOLD)

    def with_mask(self, mask: Sequence[int]) -> "Gallery":
        return Gallery(self.datum, self.start, self.type_vec, tuple(mask))


def first_vertex(g: Gallery):
    """The translation vertex of the first alcove."""
    return g.start.lam


def final_vertex(g: Gallery):
    return g.end.lam


def minimal_gallery(R: RootDatum, x: ExtAffine, word: Sequence[int] | None = None) -> Gallery:
    """The unfolded gallery from the base alcove of x's sheet to x."""
    start = base_alcove(R, sheet(R, x))
    if word is None:
        word = reduced_affine_word(R, x, start)
    word = tuple(word)
    g = Gallery(R, start, word, (CROSS,) * len(word))
    if g.end != x or len(word) != length(R, x):
        raise ValueError("word is not a reduced word for this element")
    return g


def act_left(h: ExtAffine, g: Gallery) -> Gallery:
    """The image h(gamma); types are unchanged."""
    return Gallery(g.datum, multiply(h, g.start), g.type_vec, g.mask)


def affine_reflection(R: RootDatum, beta: Sequence[int], k: int) -> ExtAffine:
    """s_{beta,k} = t^{k beta^vee} s_beta."""
    from .rootdata import reflection_in

    cor = R.coroot_of(tuple(beta))
    return ext(R, tuple(k * c for c in cor), reflection_in(R, beta))


# ---------------------------------------------------------------------------
# chimney orientations

@dataclass(frozen=True)
class ChimneySpec:
    """The (P, y)-chimney; P is a set of simple indices, empty for B."""
    parabolic: frozenset[int]
    y: ExtAffine

    @staticmethod
    def make(parabolic, y: ExtAffine) -> "ChimneySpec":
        return ChimneySpec(frozenset(parabolic), y)


class Orientation:
    """Signs of (alcove, hyperplane) pairs induced by a chimney.

    A representative sector of the chimney is ``v(t) = y(c_P - t varpi_N)``
    where ``varpi_N`` sums the fundamental coweights outside P and ``c_P`` is
    an interior point of the Levi's base alcove.  A pair is positive when the
    alcove and ``v(t)`` lie on opposite sides of the hyperplane for large t.
    """

    def __init__(self, R: RootDatum, spec: ChimneySpec):
        self.datum = R
        self.spec = spec
        par = spec.parabolic
        self.varpi_n = tuple(0 if j + 1 in par else 1 for j in range(R.rank))
        self.rho_m = tuple(1 if j + 1 in par else 0 for j in range(R.rank))
        heights = [pairing(b, self.rho_m) for b in R.pos_roots if _in_levi(b, par)]
        self.h_m = max(heights, default=0) + 1
        u = spec.y.w
        self.u_varpi_n = tuple(int(c) for c in weyl_act(u, self.varpi_n))
        self.u_rho_m = tuple(int(c) for c in weyl_act(u, self.rho_m))
        self.mu = spec.y.lam
        self._cache: dict[Hyperplane, int] = {}

    def deep_side(self, H: Hyperplane) -> int:
        """Side (+1/-1) of H on which the chimney's sector eventually lies."""
        s = self._cache.get(H)
        if s is None:
            a = pairing(H.root, self.u_varpi_n)
            if a:
                s = -1 if a > 0 else 1
            else:
                c = self.h_m * (pairing(H.root, self.mu) - H.index) + pairing(H.root, self.u_rho_m)
                s = 1 if c > 0 else -1
            self._cache[H] = s
        return s

    def alcove_side(self, x: ExtAffine, H: Hyperplane) -> int:
        h = self.datum.coxeter_number
        wr = weyl_act(x.w, self.datum.rho_check)
        val = h * (pairing(H.root, x.lam) - H.index) + pairing(H.root, wr)
        return 1 if val > 0 else -1

    def sign(self, x: ExtAffine, H: Hyperplane) -> int:
        R = self.datum
        if all(panel_hyperplane(R, x, j) != H for j in range(R.rank + 1)):
            raise ValueError(f"{H} does not contain a panel of {format_element(x)}")
        return 1 if self.alcove_side(x, H) != self.deep_side(H) else -1


def _in_levi(beta, par) -> bool:
    return all(c == 0 or k + 1 in par for k, c in enumerate(beta))


def orientation_sign(o: Orientation, x: ExtAffine, H: Hyperplane) -> int:
    return o.sign(x, H)


@dataclass(frozen=True)
class FoldStats:
    p: int
    f: int
    dim: int
    negative_folds: int = 0


def fold_stats(g: Gallery, o: Orientation) -> FoldStats:
    p = f = neg = 0
    alc = g.alcoves
    for j, (act, H) in enumerate(zip(g.mask, g.panels)):
        if act == FOLD:
            f += 1
            if o.sign(alc[j], H) < 0:
                neg += 1
        elif o.sign(alc[j + 1], H) > 0:
            p += 1
    return FoldStats(p, f, p + f, neg)


def is_positively_folded(g: Gallery, o: Orientation) -> bool:
    alc = g.alcoves
    return all(o.sign(alc[j], g.panels[j]) > 0 for j in g.folds)


def prs_fold(g: Gallery, j: int) -> Gallery:
    """Fold at panel j: the tail after p_j is reflected through its wall."""
    if not 0 <= j < len(g):
        raise IndexError("panel index out of range")
    if g.mask[j] == FOLD:
        raise ValueError(f"panel {j} is already folded")
    mask = list(g.mask)
    mask[j] = FOLD
    return g.with_mask(mask)


# ---------------------------------------------------------------------------
# root operators on vertex-to-vertex galleries

def _as_root(R: RootDatum, alpha) -> tuple[int, ...]:
    if isinstance(alpha, int):
        return R.simple_root(alpha)
    return tuple(alpha)


def _levels(g: Gallery, alpha) -> list[int | None]:
    return [H.index if H.root == alpha else None for H in g.panels]


def min_index(g: Gallery, alpha) -> int:
    """m(gamma, alpha): lowest alpha-hyperplane holding a panel or an end vertex."""
    R = g.datum
    alpha = _as_root(R, alpha)
    vals = [pairing(alpha, first_vertex(g)), pairing(alpha, final_vertex(g))]
    vals += [k for k in _levels(g, alpha) if k is not None]
    return min(vals)


def root_operator_f(g: Gallery, alpha) -> Gallery | None:
    """The lowering operator f_alpha, or None where it is undefined."""
    R = g.datum
    alpha = _as_root(R, alpha)
    m = min_index(g, alpha)
    end_level = pairing(alpha, final_vertex(g))
    if m == end_level:
        return None
    levels = _levels(g, alpha)
    touches = [j for j, k in enumerate(levels) if k == m]
    start_touch = pairing(alpha, first_vertex(g)) == m
    last = touches[-1] if touches else -1
    if last == -1 and not start_touch:
        raise AssertionError("minimum level not attained")
    nxt = next((j for j in range(last + 1, len(g)) if levels[j] == m + 1), None)
    if nxt is None and end_level != m + 1:
        raise AssertionError("gallery leaves the strip above the minimum without a panel")
    mask = list(g.mask)
    start = g.start
    if last >= 0:
        mask[last] ^= 1
    else:
        start = multiply(affine_reflection(R, alpha, m), start)
    if nxt is not None:
        mask[nxt] ^= 1
    out = Gallery(R, start, g.type_vec, tuple(mask))
    cor = R.coroot_of(alpha)
    if tuple(a - c for a, c in zip(final_vertex(g), cor)) != final_vertex(out):
        raise AssertionError("root operator did not shift the final vertex by -alpha^vee")
    return out


def marked_panel_image(g: Gallery, j: int) -> tuple[Hyperplane, int]:
    """Hyperplane of panel j and the crossing direction.

    The direction is +1 when the gallery passes from the side where the root is
    below the index to the side where it is above (antidominant to dominant),
    -1 for the reverse, and 0 when the gallery folds there.
    """
    if not 0 <= j < len(g):
        raise IndexError("marker out of range")
    H = g.panels[j]
    if g.mask[j] == FOLD:
        return H, 0
    o = Orientation(g.datum, ChimneySpec(frozenset(), g.start))
    after = o.alcove_side(g.alcoves[j + 1], H)
    return H, after


# ---------------------------------------------------------------------------
# serialisation

def gallery_to_text(g: Gallery) -> str:
    return "; ".join([
        format_element(g.start),
        ",".join(str(j) for j in g.type_vec),
        "".join(str(a) for a in g.mask),
    ])


def gallery_from_text(R: RootDatum, text: str) -> Gallery:
    parts = [p.strip() for p in text.strip().split(";")]
    if len(parts) != 3:
        raise ValueError("gallery record needs start; type; mask")
    start = parse_element(R, parts[0])
    types = tuple(int(c) for c in parts[1].split(",")) if parts[1] else ()
    mask = tuple(int(c) for c in parts[2])
    return Gallery(R, start, types, mask)


def gallery_to_json(g: Gallery) -> dict:
    R = g.datum
    return {
        "root_system": f"{R.type_tag}{R.rank}",
        "start": format_element(g.start),
        "type": list(g.type_vec),
        "mask": "".join(str(a) for a in g.mask),
    }


def gallery_from_json(data: dict | str) -> Gallery:
    if isinstance(data, str):
        data = json.loads(data)
    tag = data["root_system"]
    R = build_root_datum(tag[0], int(tag[1:]))
    return Gallery(
        R, parse_element(R, data["start"]), tuple(data["type"]), tuple(int(c) for c in data["mask"])
    )
