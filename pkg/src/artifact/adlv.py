"""
Gallery-side interface to affine Deligne-Lusztig varieties.

``X_x(b)`` is nonempty exactly when, for some ``y``, there is a gallery of
type ``x`` from the base alcove to ``b_nu^y`` that is positively folded for
the ``(P_nu, y)``-chimney.  The y-quantifier ranges over an infinite group,
so a search over a finite window can prove nonemptiness but never emptiness:
exhausting the window yields UNKNOWN.

>>> from artifact.rootdata import build_root_datum
>>> from artifact.eaw import parse_element
>>> A2 = build_root_datum("A", 2)
>>> x = parse_element(A2, "t^[3,3]*s1s2s1")
>>> nonempty(A2, x, parse_element(A2, "t^[1,0]")).status
'EMPTY_ON_SHEET'
"""

from __future__ import annotations

__all__ = [
    "NONEMPTY", "UNKNOWN", "EMPTY_ON_SHEET", "CapExceeded", "Verdict", "WindowRow",
    "enumerate_folded", "enumerate_brute_force", "nonempty", "dimension_lb",
    "default_window", "box_window", "results_table", "verify_certificate",
    "verdict_to_json", "two_rho_pairing",
]

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from . import kernels
from .eaw import (
    ExtAffine, base_alcove, conjugate, format_element, length, reduced_affine_word,
    separation_count, sheet,
)
from .gallery import CROSS, FOLD, ChimneySpec, Gallery, Orientation, fold_stats, is_positively_folded
from .newton import classify
from .rootdata import RootDatum, pairing, weyl_group

NONEMPTY = "NONEMPTY"
UNKNOWN = "UNKNOWN"
EMPTY_ON_SHEET = "EMPTY_ON_SHEET"

DEFAULT_CAP = 20


class CapExceeded(ValueError):
    """Raised instead of starting an enumeration beyond the configured cap."""


def _mask_tuple(bits: int, ell: int) -> tuple[int, ...]:
    return tuple(FOLD if bits >> j & 1 else CROSS for j in range(ell))


def enumerate_folded(R: RootDatum, type_vec: Sequence[int], start: ExtAffine, chimney: ChimneySpec,
                     end: ExtAffine | None = None, cap: int = DEFAULT_CAP, prune: bool = True,
                     workers: int | None = None) -> list[Gallery]:
    """Every positively folded gallery of the given type from ``start``.

    With ``end`` set, only galleries ending at that alcove are returned.
    ``prune=False`` walks the full mask space in Python and is meant as an
    oracle for small lengths.
    """
    type_vec = tuple(type_vec)
    ell = len(type_vec)
    if ell > cap:
        raise CapExceeded(
            f"type length {ell} exceeds cap {cap}: up to 2^{ell} = {2 ** ell} masks"
        )
    if not prune:
        return enumerate_brute_force(R, type_vec, start, chimney, end)
    o = Orientation(R, chimney)
    masks, _, _ = kernels.enumerate_masks(R, type_vec, start, o, end, True, workers)
    return [Gallery(R, start, type_vec, _mask_tuple(int(m), ell)) for m in masks]


def enumerate_brute_force(R: RootDatum, type_vec: Sequence[int], start: ExtAffine,
                          chimney: ChimneySpec, end: ExtAffine | None = None) -> list[Gallery]:
    """Iterate all 2^l masks through the gallery module; no pruning."""
    type_vec = tuple(type_vec)
    o = Orientation(R, chimney)
    out = []
    for bits in range(2 ** len(type_vec)):
        g = Gallery(R, start, type_vec, _mask_tuple(bits, len(type_vec)))
        if end is not None and g.end != end:
            continue
        if is_positively_folded(g, o):
            out.append(g)
    return out


def two_rho_pairing(R: RootDatum, nu: Sequence) -> Fraction:
    return sum((Fraction(pairing(b, nu)) for b in R.pos_roots), Fraction(0))


def default_window(R: RootDatum, x: ExtAffine) -> list[ExtAffine]:
    """All of W times the sup-norm box of radius max(|lam|+2, 4)."""
    radius = max(max((abs(c) for c in x.lam), default=0) + 2, 4)
    return box_window(R, radius)


def box_window(R: RootDatum, radius: int) -> list[ExtAffine]:
    box = list(product(range(-radius, radius + 1), repeat=R.rank))
    return [ExtAffine(mu, u) for u in weyl_group(R) for mu in box]


@dataclass(frozen=True)
class WindowRow:
    y: ExtAffine
    target: ExtAffine
    count: int
    best_dim: int | None
    witness: Gallery | None


@dataclass(frozen=True)
class Verdict:
    status: str
    x: ExtAffine
    b: ExtAffine
    nu: tuple
    witness_y: ExtAffine | None = None
    witness: Gallery | None = None
    best_dim: int | None = None
    window_size: int = 0
    note: str = ""

    @property
    def dimension_lb(self) -> Fraction | None:
        if self.best_dim is None:
            return None
        return self.best_dim - two_rho_pairing(self.witness.datum, self.nu)


def _scan(R: RootDatum, x: ExtAffine, b: ExtAffine, window: Iterable[ExtAffine], cap: int,
          first_only: bool, workers: int | None):
    inv = classify(R, b)
    rep = inv.std_rep
    start = base_alcove(R, sheet(R, x))
    word = reduced_affine_word(R, x, start)
    if len(word) > cap:
        raise CapExceeded(f"length {len(word)} exceeds cap {cap}: up to 2^{len(word)} masks per y")
    window = list(window)
    if rep is None:
        return inv, None, window, []
    b_nu = rep.element

    def scan_one(y: ExtAffine) -> WindowRow | None:
        target = conjugate(b_nu, y)
        if separation_count(R, start, target) > len(word):
            return None
        o = Orientation(R, ChimneySpec.make(inv.parabolic, y))
        masks, ps, fs = kernels.enumerate_masks(R, word, start, o, target, True, 1)
        if len(masks) == 0:
            return WindowRow(y, target, 0, None, None)
        dims = ps + fs
        k = int(dims.argmax())
        g = Gallery(R, start, word, _mask_tuple(int(masks[k]), len(word)))
        return WindowRow(y, target, len(masks), int(dims[k]), g)

    rows: list[WindowRow] = []
    if first_only:
        for y in window:
            row = scan_one(y)
            if row is not None:
                rows.append(row)
                if row.witness is not None:
                    break
    else:
        n = kernels.default_workers() if workers is None else workers
        if n > 1:
            with ThreadPoolExecutor(max_workers=n) as pool:
                found = list(pool.map(scan_one, window))
        else:
            found = [scan_one(y) for y in window]
        rows = [r for r in found if r is not None]
    return inv, b_nu, window, rows


def _verdict(R, x, b, cap, window, first_only, workers) -> tuple[Verdict, list[WindowRow]]:
    if sheet(R, x) != sheet(R, b):
        inv = classify(R, b)
        return Verdict(EMPTY_ON_SHEET, x, b, inv.nu, note="Kottwitz points differ"), []
    if window is None:
        window = default_window(R, x)
    inv, b_nu, window, rows = _scan(R, x, b, window, cap, first_only, workers)
    if b_nu is None:
        return Verdict(UNKNOWN, x, b, inv.nu, window_size=len(window),
                       note="no standard representative for this parabolic"), rows
    hits = [r for r in rows if r.witness is not None]
    if not hits:
        return Verdict(UNKNOWN, x, b, inv.nu, window_size=len(window),
                       note="no witness in window"), rows
    best = max(hits, key=lambda r: r.best_dim)
    return Verdict(NONEMPTY, x, b, inv.nu, best.y, best.witness, best.best_dim, len(window)), rows


def nonempty(R: RootDatum, x: ExtAffine, b: ExtAffine, y_window: Iterable[ExtAffine] | None = None,
             cap: int = DEFAULT_CAP, workers: int | None = None) -> Verdict:
    """NONEMPTY with a witness, UNKNOWN, or EMPTY_ON_SHEET."""
    return _verdict(R, x, b, cap, y_window, True, workers)[0]


def dimension_lb(R: RootDatum, x: ExtAffine, b: ExtAffine, y_window: Iterable[ExtAffine] | None = None,
                 cap: int = DEFAULT_CAP, workers: int | None = None) -> Fraction | None:
    """max dim(gamma) over the window minus <2rho, nu>; None without a witness.

    This is a lower bound for dim X_x(b) only, since the window is finite.
    """
    v = _verdict(R, x, b, cap, y_window, False, workers)[0]
    return v.dimension_lb


def results_table(R: RootDatum, x: ExtAffine, b: ExtAffine, y_window: Iterable[ExtAffine] | None = None,
                  cap: int = DEFAULT_CAP, workers: int | None = None) -> list[dict]:
    """One row per y in the window that admits at least one gallery."""
    verdict, rows = _verdict(R, x, b, cap, y_window, False, workers)
    out = []
    for r in rows:
        if r.witness is None:
            continue
        out.append({
            "x": format_element(x),
            "b": format_element(b),
            "y": format_element(r.y),
            "verdict": NONEMPTY,
            "count": r.count,
            "best_dim": r.best_dim,
            "witness_mask": "".join(map(str, r.witness.mask)),
        })
    return out


def verify_certificate(cert, cap: int = DEFAULT_CAP) -> bool:
    """Replay a construct certificate through the enumeration oracle.

    Checks positive folding, the end alcove ``b^y``, and that the oracle
    lists the same mask with the same (p, f).
    """
    R = cert.gallery.datum
    g = cert.gallery
    o = Orientation(R, cert.chimney)
    if not is_positively_folded(g, o):
        return False
    from .newton import invariants_of, standard_rep

    inv = invariants_of(R, cert.nu, sheet(R, g.end))
    b = standard_rep(R, inv).element
    if conjugate(b, cert.y) != g.end:
        return False
    found = enumerate_folded(R, g.type_vec, g.start, cert.chimney, g.end, cap=cap)
    stats = fold_stats(g, o)
    for h in found:
        if h.mask == g.mask:
            return fold_stats(h, o) == stats
    return False


def verdict_to_json(v: Verdict) -> str:
    return json.dumps({
        "status": v.status,
        "x": format_element(v.x),
        "b": format_element(v.b),
        "nu": [str(c) for c in v.nu],
        "y": None if v.witness_y is None else format_element(v.witness_y),
        "witness_mask": None if v.witness is None else "".join(map(str, v.witness.mask)),
        "best_dim": v.best_dim,
        "dimension_lb": None if v.dimension_lb is None else str(v.dimension_lb),
        "window_size": v.window_size,
        "note": v.note,
    }, sort_keys=True)
