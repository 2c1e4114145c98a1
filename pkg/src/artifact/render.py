"""
SVG pictures of a rank-2 apartment: the hyperplane arrangement, a gallery
drawn through alcove barycenters and panel midpoints (folds show as cusps),
and the shaded chimney.

Coordinates stay exact until the very last step.  The Euclidean embedding
of the coweight basis is fixed once as an integer matrix (its square roots
are integer square roots at a fixed scale), clipping is done in Fractions,
and only the final pixel positions are rounded.  The output therefore
depends on nothing but the scene record.
"""

from __future__ import annotations

__all__ = ["render_svg", "scene_from_certificate", "chimney_polygon", "embedding"]

from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Sequence

from .eaw import ExtAffine, act_point, alcove_vertices, format_element, parse_element
from .gallery import ChimneySpec, FOLD, Gallery, Orientation, gallery_from_json, gallery_to_json
from .newton import invariant_form
from .rootdata import RootDatum, build_root_datum, pairing, root_act

SCALE = 48
HALF = 336  # half the viewport side, in pixels

Point = tuple[Fraction, Fraction]


@lru_cache(maxsize=None)
def embedding(R: RootDatum) -> tuple[tuple[int, int], tuple[int, int]]:
    """Integer pixel images of the two fundamental coweights."""
    if R.rank != 2:
        raise ValueError("rendering is only available in rank 2")
    e1, e2 = (1, 0), (0, 1)
    g11, g12, g22 = (Fraction(invariant_form(R, a, b)) for a, b in ((e1, e1), (e1, e2), (e2, e2)))
    unit = min(g11, g22)
    g11, g12, g22 = g11 / unit, g12 / unit, g22 / unit
    s2 = SCALE * SCALE
    a = isqrt(int(g11 * s2))
    b = round(g12 * s2 / a)
    c = isqrt(int((g22 - g12 * g12 / g11) * s2))
    return (a, 0), (b, c)


def _pix(R: RootDatum, v: Sequence) -> Point:
    (a, _), (b, c) = embedding(R)
    return (Fraction(v[0]) * a + Fraction(v[1]) * b, Fraction(v[1]) * c)


def _unpix(R: RootDatum, p: Point) -> tuple[Fraction, Fraction]:
    (a, _), (b, c) = embedding(R)
    v1 = Fraction(p[1]) / c
    return ((Fraction(p[0]) - v1 * b) / a, v1)


def _fmt(p: Point) -> str:
    # SVG y grows downward
    return f"{round(p[0]) + HALF},{HALF - round(p[1])}"


def _clip(poly: list, beta: Sequence[int], bound, keep_below: bool) -> list:
    """Keep the part of a convex polygon (in coweight coordinates) with
    <beta, v> <= bound (or >= bound)."""
    def val(v):
        d = pairing(beta, v) - bound
        return -d if not keep_below else d

    out = []
    for k, cur in enumerate(poly):
        prev = poly[k - 1]
        vc, vp = val(cur), val(prev)
        if vc <= 0:
            if vp > 0:
                out.append(_cut(prev, cur, vp, vc))
            out.append(cur)
        elif vp <= 0:
            out.append(_cut(prev, cur, vp, vc))
    return out


def _cut(p, q, vp, vq):
    t = Fraction(vp) / (vp - vq)
    return tuple(a + t * (b - a) for a, b in zip(p, q))


def _viewport(R: RootDatum) -> list:
    corners = [(-HALF, -HALF), (HALF, -HALF), (HALF, HALF), (-HALF, HALF)]
    return [_unpix(R, c) for c in corners]


def _line_segment(R: RootDatum, beta, k):
    """Endpoints of H_{beta,k} inside the viewport, or None."""
    view = _viewport(R)
    strip = _clip(_clip(view, beta, k, True), beta, k, False)
    if len(strip) < 2:
        return None
    pts = sorted(set(strip))
    return pts[0], pts[-1]


def chimney_polygon(R: RootDatum, spec: ChimneySpec) -> list:
    """The chimney y(c_P - t varpi_N) region clipped to the viewport, as
    coweight-coordinate vertices."""
    u, mu = spec.y.w, spec.y.lam
    poly = _viewport(R)
    par = spec.parabolic
    for i in range(1, R.rank + 1):
        beta = root_act(u, R.simple_root(i))
        base = pairing(beta, mu)
        if i in par:
            poly = _clip(poly, beta, base, False)
        else:
            poly = _clip(poly, beta, base, True)
        if not poly:
            return []
    levi = [b for b in R.pos_roots if all(c == 0 or k + 1 in par for k, c in enumerate(b))]
    if levi:
        top = max(levi, key=sum)
        beta = root_act(u, top)
        poly = _clip(poly, beta, pairing(beta, mu) + 1, True)
    return poly


def _barycenter(R: RootDatum, x: ExtAffine):
    vs = alcove_vertices(R, x)
    return tuple(sum(v[c] for v in vs) / len(vs) for c in range(R.rank))


def _panel_midpoint(R: RootDatum, x: ExtAffine, j: int):
    base = [(Fraction(0),) * R.rank] + [
        tuple(Fraction(int(k == m), R.labels[m]) for k in range(R.rank)) for m in range(R.rank)
    ]
    pts = [act_point(x, v) for k, v in enumerate(base) if k != j]
    return tuple(sum(p[c] for p in pts) / len(pts) for c in range(R.rank))


def render_svg(scene: dict) -> str:
    """Render a scene record.

    Keys: ``root_system`` (e.g. "A2", default A2), ``radius`` (hyperplane
    index range, default 6), ``gallery`` (gallery JSON), ``chimney``
    ({"parabolic": [...], "y": element}) and ``signs`` (bool).
    """
    tag = scene.get("root_system", "A2")
    R = build_root_datum(tag[0], int(tag[1:]))
    if R.rank != 2:
        raise ValueError("rendering is only available in rank 2")
    radius = int(scene.get("radius", 6))
    side = 2 * HALF
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{side}" height="{side}" '
        f'viewBox="0 0 {side} {side}">',
        f'<rect x="0" y="0" width="{side}" height="{side}" fill="white"/>',
    ]
    spec = None
    if scene.get("chimney"):
        ch = scene["chimney"]
        spec = ChimneySpec.make(ch.get("parabolic", []), parse_element(R, ch["y"]))
        poly = chimney_polygon(R, spec)
        if len(poly) >= 3:
            pts = " ".join(_fmt(_pix(R, v)) for v in poly)
            out.append(f'<polygon class="chimney" points="{pts}" fill="#f4d9a6" stroke="none"/>')
    out.append('<g class="hyperplanes" stroke="#999999" stroke-width="1">')
    for beta in R.pos_roots:
        for k in range(-radius, radius + 1):
            seg = _line_segment(R, beta, k)
            if seg is None:
                continue
            a, b = (_fmt(_pix(R, p)).split(",") for p in seg)
            width = ' stroke-width="2" stroke="#555555"' if k == 0 else ""
            out.append(f'<line x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}"{width}/>')
    out.append("</g>")
    if scene.get("gallery"):
        g = gallery_from_json(scene["gallery"])
        if g.datum != R:
            raise ValueError("gallery and scene use different root systems")
        out.extend(_gallery_svg(R, g, spec, bool(scene.get("signs"))))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _gallery_svg(R: RootDatum, g: Gallery, spec: ChimneySpec | None, signs: bool) -> list[str]:
    alc = g.alcoves
    pts = [_barycenter(R, alc[0])]
    cusps = []
    for j, letter in enumerate(g.type_vec):
        mid = _panel_midpoint(R, alc[j], letter)
        pts.append(mid)
        if g.mask[j] == FOLD:
            cusps.append(mid)
        pts.append(_barycenter(R, alc[j + 1]))
    path = " ".join(_fmt(_pix(R, p)) for p in pts)
    out = [f'<polyline class="gallery" points="{path}" fill="none" stroke="#1f4e9c" stroke-width="2"/>']
    sx, sy = _fmt(_pix(R, pts[0])).split(",")
    out.append(f'<circle class="start" cx="{sx}" cy="{sy}" r="4" fill="#1f4e9c"/>')
    for c in cusps:
        cx, cy = _fmt(_pix(R, c)).split(",")
        out.append(f'<circle class="fold" cx="{cx}" cy="{cy}" r="3" fill="#c0392b"/>')
    if signs and spec is not None:
        o = Orientation(R, spec)
        for j, letter in enumerate(g.type_vec):
            s = o.sign(alc[j], g.panels[j])
            mid = _panel_midpoint(R, alc[j], letter)
            bar = _barycenter(R, alc[j])
            at = tuple(m + (b - m) / 3 for m, b in zip(mid, bar))
            tx, ty = _fmt(_pix(R, at)).split(",")
            label = "+" if s > 0 else "-"
            out.append(f'<text class="sign" x="{tx}" y="{ty}" font-size="10" text-anchor="middle">{label}</text>')
    return out


def scene_from_certificate(cert, radius: int = 6, signs: bool = False) -> dict:
    return {
        "root_system": f"{cert.gallery.datum.type_tag}{cert.gallery.datum.rank}",
        "radius": radius,
        "gallery": gallery_to_json(cert.gallery),
        "chimney": {"parabolic": sorted(cert.chimney.parabolic), "y": format_element(cert.y)},
        "signs": signs,
    }
