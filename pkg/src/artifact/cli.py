"""
Command-line front end.

Exit status: 0 on success, 1 when a verdict-level answer is negative (no
certificate, UNKNOWN, a failing acceptance check), 2 on usage errors such
as malformed elements, unsupported root systems or an exceeded cap.
"""

from __future__ import annotations

__all__ = ["main", "run", "parse_chimney", "load_config"]

import argparse
import configparser
import json
import os
import sys
from fractions import Fraction

from .adlv import CapExceeded, DEFAULT_CAP, box_window, enumerate_folded, nonempty, verdict_to_json
from .conj import conjugacy_class_window, inverse_problem
from .construct import (
    ConstructionGap, build_base_gallery, certificate_to_json, first_certificate,
    first_target_certificate, fold_first_target, lower_target_certificate,
)
from .eaw import format_element, length_zero_element, parse_element
from .gallery import ChimneySpec, Orientation, fold_stats, gallery_to_text
from .newton import check_standard_rep, classify, invariants_of
from .rootdata import build_root_datum, kottwitz_class

# Weyl groups beyond these sizes make the exhaustive routines impractical
SUPPORTED = {"A": range(1, 7), "B": range(2, 5), "C": range(2, 5), "D": (4,), "F": (4,), "G": (2,)}


class UsageError(Exception):
    pass


def load_config(path: str | None) -> dict:
    """Read ``key = value`` lines (``#`` comments allowed)."""
    if not path:
        return {}
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_string("[artifact]\n" + fh.read())
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    return dict(parser["artifact"])


def _datum(tag: str, rank: int):
    tag = tag.upper()
    if tag not in SUPPORTED or rank not in SUPPORTED[tag]:
        raise UsageError(f"unsupported root system {tag}{rank}")
    try:
        return build_root_datum(tag, rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _element(R, text: str):
    try:
        return parse_element(R, text)
    except (ValueError, IndexError) as exc:
        raise UsageError(f"malformed element {text!r}: {exc}") from None


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _fracs(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(c) for c in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated rationals, got {text!r}") from None


def parse_chimney(R, text: str) -> ChimneySpec:
    """``P,y`` where P is B, G or a string of simple indices such as 1 or 12."""
    if "," not in text:
        raise UsageError("chimney must be given as P,y")
    par_text, y_text = text.split(",", 1)
    par_text = par_text.strip().upper()
    if par_text in ("", "B"):
        par = set()
    elif par_text == "G":
        par = set(range(1, R.rank + 1))
    else:
        try:
            par = {int(c) for c in par_text.replace("+", "")}
        except ValueError:
            raise UsageError(f"bad parabolic {par_text!r}") from None
        if not par <= set(range(1, R.rank + 1)):
            raise UsageError(f"parabolic {par_text!r} out of range")
    return ChimneySpec.make(par, _element(R, y_text))


def _kappa_label(R, cls) -> str:
    return format_element(length_zero_element(R, cls)).split("*")[0]


def _newton_record(R, inv) -> dict:
    rep = inv.std_rep
    return {
        "nu": [str(c) for c in inv.nu],
        "kappa": _kappa_label(R, inv.kappa),
        "parabolic": sorted(inv.parabolic),
        "integral": inv.integral,
        "std_rep": None if rep is None else format_element(rep.element),
    }


def cmd_newton(args, cfg) -> int:
    R = _datum(args.type, args.rank)
    x = _element(R, args.element)
    print(json.dumps(_newton_record(R, classify(R, x)), sort_keys=True))
    return 0


def _invariants_from_args(R, args):
    nu = _fracs(args.nu)
    if len(nu) != R.rank:
        raise UsageError("Newton point has the wrong rank")
    kappa = kottwitz_class(R, _ints(args.kappa) if args.kappa else (0,) * R.rank)
    try:
        return invariants_of(R, nu, kappa)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_stdrep(args, cfg) -> int:
    R = _datum(args.type, args.rank)
    inv = _invariants_from_args(R, args)
    rec = _newton_record(R, inv)
    if args.candidate:
        rec["candidate"] = args.candidate
        rec["candidate_ok"] = check_standard_rep(R, _element(R, args.candidate), inv)
    print(json.dumps(rec, sort_keys=True))
    if inv.std_rep is None and not args.candidate:
        return 1
    return 0 if rec.get("candidate_ok", True) else 1


def cmd_conjclass(args, cfg) -> int:
    R = _datum(args.type, args.rank)
    inv = _invariants_from_args(R, args)
    radius = args.window if args.window is not None else int(cfg.get("window", 3))
    if inv.std_rep is None or len(inv.parabolic) != 1 or inv.integral:
        print(json.dumps({"error": "conjugacy windows need a rank-1 non-integral class"}))
        return 1
    members = sorted(conjugacy_class_window(R, inv.std_rep, radius), key=lambda z: (z.lam, str(z)))
    rows = [{"z": format_element(z), "y": format_element(inverse_problem(R, inv.std_rep, z))} for z in members]
    print(json.dumps({"b_nu": format_element(inv.std_rep.element), "window": radius, "members": rows}))
    return 0


def cmd_construct(args, cfg) -> int:
    R = _datum(args.type, args.rank)
    lam = _ints(args.lam)
    if len(lam) != R.rank:
        raise UsageError("lambda has the wrong rank")
    try:
        state = fold_first_target(build_base_gallery(R, lam, args.i))
        if args.nu_prime:
            cert = lower_target_certificate(state, _fracs(args.nu_prime))
        else:
            cert = first_certificate(first_target_certificate(state))
    except ConstructionGap as exc:
        print(json.dumps({"error": f"construction gap: {exc}"}))
        return 1
    except ValueError as exc:
        print(json.dumps({"error": str(exc)}))
        return 1
    print(json.dumps(certificate_to_json(cert), sort_keys=True))
    return 0


def cmd_verify(args, cfg) -> int:
    from .acceptance import run_all

    selected = set(args.only) if args.only else None
    failed = 0
    for num, name, ok, detail, secs in run_all(selected):
        print(f"[{'PASS' if ok else 'FAIL'}] {num:2d} {name}: {detail} ({secs:.2f}s)")
        failed += not ok
    return 1 if failed else 0


def cmd_enumerate(args, cfg) -> int:
    R = _datum(args.type, args.rank)
    types = _ints(args.type_vec) if args.type_vec else ()
    chim = parse_chimney(R, args.chimney)
    start = _element(R, args.start) if args.start else _element(R, "t^[" + ",".join("0" * R.rank) + "]")
    end = _element(R, args.end) if args.end else None
    cap = args.cap if args.cap is not None else int(cfg.get("cap", DEFAULT_CAP))
    try:
        found = enumerate_folded(R, types, start, chim, end, cap=cap)
    except CapExceeded as exc:
        raise UsageError(str(exc)) from None
    o = Orientation(R, chim)
    rows = []
    for g in found:
        st = fold_stats(g, o)
        rows.append({"gallery": gallery_to_text(g), "end": format_element(g.end),
                     "p": st.p, "f": st.f, "dim": st.dim})
    print(json.dumps({"count": len(rows), "galleries": rows}))
    return 0


def cmd_nonempty(args, cfg) -> int:
    R = _datum(args.type, args.rank)
    x, b = _element(R, args.x), _element(R, args.b)
    window = None
    radius = args.window if args.window is not None else cfg.get("window")
    if radius is not None:
        window = box_window(R, int(radius))
    cap = args.cap if args.cap is not None else int(cfg.get("cap", DEFAULT_CAP))
    try:
        v = nonempty(R, x, b, window, cap=cap)
    except CapExceeded as exc:
        raise UsageError(str(exc)) from None
    print(verdict_to_json(v))
    return 0 if v.status == "NONEMPTY" else 1


def cmd_render(args, cfg) -> int:
    from .render import render_svg, scene_from_certificate

    if args.scene:
        try:
            with open(args.scene, encoding="utf-8") as fh:
                scene = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read scene: {exc}") from None
    elif args.lam:
        R = _datum(args.type, args.rank)
        try:
            state = fold_first_target(build_base_gallery(R, _ints(args.lam), args.i))
            cert = first_certificate(first_target_certificate(state))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        scene = scene_from_certificate(cert, signs=args.signs)
    else:
        scene = {"root_system": f"{args.type.upper()}{args.rank}"}
    try:
        svg = render_svg(scene)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    return 0


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="artifact", description=__doc__.strip().splitlines()[0])
    p.add_argument("--config", help="key = value file (window, cap, workers)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("newton", help="Newton point, Kottwitz class and standard representative")
    s.add_argument("type")
    s.add_argument("rank", type=int)
    s.add_argument("element")
    s.set_defaults(fn=cmd_newton)

    def typed(sp):
        sp.add_argument("--type", default="A")
        sp.add_argument("--rank", type=int, default=2)

    s = sub.add_parser("stdrep", help="standard representative for (nu, kappa)")
    typed(s)
    s.add_argument("--nu", required=True, help="dominant Newton point, e.g. 0,3/2")
    s.add_argument("--kappa", help="any coweight in the Kottwitz class (default 0)")
    s.add_argument("--candidate", help="element to test against the three conditions")
    s.set_defaults(fn=cmd_stdrep)

    s = sub.add_parser("conjclass", help="members of a rank-1 class within a window")
    typed(s)
    s.add_argument("--nu", required=True)
    s.add_argument("--kappa")
    s.add_argument("--window", type=int)
    s.set_defaults(fn=cmd_conjclass)

    s = sub.add_parser("construct", help="explicit positively folded gallery certificate")
    typed(s)
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--i", type=int, required=True)
    s.add_argument("--nu-prime")
    s.set_defaults(fn=cmd_construct)

    s = sub.add_parser("verify", help="run the acceptance checks")
    s.add_argument("--only", type=int, nargs="*")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("enumerate", help="positively folded galleries of a type")
    typed(s)
    s.add_argument("--type-vec", default="")
    s.add_argument("--chimney", required=True, help="P,y such as 1,t^[-2,1]*s1s2")
    s.add_argument("--start")
    s.add_argument("--end")
    s.add_argument("--cap", type=int)
    s.set_defaults(fn=cmd_enumerate)

    s = sub.add_parser("nonempty", help="nonemptiness verdict over a y-window")
    typed(s)
    s.add_argument("--x", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--window", type=int)
    s.add_argument("--cap", type=int)
    s.set_defaults(fn=cmd_nonempty)

    s = sub.add_parser("render", help="rank-2 SVG picture")
    typed(s)
    s.add_argument("--out", required=True)
    s.add_argument("--scene", help="scene JSON file")
    s.add_argument("--lambda", dest="lam", help="draw the first-target certificate for lambda")
    s.add_argument("--i", type=int, default=1)
    s.add_argument("--signs", action="store_true")
    s.set_defaults(fn=cmd_render)
    return p


def run(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config(args.config)
        if "workers" in cfg and "ARTIFACT_WORKERS" not in os.environ:
            os.environ["ARTIFACT_WORKERS"] = str(int(cfg["workers"]))
        return args.fn(args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
