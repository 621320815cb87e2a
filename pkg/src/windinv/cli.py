"""Command-line interface.

Every subcommand prints one JSON object (or ``key: value`` lines with
``--format text``). Exit status: 0 computed, 2 bad input, 3 resource cap hit.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import __version__
from .commutators import ab_squared_obstruction, commutator_obstruction, gamma_membership
from .errors import ResourceExceeded, VerificationError
from .ideals import (
    DEFAULT_MAX_PAIRS,
    Presentation,
    center_obstruction,
    groebner_basis,
)
from .invariant import fox_pair, fundamental_identity_holds, kappa, winding_invariant
from .laurent import LPoly, parse_poly
from .metabelian import (
    cl2_decomposition,
    engel_verbal_obstruction,
    five_squares_decompose,
    square_length_bounds,
    three_squares_decide_partial,
)
from .powers import (
    cube_product_decide,
    engel_pth_decomposition,
    fourth_power_kappa_test,
    power_area_test,
    two_kth_powers_decide,
)
from .tilings import (
    boundary_word,
    normal_root_candidates,
    parse_region,
    symmetry_bisections,
    tilings_enumerate,
    translate_bisections,
    two_squares_identity,
)
from .words import Word


def _poly(p: LPoly) -> dict:
    return {"poly": str(p), "terms": p.to_json()}


def _input_poly(args) -> LPoly:
    if args.poly:
        return parse_poly(args.input)
    return winding_invariant(Word.parse(args.input))


def _cells(cells) -> list[list[int]]:
    return [list(c) for c in sorted(cells)]


def cmd_invariant(args) -> dict:
    w = Word.parse(args.word)
    return {"word": str(w), **_poly(winding_invariant(w))}


def cmd_area(args) -> dict:
    w = Word.parse(args.word)
    return {"word": str(w), "area": winding_invariant(w).area()}


def cmd_kappa(args) -> dict:
    w = Word.parse(args.word)
    return {
        "word": str(w),
        "kappa": kappa(w),
        "fourth_powers_possible": fourth_power_kappa_test(w),
        "theorem": "row-colouring-mod-4",
        "scope": "necessary-only",
    }


def cmd_fox(args) -> dict:
    w = Word.parse(args.word)
    f = fox_pair(w)
    out = {
        "word": str(w),
        "dx": str(f.dx),
        "dy": str(f.dy),
        "identity_holds": fundamental_identity_holds(w),
    }
    if w.in_commutator_subgroup():
        out["winding"] = str(winding_invariant(w))
    return out


def cmd_powers(args) -> dict:
    w = Word.parse(args.word)
    wit = two_kth_powers_decide(w, args.k)
    return {
        "word": str(w),
        "k": args.k,
        "witness": None
        if wit is None
        else {"a": str(wit.a), "b": str(wit.b), "offset": list(wit.offset)},
        "area_test": power_area_test(w, args.k),
        "theorem": "two-powers-divisibility",
        "scope": "M2",
    }


def cmd_cube(args) -> dict:
    w = Word.parse(args.word)
    return {
        "word": str(w),
        "product_of_cubes": cube_product_decide(w),
        "theorem": "cube-area-criterion",
        "scope": "M2",
    }


def cmd_commutator(args) -> dict:
    p = _input_poly(args)
    if args.square:
        r = ab_squared_obstruction(p)
        tag = "square-entry-coset-sums"
    else:
        must = [tuple(int(t) for t in v.split(",")) for v in args.contain]
        r = commutator_obstruction(p, must)
        tag = "equal-coset-sums"
    return {
        "poly": str(p),
        "verdict": r.verdict.value,
        "lattice": None if r.lattice is None else r.lattice.to_json(),
        "iota": r.iota,
        "theorem": tag,
        "scope": "necessary-only",
    }


def cmd_gamma(args) -> dict:
    w = Word.parse(args.word)
    member, parts = gamma_membership(w, args.m)
    return {
        "word": str(w),
        "m": args.m,
        "member": member,
        "components": None if parts is None else [str(q) for q in parts],
        "theorem": "taylor-vanishing",
        "scope": "M2",
    }


def cmd_squares(args) -> dict:
    w = Word.parse(args.word)
    lo, hi = square_length_bounds(w)
    out = {"word": str(w), "bounds": [lo, hi], "scope": "M2"}
    if args.five:
        out["five_squares"] = [str(f) for f in five_squares_decompose(w)]
        out["theorem"] = "five-squares"
    elif w.in_commutator_subgroup():
        t = three_squares_decide_partial(w)
        out["three_squares"] = t.status.value
        out["factors"] = None if t.factors is None else [str(f) for f in t.factors]
        out["theorem"] = t.reason
    return out


def cmd_cl(args) -> dict:
    p = _input_poly(args)
    d = cl2_decomposition(p)
    return {
        "poly": str(p),
        "commutators": [[str(a), str(b)] for a, b in (d.first, d.second)],
        "theorem": "commutator-length-two",
        "scope": "M2",
    }


def cmd_engel(args) -> dict:
    if args.prime is not None:
        d = engel_pth_decomposition(args.prime)
        return {
            "p": args.prime,
            "bases": [str(b) for b in d.bases],
            "theorem": "engel-prime-powers",
            "scope": "M2",
        }
    if args.word is None or args.n is None:
        raise ValueError("engel needs WORD and --n, or --prime")
    w = Word.parse(args.word)
    return {
        "word": str(w),
        "n": args.n,
        "obstructed": engel_verbal_obstruction(w, args.n),
        "theorem": "engel-taylor-divisibility",
        "scope": "necessary-only",
    }


def cmd_ideal(args) -> dict:
    pres = Presentation.parse(Path(args.relators).read_text())
    caps = {"max_pairs": args.max_pairs}
    gb = groebner_basis(pres.ideal(), **caps)
    out = {
        "relators": [str(r) for r in pres.relators],
        "quasi_perfect": gb.is_whole_ring(),
        "basis": [str(p) for p in gb.as_laurent()],
    }
    if args.word:
        w = Word.parse(args.word)
        nf = gb.normal_form(winding_invariant(w))
        out["word"] = str(w)
        out["normal_form"] = str(nf)
        out["in_ideal"] = not nf
    if args.center:
        g = Word.parse(args.center)
        out["center_obstruction"] = center_obstruction(pres, g, **caps)
        out["theorem"] = "central-monomial"
        out["scope"] = "necessary-only"
    return out


def cmd_tile(args) -> dict:
    r = parse_region(Path(args.region).read_text())
    out: dict = {"cells": len(r)}
    if args.action == "boundary":
        out["boundary_word"] = str(boundary_word(r))
    elif args.action == "bisect":
        out["bisections"] = [
            {"offset": list(b.offset), "tile": _cells(b.tile.cells)} for b in translate_bisections(r)
        ]
    elif args.action == "symmetric":
        out["bisections"] = [
            {"transform": b.transform, "offset": list(b.offset), "tile": _cells(b.tile.cells)}
            for b in symmetry_bisections(r)
        ]
    elif args.action == "squares":
        out["identities"] = []
        for b in translate_bisections(r):
            s = two_squares_identity(r, b)
            out["identities"].append(
                {"offset": list(b.offset), "a": str(s.a), "b": str(s.b), "base": list(s.base)}
            )
    elif args.action == "roots":
        nr = normal_root_candidates(r, cell_budget=args.cell_budget)
        out["roots"] = [{"word": str(wd), "divisible": ok} for wd, ok in nr.roots]
        out["truncated"] = nr.truncated
    elif args.action == "enumerate":
        tiles = [parse_region(Path(t).read_text()) for t in args.tiles]
        rep = tilings_enumerate(r, tiles, translates_only=args.translates_only)
        out["tilings"] = len(rep.tilings)
        out["counts"] = [list(c) for c in sorted(set(rep.counts))]
        out["counts_invariant"] = rep.counts_invariant
        out["truncated"] = rep.truncated
    return out


def cmd_selfcheck(args) -> dict:
    rng = random.Random(args.seed)

    def rand_word(n):
        return Word(tuple((rng.choice("xy"), rng.choice((-1, 1))) for _ in range(n)))

    def rand_comm(n):
        u = rand_word(n)
        return u * Word((("y", -u.exp_y), ("x", -u.exp_x)))

    failures = 0
    for _ in range(args.count):
        a, b = rand_comm(rng.randint(0, 12)), rand_comm(rng.randint(0, 12))
        if winding_invariant(a * b) != winding_invariant(a) + winding_invariant(b):
            failures += 1
    return {"seed": args.seed, "checked": args.count, "failures": failures}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="windinv", description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def word_cmd(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("word")
        p.set_defaults(fn=fn)
        return p

    word_cmd("invariant", cmd_invariant, "winding polynomial of a word")
    word_cmd("area", cmd_area, "signed area of a word")
    word_cmd("kappa", cmd_kappa, "row-colouring count and fourth-power test")
    word_cmd("fox", cmd_fox, "abelianized Fox derivatives")
    p = word_cmd("powers", cmd_powers, "decide a^k b^k")
    p.add_argument("--k", type=int, required=True)
    word_cmd("cube", cmd_cube, "decide product of cubes")
    p = word_cmd("gamma", cmd_gamma, "lower central series membership")
    p.add_argument("--m", type=int, required=True)
    p = word_cmd("squares", cmd_squares, "square length bounds and decompositions")
    p.add_argument("--five", action="store_true", help="print a five-squares decomposition")

    for name, fn, help_ in (
        ("commutator", cmd_commutator, "obstruct commutator shapes"),
        ("cl", cmd_cl, "two-commutator decomposition"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("input", help="a word, or a polynomial with --poly")
        p.add_argument("--poly", action="store_true")
        p.set_defaults(fn=fn)
        if name == "commutator":
            p.add_argument("--square", action="store_true", help="test the shape [a^2, b]")
            p.add_argument("--contain", action="append", default=[], metavar="N,M")

    p = sub.add_parser("engel", help="Engel verbal obstruction or p-th power decomposition")
    p.add_argument("word", nargs="?")
    p.add_argument("--n", type=int)
    p.add_argument("--prime", type=int)
    p.set_defaults(fn=cmd_engel)

    p = sub.add_parser("ideal", help="ideal of a presentation's relators")
    p.add_argument("relators", help="file with one relator word per line")
    p.add_argument("word", nargs="?")
    p.add_argument("--center", metavar="WORD")
    p.add_argument("--max-pairs", type=int, default=DEFAULT_MAX_PAIRS)
    p.set_defaults(fn=cmd_ideal)

    p = sub.add_parser("tile", help="region boundary words, bisections and tilings")
    p.add_argument("action", choices=("boundary", "bisect", "symmetric", "squares", "roots", "enumerate"))
    p.add_argument("region")
    p.add_argument("--tiles", nargs="*", default=[])
    p.add_argument("--translates-only", action="store_true")
    p.add_argument("--cell-budget", type=int, default=12)
    p.set_defaults(fn=cmd_tile)

    p = sub.add_parser("selfcheck", help="randomized homomorphism check")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=200)
    p.set_defaults(fn=cmd_selfcheck)
    return ap


def _emit(obj: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, separators=(",", ":")))
    else:
        for k, v in obj.items():
            print(f"{k}: {v if isinstance(v, str) else json.dumps(v)}")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.fn(args)
    except ResourceExceeded as exc:
        _emit({"error": "ResourceExceeded", "message": str(exc)}, args.format)
        return 3
    except VerificationError:
        raise
    except (ValueError, OSError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args.format)
        return 2
    _emit({"command": args.command, **out}, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
