"""Command-line interface: ``magnuskit <command> ...``.

Exit codes: 0 success, 1 verification failure or mathematical error,
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .arith import bracket, to_text
from .errors import MagnusError, PolySyntaxError
from .geometry import Direction, decompose, newton_polygon, northeastern_vertex
from .hypotheses import gen_jacobian_pair, gen_power_pair, generic_boundaries, infer_ratio, rect_shape
from .magnus import magnus_solve, verify_magnus
from .parallelograms import build_decomposition, enumerate_broken_lines
from .parser import parse_poly
from .squares import complete_square, rectangle_pipeline, theorem_pipeline
from .svg import decomposition_svg, newton_svg, verdict_svg

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _colour(text: str, ok: bool) -> str:
    if os.environ.get("NO_COLOR") is not None or not sys.stdout.isatty():
        return text
    return f"\033[{32 if ok else 31}m{text}\033[0m"


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers 'u,v', got {text!r}") from None
    return a, b


def _direction(text: str) -> Direction:
    try:
        return Direction(*_pair(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _shape(text: str):
    if text.startswith("rect:"):
        mx, my = _pair(text[5:])
        return rect_shape(mx, my)
    try:
        return [_pair(p) for p in text.split(";") if p.strip()]
    except argparse.ArgumentTypeError:
        raise argparse.ArgumentTypeError(f"bad shape {text!r}; use 'rect:m,n' or 'i,j;i,j;...'") from None


def _pt(p):
    return [str(Fraction(c)) for c in p]


def _poly(args, name: str):
    text = getattr(args, name)
    if text is None:
        raise UsageError(f"-{name} is required")
    return parse_poly(text, laurent=args.laurent)


def _emit(args, report: dict, svg: str | None = None):
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if args.svg and svg is not None:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg)


# commands


def cmd_newton(args):
    F = _poly(args, "F")
    N = newton_polygon(F)
    print("vertices: " + " ".join(f"({v[0]},{v[1]})" for v in N.vertices))
    print("edge normals: " + " ".join(str(w) for w in N.edge_normals()))
    report = {"schema": 1, "kind": "newton", "F": to_text(F),
              "vertices": [list(v) for v in N.vertices],
              "edge_normals": [[w.u, w.v] for w in N.edge_normals()]}
    _emit(args, report, newton_svg(N, sorted(F.support())))
    return EXIT_OK


def cmd_decomp(args):
    F = _poly(args, "F")
    dec = decompose(F, args.w)
    comps = {}
    for n, c in dec.components.items():
        print(f"[{n}] {to_text(c)}")
        comps[str(n)] = to_text(c)
    _emit(args, {"schema": 1, "kind": "decomp", "w": [args.w.u, args.w.v], "degree": dec.degree,
                 "components": comps})
    return EXIT_OK


def cmd_bracket(args):
    F, G = _poly(args, "F"), _poly(args, "G")
    br = bracket(F, G)
    print(to_text(br))
    _emit(args, {"schema": 1, "kind": "bracket", "bracket": to_text(br), "constant": br.is_constant()})
    return EXIT_OK


def cmd_magnus_solve(args):
    F, G = _poly(args, "F"), _poly(args, "G")
    mc = magnus_solve(F, G, args.w, args.mu_max)
    print(f"d={mc.d} e={mc.e} r={mc.r} rho={mc.rho} H={to_text(mc.H)}")
    for gamma, (c, fz) in enumerate(zip(mc.coeffs, mc.forced_zero)):
        print(f"c'_{gamma} = {c}" + (" (forced zero)" if fz else ""))
    _emit(args, {"schema": 1, "kind": "magnus-solve", "coefficients": mc.to_dict()})
    return EXIT_OK


def cmd_magnus_verify(args):
    F, G = _poly(args, "F"), _poly(args, "G")
    rep = verify_magnus(F, G, args.w)
    for line in rep.lines():
        print(_colour(line, "PASS" in line))
    print(_colour(f"overall: {'PASS' if rep.passed else 'FAIL'}", rep.passed))
    _emit(args, rep.to_dict())
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_sqcomplete(args):
    F = _poly(args, "F")
    sq = complete_square(F, args.C)
    print(f"C = {sq.C}")
    print(f"P = {to_text(sq.P)}")
    print(f"R = {to_text(sq.R)}")
    report = {"schema": 1, "kind": "sqcomplete", **sq.to_dict()}
    svg = None
    if args.svg:
        N = newton_polygon(F)
        try:
            svg = decomposition_svg(build_decomposition(N, sq.C))
        except MagnusError:
            # no parallelogram cells without the origin as a vertex
            svg = newton_svg(N, sorted(F.support()))
    _emit(args, report, svg)
    return EXIT_OK


def cmd_genbound(args):
    F, G = _poly(args, "F"), _poly(args, "G")
    a, b = (args.a, args.b) if args.a and args.b else infer_ratio(F, G)
    hyp = generic_boundaries(F, G, a, b)
    print(f"a={a} b={b} bracket={'non-constant' if hyp.bracket_value is None else hyp.bracket_value}")
    print(f"similarity={hyp.similarity_ok} corners={hyp.corner_points_ok} min(a,b)>=2={hyp.min_ab_ok}")
    for d in hyp.directions:
        print(f"  w={d.w}: {'ok' if d.ok else 'FAIL'} {d.reason}".rstrip())
    print(_colour(f"generic boundaries: {hyp.generic_boundaries_ok}", bool(hyp.generic_boundaries_ok)))
    _emit(args, {"schema": 1, "kind": "genbound", **hyp.to_dict()})
    return EXIT_OK if hyp.generic_boundaries_ok else EXIT_FAIL


def cmd_verify_thm(args):
    F, G = _poly(args, "F"), _poly(args, "G")
    run = rectangle_pipeline if args.rectangle else theorem_pipeline
    v = run(F, G)
    for line in v.notes:
        print(f"note: {line}")
    for s in v.swept:
        status = "empty" if s.empty else f"VIOLATION {s.offending}"
        print(_colour(f"T_{s.index} {s.name}: {status}", s.empty))
    if v.P is not None:
        print(f"P = {to_text(v.P)}")
        print(f"R = {to_text(v.R)}")
    print(_colour(f"verdict: {v.conclusion}; bracket(F,G)=0: {v.bracket_zero}", v.passed))
    svg = None
    if args.svg and v.P is not None:
        N = newton_polygon(F)
        decomp = build_decomposition(N, northeastern_vertex(N))
        offending = [p for s in v.swept for p in s.offending]
        svg = verdict_svg(N, decomp, enumerate_broken_lines(decomp), offending)
    _emit(args, v.to_dict(), svg)
    return EXIT_OK if v.passed else EXIT_FAIL


def cmd_gen_pair(args):
    if args.kind == "jacobian":
        F, G = gen_jacobian_pair(args.seed, args.steps, args.degree_bound)
        report = {"schema": 1, "kind": "gen-pair", "family": "jacobian", "seed": args.seed,
                  "F": to_text(F), "G": to_text(G), "bracket": to_text(bracket(F, G))}
    else:
        u0 = Fraction(args.u0) if args.u0 is not None else None
        pp = gen_power_pair(args.seed, args.shape, args.k, u0)
        F, G = pp.F, pp.G
        report = {"schema": 1, "kind": "gen-pair", "family": "power", "seed": args.seed,
                  "F": to_text(F), "G": to_text(G), "P": to_text(pp.P), "u0": str(pp.u0),
                  "k": pp.k, "trials": pp.trials}
    print(f"F = {to_text(F)}")
    print(f"G = {to_text(G)}")
    _emit(args, report)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="magnuskit", description="Exact tools for Jacobian pairs.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_, F=True, G=False, w=False):
        p = sub.add_parser(name, help=help_)
        if F:
            p.add_argument("-F", required=True, help="polynomial F")
        if G:
            p.add_argument("-G", required=True, help="polynomial G")
        if w:
            p.add_argument("-w", type=_direction, required=True, help="direction u,v")
        p.add_argument("--laurent", action="store_true", help="allow negative exponents")
        p.add_argument("--json", metavar="PATH", help="write a JSON report")
        p.add_argument("--svg", metavar="PATH", help="write an SVG drawing")
        p.set_defaults(func=func)
        return p

    add("newton", cmd_newton, "Newton polygon of F")
    add("decomp", cmd_decomp, "w-homogeneous components of F", w=True)
    add("bracket", cmd_bracket, "Jacobian bracket [F, G]", G=True)
    p = add("magnus-solve", cmd_magnus_solve, "solve for Magnus coefficients", G=True, w=True)
    p.add_argument("--mu-max", type=int, default=None)
    add("magnus-verify", cmd_magnus_verify, "solve and independently verify", G=True, w=True)
    p = add("sqcomplete", cmd_sqcomplete, "complete F to a square")
    p.add_argument("-C", type=_pair, default=None, help="northeastern vertex i,j")
    p = add("genbound", cmd_genbound, "check the generic-boundary hypotheses", G=True)
    p.add_argument("-a", type=int, default=None)
    p.add_argument("-b", type=int, default=None)
    p = add("verify-thm", cmd_verify_thm, "check F = P^2 + u0 by the broken-line sweep", G=True)
    p.add_argument("--rectangle", action="store_true", help="use the rectangle pipeline")
    p = add("gen-pair", cmd_gen_pair, "generate a test pair", F=False)
    p.add_argument("kind", choices=["jacobian", "power"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, default=3)
    p.add_argument("--degree-bound", type=int, default=12)
    p.add_argument("--shape", type=_shape, default=rect_shape(1, 1),
                   help="N(P) as 'rect:m,n' or 'i,j;i,j;...'")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--u0", default=None, help="planted constant p/q")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except PolySyntaxError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MagnusError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
