"""``lagtori`` command line: classify, verify, quad, germ, probe, plot.

Exit codes: 0 all checks pass, 1 some check fails, 2 usage error or invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .classifier import classify_pq, classify_via_reduction, classify_xy, cross_check
from .disk_reduction import enclosed_area_closed, enclosed_area_quadrature, gamma_sample
from .energy_germs import find_linear_equivalence, germ_L, germ_T_diag
from .errors import LagtoriError, UsageError
from .polytopes import PQCoord, XYCoord, case_region
from .probes import p2_vertical_probe, validate_probe
from .svgplot import Figure, polytope_by_name
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _pair(text: str) -> tuple[float, float]:
    try:
        a, b = (float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'a,b', got {text!r}") from None
    return a, b


def _tol(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    try:
        return name.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance for {name!r} is not a number") from None


def _globals() -> argparse.ArgumentParser:
    # SUPPRESS so flags may appear before or after the subcommand without clobbering
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--tol", type=_tol, action="append", default=argparse.SUPPRESS, metavar="NAME=VALUE")
    g.add_argument("--grid", type=int, default=argparse.SUPPRESS, help="grid density (>= 4)")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="RNG seed (env LAGTORI_SEED)")
    g.add_argument("--out", default=argparse.SUPPRESS, help="write output here instead of stdout")
    g.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    return g


def build_parser() -> argparse.ArgumentParser:
    common = _globals()
    ap = _Parser(prog="lagtori", description=__doc__.splitlines()[0], parents=[common])
    ap.add_argument("--version", action="version", version=f"lagtori {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", parents=[common], help="classify L(x, y) or L1(p, q)")
    c.add_argument("--x", type=float)
    c.add_argument("--y", type=float)
    c.add_argument("--p", type=float)
    c.add_argument("--q", type=float)
    c.add_argument("--cross-check", action="store_true", help="also run the reduction route")

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--no-timing", action="store_true", help="zero all timings (byte-stable reports)")
    v.add_argument("--list", action="store_true", help="list check names and exit")

    q = sub.add_parser("quad", parents=[common], help="omega^p-area of the reduced curve")
    q.add_argument("--p", type=float, required=True)
    q.add_argument("--q", type=float, required=True)
    q.add_argument("--n", type=int, default=4096)
    q.add_argument("--reverse", action="store_true")
    q.add_argument("--curve-csv", help="also dump the sampled curve as theta,re,im")

    g = sub.add_parser("germ", parents=[common], help="compare germ_L(q) with germ_T_diag(xi)")
    g.add_argument("--q", type=float, required=True)
    g.add_argument("--xi", type=float, required=True)
    g.add_argument("--bound", type=int, default=3)

    p = sub.add_parser("probe", parents=[common], help="validate a probe")
    p.add_argument("--polytope", default="P2")
    p.add_argument("--base", type=_pair)
    p.add_argument("--direction", type=_pair)
    p.add_argument("--vertical", type=float, metavar="A", help="the P2 probe {p = A}")

    pl = sub.add_parser("plot", parents=[common], help="emit an SVG figure")
    pl.add_argument("--polytope", default="P1")
    pl.add_argument("--mark", type=_pair, action="append", default=[], metavar="X,Y")
    pl.add_argument("--probe", type=float, action="append", default=[], metavar="A")
    pl.add_argument("--classify", type=_pair, action="append", default=[], metavar="P,Q",
                    help="mark (p, q) in P2 and its fiber in P1, joined by an arrow")
    pl.add_argument("--title", default="")
    return ap


def _resolve(args) -> None:
    args.tol = dict(getattr(args, "tol", []) or [])
    args.grid = getattr(args, "grid", 8)
    args.out = getattr(args, "out", None)
    args.format = getattr(args, "format", "json")
    seed = getattr(args, "seed", None)
    if seed is None:
        env = os.environ.get("LAGTORI_SEED")
        try:
            seed = int(env) if env else 0
        except ValueError:
            raise UsageError(f"LAGTORI_SEED must be an integer, got {env!r}") from None
    args.seed = seed


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, doc) -> None:
    if args.format == "csv":
        keys = list(doc)
        row = ",".join("" if doc[k] is None else str(doc[k]) for k in keys)
        _emit(args, ",".join(keys) + "\n" + row + "\n")
    else:
        _emit(args, json.dumps(doc) + "\n")


def cmd_classify(args) -> int:
    xy = args.x is not None or args.y is not None
    pq = args.p is not None or args.q is not None
    if xy == pq:
        raise UsageError("give exactly one of (--x, --y) or (--p, --q)")
    if xy and (args.x is None or args.y is None):
        raise UsageError("--x and --y must be given together")
    if pq and (args.p is None or args.q is None):
        raise UsageError("--p and --q must be given together")
    out = classify_xy(XYCoord(args.x, args.y)) if xy else classify_pq(PQCoord(args.p, args.q))
    doc = out.to_json()
    doc["region"] = case_region(out.pq).value
    status = EXIT_OK
    if args.cross_check:
        tol = args.tol.get("cross_check", 1e-12)
        doc["cross_check"] = cross_check(out.pq, tol)
        if doc["cross_check"]["agree"] is False:
            status = EXIT_FAIL
    if args.format == "csv":
        flat = {k: v for k, v in doc.items() if k not in ("input", "cross_check")}
        flat.update(doc["input"])
        _emit_json(args, flat)
    else:
        _emit_json(args, doc)
    return status


def cmd_verify(args) -> int:
    if args.list:
        from .verify import CHECKS

        _emit(args, "".join(f"{c.suite}\t{c.name}\t{c.tolerance:g}\n" for c in CHECKS))
        return EXIT_OK
    report = run_suite(args.suite, args.grid, args.tol, args.seed, timing=not args.no_timing, jobs=args.jobs)
    _emit(args, report.to_csv() if args.format == "csv" else report.dumps())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_quad(args) -> int:
    pq = PQCoord(args.p, args.q)
    curve = gamma_sample(pq, args.n, reverse=args.reverse)
    area = enclosed_area_quadrature(curve, pq.p)
    doc = {"p": pq.p, "q": pq.q, "n": args.n, "orientation": curve.orientation.value, "area": area}
    status = EXIT_OK
    if 0 < pq.p**2 < pq.q**4:
        closed = enclosed_area_closed(pq, curve.orientation)
        tol = args.tol.get("quad", 1e-8)
        doc.update(closed=closed, error=abs(area - closed), tolerance=tol, passed=abs(area - closed) <= tol)
        status = EXIT_OK if doc["passed"] else EXIT_FAIL
    else:
        doc.update(closed=None, error=None, tolerance=None, passed=None)
    if args.curve_csv:
        Path(args.curve_csv).write_text(curve.to_csv())
    _emit_json(args, doc)
    return status


def cmd_germ(args) -> int:
    gl, gt = germ_L(args.q), germ_T_diag(args.xi)
    m = find_linear_equivalence(gl, gt, args.bound)
    doc = {
        "q": args.q,
        "xi": args.xi,
        "germ_L": gl.to_json(),
        "germ_T": gt.to_json(),
        "span_L": gl.span_dimension(),
        "span_T": gt.span_dimension(),
        "equivalent": m is not None,
        "matrix": None if m is None else m.tolist(),
    }
    if args.format == "csv":
        doc = {k: doc[k] for k in ("q", "xi", "span_L", "span_T", "equivalent")}
    _emit_json(args, doc)
    return EXIT_OK


def cmd_probe(args) -> int:
    if args.vertical is not None:
        if args.base is not None or args.direction is not None:
            raise UsageError("--vertical excludes --base/--direction")
        pr = p2_vertical_probe(args.vertical)
    else:
        if args.base is None or args.direction is None:
            raise UsageError("give --vertical A or both --base X,Y and --direction A,B")
        d = args.direction
        if not all(float(c).is_integer() for c in d):
            raise UsageError(f"direction {d} is not integral")
        pr = validate_probe(polytope_by_name(args.polytope), args.base, (int(d[0]), int(d[1])))
    doc = pr.to_json()
    if args.format == "csv":
        doc = {k: v for k, v in doc.items() if not isinstance(v, list)}
    _emit_json(args, doc)
    return EXIT_OK if pr.symmetric else EXIT_FAIL


def _label(x: float, y: float) -> str:
    return f"({x:g}, {y:g})"


def cmd_plot(args) -> int:
    poly = polytope_by_name(args.polytope)
    fig = Figure(poly, title=args.title)
    for x, y in args.mark:
        if not poly.contains((x, y)):
            raise UsageError(f"mark {(x, y)} lies outside {poly.name}")
        fig.marks.append((x, y, _label(x, y)))
    for a in args.probe:
        if poly.name != "P2":
            raise UsageError("--probe draws the vertical probe {p = a} and needs --polytope P2")
        pr = p2_vertical_probe(a)
        fig.segments.append((pr.point_at(0), pr.point_at(pr.length), f"p = {a:g}"))
    for p, q in args.classify:
        out = classify_pq(PQCoord(p, q))
        if poly.name == "P2":
            fig.marks.append((p, q, _label(p, q)))
            if out.fiber is not None:
                # the partner of a Case-2 point along its probe, in the same chart
                trace: list = []
                classify_via_reduction(out.pq, trace)
                for step, where, _ in trace:
                    if step == "probe":
                        fig.marks.append((where.p, where.q, _label(where.p, where.q)))
                        fig.arrows.append(((p, q), (where.p, where.q)))
        else:
            if out.fiber is None:
                raise UsageError(f"(p, q) = {(p, q)} is not a standard fiber; nothing to mark in P1")
            fig.marks.append((out.fiber.xi, out.fiber.zeta, f"T{_label(out.fiber.xi, out.fiber.zeta)}"))
            # the arrow follows the Case-2 move chain in P1
            trace = []
            classify_via_reduction(out.pq, trace)
            chain = [f for _, _, f in trace]
            for a, b in zip(chain, chain[1:]):
                if a != b:
                    fig.arrows.append((tuple(a), tuple(b)))
    svg = fig.render()
    if args.out:
        Path(args.out).write_text(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "verify": cmd_verify,
    "quad": cmd_quad,
    "germ": cmd_germ,
    "probe": cmd_probe,
    "plot": cmd_plot,
}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _resolve(args)
        if args.grid < 4:
            raise UsageError("--grid must be at least 4")
        return COMMANDS[args.command](args)
    except (LagtoriError, ValueError) as exc:
        print(f"lagtori: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"lagtori: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
