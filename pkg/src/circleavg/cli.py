"""Command-line front end.

Subcommands::

    circleavg refine   input.pnp -o out.pnp --scheme mlr --m 2 --levels 4
    circleavg normals  points.csv -o out.pnp [--closed]
    circleavg approx   [--check] [--csv]
    circleavg average  --p0 1,0 --n0 1,0 --p1 0,1 --n1 0,1 --w 0.5
    circleavg serve    --bind 127.0.0.1:8075

Exit codes: 0 success, 2 usage error (argparse), 3 input parse error,
4 geometric error, 5 --check mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .approximation import REFERENCE_STATS, format_report, approximation_report
from .errors import CurveError, PolygonParseError
from .geometry import PointNormalPair, UnitVector, circle_average_detailed
from .normals import naive_normals
from .polyio import (
    dumps_polygon,
    polygon_from_csv,
    polygon_to_csv,
    polygon_to_jsonable,
    polygon_to_svg,
    read_polygon,
)
from .subdivision import PnpPolygon, SchemeConfig, m4pt_step, refine
from . import service

EXIT_OK = 0
EXIT_PARSE = 3
EXIT_GEOMETRY = 4
EXIT_CHECK = 5

ARC_ABS_TOL = 2e-3
ARC_REL_TOL = 0.02
CIRCLE_REL_TOL = 0.05


def _read_input_polygon(path: str, closed: bool | None) -> PnpPolygon:
    if path.endswith(".csv"):
        with open(path, "r", encoding="utf-8") as fh:
            return polygon_from_csv(fh.read(), closed=bool(closed))
    return read_polygon(path, closed_override=closed)


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_refine(args) -> int:
    closed = True if args.closed else (False if args.open else None)
    try:
        polygon = _read_input_polygon(args.input, closed)
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PolygonParseError as exc:
        print(f"parse error in {args.input}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CurveError as exc:
        where = f" (index {exc.index})" if exc.index is not None else ""
        print(f"invalid polygon in {args.input}: {exc}{where}", file=sys.stderr)
        return EXIT_GEOMETRY

    try:
        config = SchemeConfig(args.scheme, args.levels, args.m)
        levels, diagnostics = refine(polygon, config)
    except (ValueError, CurveError) as exc:
        where = f" (index {exc.index})" if isinstance(exc, CurveError) and exc.index is not None else ""
        print(f"refinement failed: {exc}{where}", file=sys.stderr)
        return EXIT_GEOMETRY if isinstance(exc, CurveError) else EXIT_PARSE

    final = levels[-1]
    if args.format == "pnp":
        doc = polygon_to_jsonable(final)
        doc["diagnostics"] = diagnostics.as_dict()
        if args.emit_levels:
            doc["levels"] = [polygon_to_jsonable(p) for p in levels]
        _write_output(json.dumps(doc, indent=2) + "\n", args.output)
    elif args.format == "csv":
        text = polygon_to_csv(final)
        if args.emit_levels:
            text = "".join(
                f"# level {j}\n{polygon_to_csv(p)}" for j, p in enumerate(levels)
            )
        _write_output(text, args.output)
    else:
        _write_output(polygon_to_svg(final, tick_length=args.ticks), args.output)
    return EXIT_OK


def cmd_normals(args) -> int:
    try:
        pts = []
        with open(args.input, "r", encoding="utf-8") as fh:
            for i, line in enumerate(fh):
                if not line.strip():
                    continue
                cells = line.split(",")[:2]
                try:
                    pts.append([float(c) for c in cells])
                except ValueError:
                    print(f"parse error at line {i}: {line.strip()!r}", file=sys.stderr)
                    return EXIT_PARSE
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        polygon = naive_normals(np.array(pts), closed=args.closed)
    except CurveError as exc:
        where = f" (index {exc.index})" if exc.index is not None else ""
        print(f"normal initialization failed: {exc}{where}", file=sys.stderr)
        return EXIT_GEOMETRY
    _write_output(dumps_polygon(polygon), args.output)
    return EXIT_OK


def _four_point_probe() -> bool:
    # Insertion on collinear equal-normal data must hit the 4-point weights
    # -1/16, 9/16 exactly; a wrong extension weight moves the inserted point.
    poly = PnpPolygon(
        np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [7.0, 0.0]]),
        np.tile([0.0, 1.0], (4, 1)),
        closed=False,
    )
    out = m4pt_step(poly)
    expect = -(0.0 + 7.0) / 16.0 + 9.0 * (1.0 + 2.0) / 16.0
    return abs(out.points[3, 0] - expect) < 1e-12 and abs(out.points[3, 1]) < 1e-12


def cmd_approx(args) -> int:
    rows = approximation_report()
    print(format_report(rows, sep="," if args.csv else None))
    if not args.check:
        return EXIT_OK

    ok = True
    for row, ref in zip(rows, REFERENCE_STATS):
        ref_maxc, ref_maxa, ref_meanc, ref_meana = ref
        checks = [
            ("max_arc", row.max_arc, ref_maxa, max(ARC_ABS_TOL, ARC_REL_TOL * ref_maxa)),
            ("mean_arc", row.mean_arc, ref_meana, max(ARC_ABS_TOL, ARC_REL_TOL * ref_meana)),
            ("max_circle", row.max_circle, ref_maxc, CIRCLE_REL_TOL * ref_maxc),
            ("mean_circle", row.mean_circle, ref_meanc, CIRCLE_REL_TOL * ref_meanc),
        ]
        for name, got, want, tol in checks:
            if abs(got - want) > tol:
                print(
                    f"CHECK FAIL {row.curve} [{row.t0:.4f},{row.t1:.4f}] {name}: "
                    f"got {got:.5f}, reference {want:.5f} (tol {tol:.2g})"
                )
                ok = False
        if row.max_circle > row.max_arc + 1e-12 or row.mean_circle > row.mean_arc + 1e-12:
            print(f"CHECK FAIL {row.curve}: optimal circle beaten by the arc")
            ok = False
    if not _four_point_probe():
        print("CHECK FAIL four-point insertion probe (wrong scheme weights?)")
        ok = False
    print("CHECK " + ("PASS" if ok else "FAIL"))
    return EXIT_OK if ok else EXIT_CHECK


def _parse_vec(text: str) -> tuple[float, float]:
    cells = text.split(",")
    if len(cells) != 2:
        raise ValueError(f"expected 'x,y', got {text!r}")
    return float(cells[0]), float(cells[1])


def cmd_average(args) -> int:
    try:
        p0 = _parse_vec(args.p0)
        p1 = _parse_vec(args.p1)
        n0 = _parse_vec(args.n0)
        n1 = _parse_vec(args.n1)
    except ValueError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        pair0 = PointNormalPair(p0, UnitVector.normalized(*n0))
        pair1 = PointNormalPair(p1, UnitVector.normalized(*n1))
        result, arc, case = circle_average_detailed(pair0, pair1, args.w)
    except (ValueError, CurveError) as exc:
        print(f"average failed: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    print(f"p_w = ({result.point[0]!r}, {result.point[1]!r})")
    print(f"n_w = ({result.normal.x!r}, {result.normal.y!r})")
    if arc is not None:
        cx, cy = arc.circle.center
        print(f"arc center = ({cx!r}, {cy!r})  radius = {arc.circle.radius!r}")
        print(f"arc sweep  = {arc.sweep!r} rad")
    print(f"case: {case}")
    return EXIT_OK


def cmd_serve(args) -> int:
    service.serve(args.bind)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circleavg",
        description="Point-normal curve design via circle-average subdivision.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("refine", help="refine a polygon file")
    p.add_argument("input", help="polygon file (.pnp JSON or .csv)")
    p.add_argument("-o", "--output", default=None, help="output path (default stdout)")
    p.add_argument("--scheme", choices=["mlr", "m4pt", "llr", "l4pt"], default="mlr")
    p.add_argument("--m", type=int, default=1, help="smoothing degree (mlr/llr)")
    p.add_argument("--levels", type=int, default=1)
    p.add_argument("--closed", action="store_true", help="treat the polygon as closed")
    p.add_argument("--open", action="store_true", help="treat the polygon as open")
    p.add_argument("--format", choices=["pnp", "csv", "svg"], default="pnp")
    p.add_argument("--emit-levels", action="store_true", help="include every level")
    p.add_argument("--ticks", type=float, default=0.0, help="SVG normal tick length")
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("normals", help="attach naive normals to bare points")
    p.add_argument("input", help="CSV of x,y points")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--closed", action="store_true")
    p.set_defaults(func=cmd_normals)

    p = sub.add_parser("approx", help="arc vs least-squares circle report")
    p.add_argument("--check", action="store_true", help="verify against reference values")
    p.add_argument("--csv", action="store_true", help="comma-separated output")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("average", help="one circle average, spelled out")
    p.add_argument("--p0", required=True, help="first point 'x,y'")
    p.add_argument("--n0", required=True, help="first normal 'nx,ny'")
    p.add_argument("--p1", required=True, help="second point 'x,y'")
    p.add_argument("--n1", required=True, help="second normal 'nx,ny'")
    p.add_argument("--w", type=float, default=0.5, help="weight in [-1/4, 5/4]")
    p.set_defaults(func=cmd_average)

    p = sub.add_parser("serve", help="host the refinement service")
    p.add_argument("--bind", default="127.0.0.1:8075", help="host:port")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
