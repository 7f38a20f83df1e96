"""Reading and writing point-normal polygons.

Canonical format: a JSON document with a boolean ``closed`` and a ``points``
list of ``{"p": [x, y], "n": [nx, ny]}`` records. The ``n`` entries are
optional per file; a file without normals gets them from the naive
initialization on load. Floats are serialized with ``repr``, whose shortest
round-trip representation (at most 17 significant digits) reproduces every
coordinate exactly on re-read.

Also exports one-vertex-per-line CSV (``x,y,nx,ny``) and an SVG preview.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import PolygonParseError
from .normals import naive_normals
from .subdivision import PnpPolygon


def polygon_to_jsonable(polygon: PnpPolygon, include_normals: bool = True) -> dict:
    pts = polygon.points.tolist()  # single C-level pass; rows of Python floats
    if include_normals:
        nrm = polygon.normals.tolist()
        points = [{"p": p, "n": n} for p, n in zip(pts, nrm)]
    else:
        points = [{"p": p} for p in pts]
    return {"closed": bool(polygon.closed), "points": points}


def dumps_polygon(polygon: PnpPolygon, include_normals: bool = True) -> str:
    return json.dumps(polygon_to_jsonable(polygon, include_normals), indent=2) + "\n"


def polygon_from_jsonable(doc, closed_override: bool | None = None) -> PnpPolygon:
    if not isinstance(doc, dict):
        raise PolygonParseError("polygon document must be a JSON object")
    if "points" not in doc or not isinstance(doc["points"], list):
        raise PolygonParseError("polygon document needs a 'points' list")
    closed = doc.get("closed", False)
    if not isinstance(closed, bool):
        raise PolygonParseError("'closed' must be a boolean")
    if closed_override is not None:
        closed = closed_override

    pts, nrms = [], []
    has_normal = None
    for i, rec in enumerate(doc["points"]):
        if not isinstance(rec, dict) or "p" not in rec:
            raise PolygonParseError(f"point record {i} needs a 'p' entry", index=i)
        p = rec["p"]
        if not (isinstance(p, list) and len(p) == 2):
            raise PolygonParseError(f"point record {i}: 'p' must be [x, y]", index=i)
        try:
            pts.append([float(p[0]), float(p[1])])
        except (TypeError, ValueError):
            raise PolygonParseError(f"point record {i}: non-numeric coordinate", index=i)
        this_has = "n" in rec
        if has_normal is None:
            has_normal = this_has
        elif has_normal != this_has:
            raise PolygonParseError(
                "either every point carries a normal or none does", index=i
            )
        if this_has:
            nv = rec["n"]
            if not (isinstance(nv, list) and len(nv) == 2):
                raise PolygonParseError(f"point record {i}: 'n' must be [nx, ny]", index=i)
            nx, ny = float(nv[0]), float(nv[1])
            norm = math.hypot(nx, ny)
            if norm == 0.0:
                raise PolygonParseError(f"point record {i}: zero normal", index=i)
            if abs(norm - 1.0) > 1e-12:  # forgiving for hand-written files,
                nx, ny = nx / norm, ny / norm  # exact for round-trips
            nrms.append([nx, ny])

    if not pts:
        raise PolygonParseError("empty 'points' list")
    points = np.array(pts)
    if has_normal:
        return PnpPolygon(points, np.array(nrms), closed)
    return naive_normals(points, closed)


def loads_polygon(text: str, closed_override: bool | None = None) -> PnpPolygon:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PolygonParseError(f"invalid JSON: {exc}") from exc
    return polygon_from_jsonable(doc, closed_override)


def read_polygon(path: str, closed_override: bool | None = None) -> PnpPolygon:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_polygon(fh.read(), closed_override)


def write_polygon(path: str, polygon: PnpPolygon) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_polygon(polygon))


def polygon_to_csv(polygon: PnpPolygon) -> str:
    lines = [
        f"{px!r},{py!r},{nx!r},{ny!r}"
        for (px, py), (nx, ny) in zip(
            polygon.points.tolist(), polygon.normals.tolist()
        )
    ]
    return "\n".join(lines) + "\n"


def polygon_from_csv(text: str, closed: bool = False) -> PnpPolygon:
    pts, nrms = [], []
    rows = [ln for ln in text.splitlines() if ln.strip()]
    for i, line in enumerate(rows):
        cells = line.split(",")
        if len(cells) not in (2, 4):
            raise PolygonParseError(
                f"line {i}: expected 'x,y' or 'x,y,nx,ny'", index=i
            )
        try:
            vals = [float(c) for c in cells]
        except ValueError:
            raise PolygonParseError(f"line {i}: non-numeric value", index=i)
        pts.append(vals[:2])
        if len(vals) == 4:
            nrms.append(vals[2:])
    if nrms and len(nrms) != len(pts):
        raise PolygonParseError("either every line carries a normal or none does")
    if nrms:
        nrm = np.array(nrms)
        norms = np.hypot(nrm[:, 0], nrm[:, 1])
        fix = np.abs(norms - 1.0) > 1e-12
        nrm[fix] /= norms[fix, None]
        return PnpPolygon(np.array(pts), nrm, closed)
    return naive_normals(np.array(pts), closed)


def polygon_to_svg(
    polygon: PnpPolygon, tick_length: float = 0.0, stroke_width: float | None = None
) -> str:
    """SVG preview: the polyline plus optional normal tick marks.

    The viewBox fits the geometry with a 5% margin; y grows upward in the
    model, so the points are mirrored into SVG's downward y-axis.
    """
    pts = polygon.points
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    span = np.maximum(hi - lo, 1e-9)
    margin = 0.05 * float(np.max(span)) + tick_length
    x0, y0 = lo[0] - margin, lo[1] - margin
    w = float(hi[0] - lo[0] + 2 * margin)
    h = float(hi[1] - lo[1] + 2 * margin)
    if stroke_width is None:
        stroke_width = 0.004 * max(w, h)

    def sy(y: float) -> float:
        return (y0 + h) - (y - y0)

    coords = " ".join(f"{x:.6g},{sy(y):.6g}" for x, y in pts)
    tag = "polygon" if polygon.closed else "polyline"
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0:.6g} {y0:.6g} {w:.6g} {h:.6g}">',
        f'  <{tag} points="{coords}" fill="none" stroke="black" stroke-width="{stroke_width:.6g}"/>',
    ]
    if tick_length > 0.0:
        for (px, py), (nx, ny) in zip(pts, polygon.normals):
            qx, qy = px + tick_length * nx, py + tick_length * ny
            parts.append(
                f'  <line x1="{px:.6g}" y1="{sy(py):.6g}" x2="{qx:.6g}" y2="{sy(qy):.6g}"'
                f' stroke="crimson" stroke-width="{0.6 * stroke_width:.6g}"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
