"""Arc-vs-optimal-circle approximation experiment on three analytic curves.

Samples a parametric curve at 101 uniform parameters, fits the circle
minimizing the sum of squared geometric distances, builds the selected arc
from the two endpoint point-normal pairs, and reports max/mean distances of
the samples to both. The three stock curves and their two parameter windows
each give one report row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import CollinearPoints, SingularTangent, ZeroAngle
from .geometry import ArcSpec, CircleSpec, PointNormalPair, UnitVector, select_arc, wrap_angle

GN_STEP_TOL = 1e-12
GN_MAX_ITER = 100


@dataclass(frozen=True)
class ParametricCurve:
    ident: str
    x: Callable[[float], float]
    y: Callable[[float], float]
    dx: Callable[[float], float]
    dy: Callable[[float], float]


CURVES = {
    "ellipse": ParametricCurve(
        "ellipse",
        lambda t: 2.0 * math.cos(t),
        lambda t: math.sin(t),
        lambda t: -2.0 * math.sin(t),
        lambda t: math.cos(t),
    ),
    "spiral": ParametricCurve(
        "spiral",
        lambda t: t * math.cos(t),
        lambda t: t * math.sin(t),
        lambda t: math.cos(t) - t * math.sin(t),
        lambda t: math.sin(t) + t * math.cos(t),
    ),
    "cubic": ParametricCurve(
        "cubic",
        lambda t: t**3 - 3.0 * t,
        lambda t: t**2 - 1.0,
        lambda t: 3.0 * t**2 - 3.0,
        lambda t: 2.0 * t,
    ),
}

# (curve, t0, t100) for the six report rows: each curve is run on two windows.
REPORT_CASES = (
    ("ellipse", 5.0 * math.pi / 8.0, math.pi),
    ("ellipse", 12.0 * math.pi / 16.0, 15.0 * math.pi / 16.0),
    ("spiral", 10.0 * math.pi / 8.0, 17.0 * math.pi / 8.0),
    ("spiral", 24.0 * math.pi / 16.0, 31.0 * math.pi / 16.0),
    ("cubic", 0.0, 6.0 * math.pi / 8.0),
    ("cubic", 3.0 * math.pi / 16.0, 9.0 * math.pi / 16.0),
)

# Reference statistics for the six rows (what approx --check compares against):
# (max_circle, max_arc, mean_circle, mean_arc).
REFERENCE_STATS = (
    (0.04145, 0.05984, 0.01315, 0.02909),
    (0.00580, 0.00710, 0.00193, 0.00377),
    (0.20098, 0.28437, 0.06613, 0.14787),
    (0.02337, 0.02643, 0.00794, 0.01530),
    (1.46814, 1.97726, 0.49597, 1.02364),
    (0.25617, 0.32838, 0.09297, 0.17556),
)


@dataclass(frozen=True)
class CircleFit:
    circle: CircleSpec
    rms_residual: float
    max_residual: float


@dataclass(frozen=True)
class ReportRow:
    curve: str
    t0: float
    t1: float
    max_circle: float
    max_arc: float
    mean_circle: float
    mean_arc: float


def sample_curve(
    curve: ParametricCurve, t0: float, t1: float, count: int = 101
) -> tuple[np.ndarray, UnitVector, UnitVector]:
    """Uniform samples plus the unit curve normals at both endpoints.

    Normals are the unit tangents rotated by +pi/2; only their consistent
    orientation matters to the arc (flipping both normals keeps it fixed).
    """
    if count < 2:
        raise ValueError(f"count must be >= 2, got {count}")
    if not t1 > t0:
        raise ValueError(f"need t1 > t0, got [{t0}, {t1}]")
    ts = np.linspace(t0, t1, count)
    pts = np.array([[curve.x(t), curve.y(t)] for t in ts])

    normals = []
    for t in (t0, t1):
        vx, vy = curve.dx(t), curve.dy(t)
        speed = math.hypot(vx, vy)
        if speed < 1e-12:
            raise SingularTangent(f"vanishing tangent of {curve.ident} at t={t}")
        normals.append(UnitVector(-vy / speed, vx / speed))
    return pts, normals[0], normals[1]


def _algebraic_circle(points: np.ndarray) -> tuple[float, float, float]:
    # Linear least squares on x^2+y^2 + D x + E y + F = 0 in centered coords.
    x = points[:, 0] - points[:, 0].mean()
    y = points[:, 1] - points[:, 1].mean()
    a = np.column_stack((x, y, np.ones(len(points))))
    b = -(x**2 + y**2)
    sol, _, rank, _ = np.linalg.lstsq(a, b, rcond=None)
    if rank < 3:
        raise CollinearPoints("points are collinear: no finite circle fits")
    cx, cy = -sol[0] / 2.0, -sol[1] / 2.0
    r2 = cx * cx + cy * cy - sol[2]
    if r2 <= 0.0:
        raise CollinearPoints("degenerate algebraic circle fit")
    return cx + points[:, 0].mean(), cy + points[:, 1].mean(), math.sqrt(r2)


def fit_circle_ls(points) -> CircleFit:
    """Circle minimizing the sum of squared geometric distances to the points.

    An algebraic fit provides the starting point; Gauss-Newton then refines
    center and radius on the residuals |p - c| - r until the step norm drops
    below 1e-12 (or 100 iterations).
    """
    pts = np.ascontiguousarray(points, dtype=np.float64)
    if len(pts) < 3:
        raise CollinearPoints(f"need >= 3 points, got {len(pts)}")
    u = pts[1:-1] - pts[0]
    v = pts[2:] - pts[0]
    area = np.abs(u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0])
    if np.max(area) < 1e-14 * (1.0 + np.max(np.abs(pts))) ** 2:
        raise CollinearPoints("points are collinear: no finite circle fits")

    cx, cy, r = _algebraic_circle(pts)
    for _ in range(GN_MAX_ITER):
        dx = pts[:, 0] - cx
        dy = pts[:, 1] - cy
        dist = np.hypot(dx, dy)
        res = dist - r
        jac = np.column_stack((-dx / dist, -dy / dist, -np.ones(len(pts))))
        step, *_ = np.linalg.lstsq(jac, -res, rcond=None)
        cx += step[0]
        cy += step[1]
        r += step[2]
        if np.linalg.norm(step) < GN_STEP_TOL:
            break

    dist = np.hypot(pts[:, 0] - cx, pts[:, 1] - cy)
    res = np.abs(dist - r)
    circle = CircleSpec((float(cx), float(cy)), float(r))
    return CircleFit(circle, float(np.sqrt(np.mean(res**2))), float(np.max(res)))


@dataclass(frozen=True)
class SegmentSpec:
    """Straight segment standing in for the arc when the normals coincide."""

    p0: tuple[float, float]
    p1: tuple[float, float]


def build_arc(p0: PointNormalPair, p1: PointNormalPair) -> "ArcSpec | SegmentSpec":
    """The selected circle-average arc through the two endpoint pairs.

    Equal normals yield the degenerate arc, represented as the segment
    between the points.
    """
    try:
        return select_arc(p0, p1)
    except ZeroAngle:
        return SegmentSpec(p0.point, p1.point)


def distance_to_circle(point, circle: CircleSpec) -> float:
    px, py = point
    cx, cy = circle.center
    return abs(math.hypot(px - cx, py - cy) - circle.radius)


def _distance_to_segment(point, seg: SegmentSpec) -> float:
    px, py = point
    ax, ay = seg.p0
    bx, by = seg.p1
    vx, vy = bx - ax, by - ay
    vv = vx * vx + vy * vy
    t = 0.0 if vv == 0.0 else max(0.0, min(1.0, ((px - ax) * vx + (py - ay) * vy) / vv))
    return math.hypot(px - (ax + t * vx), py - (ay + t * vy))


def distance_to_arc(point, arc: "ArcSpec | SegmentSpec") -> float:
    """Distance to the arc including its endpoints.

    If the radial projection of the point falls inside the sweep, the
    distance is the radial gap; otherwise it is the distance to the nearer
    endpoint. A degenerate (segment) arc uses the point-segment distance.
    """
    if isinstance(arc, SegmentSpec):
        return _distance_to_segment(point, arc)
    px, py = point
    cx, cy = arc.circle.center
    phi = math.atan2(py - cy, px - cx)
    offset = wrap_angle(phi - arc.start_angle)
    inside = (0.0 <= offset <= arc.sweep) if arc.sweep >= 0.0 else (arc.sweep <= offset <= 0.0)
    if inside:
        return distance_to_circle(point, arc.circle)
    d0 = math.hypot(px - arc.p0[0], py - arc.p0[1])
    d1 = math.hypot(px - arc.p1[0], py - arc.p1[1])
    return min(d0, d1)


def approximation_report() -> list[ReportRow]:
    """Run the approximation pipeline for all six (curve, window) rows."""
    rows = []
    for ident, t0, t1 in REPORT_CASES:
        curve = CURVES[ident]
        pts, n0, n1 = sample_curve(curve, t0, t1)
        fit = fit_circle_ls(pts)
        arc = build_arc(
            PointNormalPair((pts[0, 0], pts[0, 1]), n0),
            PointNormalPair((pts[-1, 0], pts[-1, 1]), n1),
        )
        rho = np.array([distance_to_circle(p, fit.circle) for p in pts])
        varrho = np.array([distance_to_arc(p, arc) for p in pts])
        rows.append(
            ReportRow(
                ident,
                t0,
                t1,
                float(np.max(rho)),
                float(np.max(varrho)),
                float(np.mean(rho)),
                float(np.mean(varrho)),
            )
        )
    return rows


def format_report(rows: list[ReportRow], sep: str | None = None) -> str:
    """Render rows as aligned text, or comma-separated when ``sep`` is ','."""
    header = ("curve", "t0", "t100", "max_circle", "max_arc", "mean_circle", "mean_arc")
    table = [header]
    for r in rows:
        table.append(
            (
                r.curve,
                f"{r.t0:.6f}",
                f"{r.t1:.6f}",
                f"{r.max_circle:.5f}",
                f"{r.max_arc:.5f}",
                f"{r.mean_circle:.5f}",
                f"{r.mean_arc:.5f}",
            )
        )
    if sep is not None:
        return "\n".join(sep.join(row) for row in table)
    widths = [max(len(row[c]) for row in table) for c in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in table]
    return "\n".join(lines)
