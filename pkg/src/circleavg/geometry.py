"""Weighted circle average of two point-normal pairs, and its arc primitives.

A point-normal pair (PNP) is a 2D point together with a unit normal. The
weighted average of two PNPs travels along a circular arc chosen from the
two circles through both points whose central angle equals the angle between
the normals; the normal part is a geodesic (angular) average. The selection
of the arc and the handling of degenerate configurations follow a fixed rule
set so the average depends continuously on its inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    AntipodalNormals,
    DegeneratePoints,
    ParallelLines,
    WeightOutOfRange,
    ZeroAngle,
)

# Weight domain accepted by the average. Interior weights [0, 1] interpolate;
# the margin covers the 4-point scheme's -1/8 extension with room to spare.
WEIGHT_MIN = -0.25
WEIGHT_MAX = 1.25

# Angle below which the construction switches to the straight-segment case
# (the candidate-circle radius diverges like 1/theta).
THETA_ZERO_TOL = 1e-12

# Distance within pi at which normals count as antipodal (undefined average).
THETA_PI_TOL = 1e-12

# Relative tolerance for coincident points.
COINCIDENT_REL_TOL = 1e-14

# |sin(angle between a normal and the chord)| below this counts as parallel
# to the chord, triggering the tie-breaking rule of the arc selection.
PARALLEL_SIN_TOL = 1e-12

Point = tuple[float, float]


@dataclass(frozen=True)
class UnitVector:
    """A 2D direction of unit Euclidean length."""

    x: float
    y: float

    def __post_init__(self):
        norm = math.hypot(self.x, self.y)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"not a unit vector: ({self.x}, {self.y}), |.|={norm}")

    @classmethod
    def normalized(cls, x: float, y: float) -> "UnitVector":
        norm = math.hypot(x, y)
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(x / norm, y / norm)

    @classmethod
    def from_angle(cls, angle: float) -> "UnitVector":
        return cls(math.cos(angle), math.sin(angle))

    @property
    def angle(self) -> float:
        """Canonical angle in (-pi, pi]."""
        a = math.atan2(self.y, self.x)
        return math.pi if a == -math.pi else a

    def negated(self) -> "UnitVector":
        return UnitVector(-self.x, -self.y)


@dataclass(frozen=True)
class PointNormalPair:
    """A 2D point with a unit normal: the datum refined by all schemes here."""

    point: Point
    normal: UnitVector

    @classmethod
    def of(cls, px: float, py: float, nx: float, ny: float) -> "PointNormalPair":
        return cls((float(px), float(py)), UnitVector.normalized(nx, ny))


@dataclass(frozen=True)
class CircleSpec:
    center: Point
    radius: float

    def __post_init__(self):
        if not self.radius > 0.0:
            raise ValueError(f"radius must be positive, got {self.radius}")


@dataclass(frozen=True)
class ArcSpec:
    """A directed circular arc from ``p0`` to ``p1``.

    ``sweep`` is the signed central angle from the ``p0`` side to the ``p1``
    side; its magnitude equals the angle between the generating normals and
    never exceeds pi (short arc).
    """

    circle: CircleSpec
    start_angle: float
    end_angle: float
    sweep: float
    p0: Point
    p1: Point

    def __post_init__(self):
        if abs(self.sweep) > math.pi + 1e-12:
            raise ValueError(f"sweep {self.sweep} exceeds pi: not a short arc")
        r = self.circle.radius
        cx, cy = self.circle.center
        for p in (self.p0, self.p1):
            if abs(math.hypot(p[0] - cx, p[1] - cy) - r) > 1e-10 * r:
                raise ValueError(f"arc endpoint {p} does not lie on the circle")

    def point_at(self, fraction: float) -> Point:
        """Point at the given fraction of the sweep (0 -> p0, 1 -> p1)."""
        a = self.start_angle + fraction * self.sweep
        cx, cy = self.circle.center
        r = self.circle.radius
        return (cx + r * math.cos(a), cy + r * math.sin(a))

    @property
    def length(self) -> float:
        return abs(self.sweep) * self.circle.radius


@dataclass(frozen=True)
class AverageWeight:
    """A validated average weight in [-1/4, 5/4]."""

    value: float

    def __post_init__(self):
        check_weight(self.value)


def check_weight(w: float) -> float:
    if not (WEIGHT_MIN <= w <= WEIGHT_MAX):
        raise WeightOutOfRange(
            f"weight {w} outside [{WEIGHT_MIN}, {WEIGHT_MAX}]"
        )
    return float(w)


def _as_weight(w: "float | AverageWeight") -> float:
    if isinstance(w, AverageWeight):
        return w.value
    return check_weight(float(w))


def cross2(ax: float, ay: float, bx: float, by: float) -> float:
    return ax * by - ay * bx


def wrap_angle(a: float) -> float:
    """Wrap to (-pi, pi]."""
    w = math.fmod(a, 2.0 * math.pi)
    if w <= -math.pi:
        w += 2.0 * math.pi
    elif w > math.pi:
        w -= 2.0 * math.pi
    return w


def angle_between(u: UnitVector, v: UnitVector) -> float:
    """Unsigned angle between two unit vectors, in [0, pi]."""
    dot = u.x * v.x + u.y * v.y
    crs = cross2(u.x, u.y, v.x, v.y)
    return abs(math.atan2(crs, dot))


def geodesic_average(u: UnitVector, v: UnitVector, w: "float | AverageWeight") -> UnitVector:
    """Angular interpolation of two unit vectors along the shorter arc.

    The second angle is lifted so that it differs from the first by at most
    pi, then the result direction has angle (1-w)*alpha + w*beta. Antipodal
    inputs are rejected: the rotation direction would be ambiguous.
    """
    w = _as_weight(w)
    alpha = math.atan2(u.y, u.x)
    delta = wrap_angle(math.atan2(v.y, v.x) - alpha)
    if math.pi - abs(delta) < THETA_PI_TOL:
        raise AntipodalNormals("geodesic average of antipodal directions is undefined")
    return UnitVector.from_angle(alpha + w * delta)


def _pair_frame(p0: PointNormalPair, p1: PointNormalPair):
    """Chord vector, its length, and the signed normal rotation delta."""
    cx = p1.point[0] - p0.point[0]
    cy = p1.point[1] - p0.point[1]
    dist = math.hypot(cx, cy)
    alpha0 = math.atan2(p0.normal.y, p0.normal.x)
    delta = wrap_angle(math.atan2(p1.normal.y, p1.normal.x) - alpha0)
    return cx, cy, dist, alpha0, delta


def candidate_circles(p0: PointNormalPair, p1: PointNormalPair) -> tuple[CircleSpec, CircleSpec]:
    """The two circles through both points subtending the normal angle.

    Both centers lie on the perpendicular bisector of the chord, symmetric
    about it, and both circles have radius |p0 p1| / (2 sin(theta/2)). The
    first returned circle has its center in the left half-plane of the chord
    direction, the second in the right half-plane.
    """
    cx, cy, dist, _, delta = _pair_frame(p0, p1)
    theta = abs(delta)
    if dist == 0.0:
        raise DegeneratePoints("coincident points admit no candidate circles")
    if theta < THETA_ZERO_TOL:
        raise ZeroAngle("equal normals: candidate-circle radius diverges")
    if math.pi - theta < THETA_PI_TOL:
        raise AntipodalNormals("antipodal normals: construction undefined")

    radius = dist / (2.0 * math.sin(0.5 * theta))
    h = 0.5 * dist / math.tan(0.5 * theta)
    mx = 0.5 * (p0.point[0] + p1.point[0])
    my = 0.5 * (p0.point[1] + p1.point[1])
    # Unit perpendicular on the left of the chord direction.
    ux, uy = -cy / dist, cx / dist
    left = CircleSpec((mx + h * ux, my + h * uy), radius)
    right = CircleSpec((mx - h * ux, my - h * uy), radius)
    return left, right


def _arc_side(p0: PointNormalPair, p1: PointNormalPair, cx: float, cy: float, dist: float) -> float:
    """Which half-plane of the chord the selected arc lies in (+1 left, -1 right).

    Implements the selection rule: with q the intersection of the two normal
    lines, the arc on q's side is chosen when the normals sit in different
    half-planes of the chord, and the opposite arc otherwise. A normal lying
    on the chord line routes to the tie rule that keeps the selection
    continuous in the data.
    """
    n0, n1 = p0.normal, p1.normal
    s0 = cross2(cx, cy, n0.x, n0.y)  # dist * sin(angle(chord, n0))
    s1 = cross2(cx, cy, n1.x, n1.y)
    tol = PARALLEL_SIN_TOL * dist

    if abs(s1) < tol or abs(s0) < tol:
        # Tie rule: treat both normals as same-half-plane; place q by the
        # orientation of the parallel normal along the chord.
        if abs(s1) < tol:
            along = (cx * n1.x + cy * n1.y) / dist  # cos(angle(n1, chord))
            q_side = math.copysign(1.0, s0) if along < 0.0 else -math.copysign(1.0, s0)
        else:
            along = (cx * n0.x + cy * n0.y) / dist
            q_side = -math.copysign(1.0, s1) if along < 0.0 else math.copysign(1.0, s1)
        return -q_side

    denom = cross2(n0.x, n0.y, n1.x, n1.y)
    if denom == 0.0:
        # Cannot happen for theta in (0, pi) with both normals off the chord.
        raise ParallelLines("normal lines are parallel with nonzero normal angle")
    # q = p0 + t0*n0 with t0 = cross(chord, n1)/cross(n0, n1), so the side of
    # q relative to the chord is the sign of t0 * cross(chord, n0).
    q_side = math.copysign(1.0, (s1 / denom) * s0)
    different = (s0 > 0.0) != (s1 > 0.0)
    return q_side if different else -q_side


def select_arc(p0: PointNormalPair, p1: PointNormalPair) -> ArcSpec:
    """The selected short arc of the circle average of two PNPs."""
    cx, cy, dist, _, delta = _pair_frame(p0, p1)
    theta = abs(delta)
    if dist == 0.0:
        raise DegeneratePoints("coincident points: the arc degenerates to a point")
    if theta < THETA_ZERO_TOL:
        raise ZeroAngle("equal normals: the 'arc' is the straight segment")
    if math.pi - theta < THETA_PI_TOL:
        raise AntipodalNormals("antipodal normals: construction undefined")

    left, right = candidate_circles(p0, p1)
    side = _arc_side(p0, p1, cx, cy, dist)
    # The short arc bulges away from its center: the candidate whose center
    # lies in the opposite half-plane carries the arc on the selected side.
    circle = right if side > 0.0 else left
    ocx, ocy = circle.center
    start = math.atan2(p0.point[1] - ocy, p0.point[0] - ocx)
    end = math.atan2(p1.point[1] - ocy, p1.point[0] - ocx)
    # Traversal direction from p0 to p1 along the short arc: away from the
    # selected side's center, i.e. counterclockwise when the arc is on the
    # right of the chord.
    sweep = -side * theta
    return ArcSpec(circle, start, end, sweep, p0.point, p1.point)


def circle_average(
    p0: PointNormalPair, p1: PointNormalPair, w: "float | AverageWeight"
) -> PointNormalPair:
    """Weighted average of two PNPs: point on the selected arc, normal geodesic.

    For w in [0, 1] the point interpolates along the arc (central angle from
    p0 equals w * theta); weights outside [0, 1] extend the arc past the
    corresponding endpoint. Degeneracies: equal normals reduce to the affine
    point average; coincident points keep the point and average the normals;
    antipodal normals are rejected.
    """
    pair, _, _ = circle_average_detailed(p0, p1, w)
    return pair


def circle_average_detailed(
    p0: PointNormalPair, p1: PointNormalPair, w: "float | AverageWeight"
) -> tuple[PointNormalPair, ArcSpec | None, str]:
    """Like :func:`circle_average` but also reports the arc and which case fired.

    The case is one of ``"generic"``, ``"equal-normals"`` (straight-segment
    reduction) and ``"coincident-points"``.
    """
    w = _as_weight(w)
    cx, cy, dist, alpha0, delta = _pair_frame(p0, p1)
    theta = abs(delta)

    if math.pi - theta < THETA_PI_TOL:
        raise AntipodalNormals("antipodal normals: construction undefined")

    scale = 1.0 + max(
        abs(p0.point[0]), abs(p0.point[1]), abs(p1.point[0]), abs(p1.point[1])
    )
    if dist < COINCIDENT_REL_TOL * scale:
        normal = UnitVector.from_angle(alpha0 + w * delta)
        return PointNormalPair(p0.point, normal), None, "coincident-points"

    if theta < THETA_ZERO_TOL:
        point = (p0.point[0] + w * cx, p0.point[1] + w * cy)
        normal = UnitVector.from_angle(alpha0 + w * delta)
        return PointNormalPair(point, normal), None, "equal-normals"

    arc = select_arc(p0, p1)
    ocx, ocy = arc.circle.center
    rot = w * arc.sweep
    vx = p0.point[0] - ocx
    vy = p0.point[1] - ocy
    # p_w = p0 + (R(rot) - I) v with cos(rot)-1 = -2 sin^2(rot/2): every term
    # stays O(|p0 p1|) even when the center sits ~1/theta away.
    k = -2.0 * math.sin(0.5 * rot) ** 2
    sr = math.sin(rot)
    point = (p0.point[0] + k * vx - sr * vy, p0.point[1] + k * vy + sr * vx)
    normal = UnitVector.from_angle(alpha0 + w * delta)
    return PointNormalPair(point, normal), arc, "generic"


def chord_length(
    p0: PointNormalPair, p1: PointNormalPair, w: "float | AverageWeight"
) -> float:
    """Distance |p0 p_w| from the first point to the weighted average point.

    Equals |p0 p1| * sin(|w| theta / 2) / sin(theta / 2); for w = 1/2 this is
    |p0 p1| / (2 cos(theta/4)), the insertion bound of the refinement step.
    """
    w = _as_weight(w)
    _, _, dist, _, delta = _pair_frame(p0, p1)
    theta = abs(delta)
    if math.pi - theta < THETA_PI_TOL:
        raise AntipodalNormals("antipodal normals: construction undefined")
    if theta < THETA_ZERO_TOL:
        return abs(w) * dist
    return dist * math.sin(abs(w) * theta / 2.0) / math.sin(theta / 2.0)
