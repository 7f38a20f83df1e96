"""Refinement schemes for point-normal polygons and their convergence diagnostics.

Four schemes share one stencil machinery:

* ``mlr``  - smoothing-degree-m refinement: insert midpoint circle averages,
  then run m-1 passes replacing each entry by the circle average of adjacent
  entries (degree 1 is the plain insertion step).
* ``m4pt`` - interpolatory scheme: keep every vertex and insert
  ``(P_i avg_{-1/8} P_{i-1}) avg_{1/2} (P_{i+1} avg_{-1/8} P_{i+2})``.
* ``llr`` / ``l4pt`` - the same combinatorics with affine point averages
  (normals still averaged geodesically so the output type is uniform);
  these serve as oracles whenever all normals agree.

Closed polygons use cyclic indexing. Open polygons hold their endpoints
fixed: smoothing passes shrink the index range and the two original
endpoints are re-attached, and the interpolatory scheme falls back to the
midpoint average for the first and last insertion where the wide stencil
would run off the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._kernels import affine_pair_average, circle_pair_average
from .errors import AntipodalNormals, TooFewVertices
from .geometry import PointNormalPair, UnitVector

SCHEMES = ("mlr", "m4pt", "llr", "l4pt")

# Vertex count doubles per level; 20 levels of a 200-vertex polygon is already
# ~2e8 vertices, far beyond interactive use.
LEVEL_CAP = 20

FOUR_POINT_EXTENSION_WEIGHT = -0.125

_ANTIPODAL_TOL = 1e-12


@dataclass
class PnpPolygon:
    """An ordered sequence of point-normal pairs, open or closed."""

    points: np.ndarray  # (n, 2) float64
    normals: np.ndarray  # (n, 2) float64, unit rows
    closed: bool = False

    def __post_init__(self):
        self.points = np.ascontiguousarray(self.points, dtype=np.float64)
        self.normals = np.ascontiguousarray(self.normals, dtype=np.float64)
        if self.points.ndim != 2 or self.points.shape[1] != 2:
            raise ValueError("points must have shape (n, 2)")
        if self.normals.shape != self.points.shape:
            raise ValueError("normals must match points in shape")
        n = len(self.points)
        if n < (3 if self.closed else 2):
            raise TooFewVertices(
                f"need at least {3 if self.closed else 2} vertices, got {n}"
            )
        norms = np.hypot(self.normals[:, 0], self.normals[:, 1])
        if np.any(np.abs(norms - 1.0) > 1e-12):
            bad = int(np.argmax(np.abs(norms - 1.0)))
            raise ValueError(f"normal at index {bad} is not unit length")
        a = self.angles()
        d = _wrap(a[_next_idx(n, self.closed)] - a[_pair_idx(n, self.closed)])
        if d.size and np.max(np.abs(d)) > math.pi - _ANTIPODAL_TOL:
            bad = int(np.argmax(np.abs(d)))
            raise AntipodalNormals(
                f"adjacent normals at index {bad} are antipodal", index=bad
            )

    def __len__(self) -> int:
        return len(self.points)

    def angles(self) -> np.ndarray:
        return np.arctan2(self.normals[:, 1], self.normals[:, 0])

    @classmethod
    def from_pairs(cls, pairs, closed: bool = False) -> "PnpPolygon":
        pts = np.array([[p.point[0], p.point[1]] for p in pairs], dtype=np.float64)
        nrm = np.array([[p.normal.x, p.normal.y] for p in pairs], dtype=np.float64)
        return cls(pts, nrm, closed)

    def to_pairs(self) -> list[PointNormalPair]:
        return [
            PointNormalPair(
                (float(px), float(py)), UnitVector.normalized(float(nx), float(ny))
            )
            for (px, py), (nx, ny) in zip(self.points, self.normals)
        ]

    def edge_lengths(self) -> np.ndarray:
        n = len(self)
        d = self.points[_next_idx(n, self.closed)] - self.points[_pair_idx(n, self.closed)]
        return np.hypot(d[:, 0], d[:, 1])

    def adjacent_normal_angles(self) -> np.ndarray:
        a = self.angles()
        n = len(self)
        return np.abs(_wrap(a[_next_idx(n, self.closed)] - a[_pair_idx(n, self.closed)]))


@dataclass
class SchemeConfig:
    scheme: str
    levels: int
    m: int = 1

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}, expected one of {SCHEMES}")
        if not 0 <= self.levels <= LEVEL_CAP:
            raise ValueError(f"levels must be in [0, {LEVEL_CAP}], got {self.levels}")
        if self.scheme in ("mlr", "llr") and self.m < 1:
            raise ValueError(f"smoothing degree m must be >= 1, got {self.m}")


@dataclass
class RefinementDiagnostics:
    """Per-level maxima and contraction estimates for a refinement run.

    ``eta_ratio[j]`` is the measured ``edge_max[j+1] / edge_max[j]`` (NaN at
    the last level); ``eta_bound[j]`` is the scheme's theoretical bound on
    that ratio evaluated from the level-j normal angles (NaN for the linear
    schemes, which carry no angle-dependent bound).
    """

    edge_max: list[float] = field(default_factory=list)
    theta_max: list[float] = field(default_factory=list)
    mu: list[float] = field(default_factory=list)
    eta_ratio: list[float] = field(default_factory=list)
    eta_bound: list[float] = field(default_factory=list)

    def as_dict(self) -> dict:
        # strict-JSON view: NaN entries (undefined ratios) become null
        def clean(xs: list[float]) -> list[float | None]:
            return [x if math.isfinite(x) else None for x in xs]

        return {
            "edge_max": clean(self.edge_max),
            "theta_max": clean(self.theta_max),
            "mu": clean(self.mu),
            "eta_ratio": clean(self.eta_ratio),
            "eta_bound": clean(self.eta_bound),
        }


def _wrap(a: np.ndarray) -> np.ndarray:
    w = np.mod(a, 2.0 * np.pi)
    return np.where(w > np.pi, w - 2.0 * np.pi, w)


def _pair_idx(n: int, closed: bool) -> np.ndarray:
    return np.arange(n if closed else n - 1)


def _next_idx(n: int, closed: bool) -> np.ndarray:
    i = np.arange(n if closed else n - 1)
    return (i + 1) % n if closed else i + 1


def _check_averageable(a0: np.ndarray, a1: np.ndarray, stage: str) -> None:
    d = np.abs(_wrap(a1 - a0))
    if d.size and np.max(d) > math.pi - _ANTIPODAL_TOL:
        bad = int(np.argmax(d))
        raise AntipodalNormals(
            f"antipodal normals in {stage} at index {bad}", index=bad
        )


def _averager(linear: bool):
    return affine_pair_average if linear else circle_pair_average


def _unit_rows(angles: np.ndarray) -> np.ndarray:
    return np.column_stack((np.cos(angles), np.sin(angles)))


def _lr_step(polygon: PnpPolygon, m: int, linear: bool) -> PnpPolygon:
    avg = _averager(linear)
    pts = polygon.points
    ang = polygon.angles()
    n = len(polygon)

    i0 = _pair_idx(n, polygon.closed)
    i1 = _next_idx(n, polygon.closed)
    _check_averageable(ang[i0], ang[i1], "elementary refinement")
    ins_p, ins_a = avg(pts[i0], ang[i0], pts[i1], ang[i1], 0.5)

    if polygon.closed:
        ref_p = np.empty((2 * n, 2))
        ref_a = np.empty(2 * n)
        ref_p[0::2] = pts
        ref_p[1::2] = ins_p
        ref_a[0::2] = ang
        ref_a[1::2] = ins_a
        kept_normals = np.empty((2 * n, 2))
        kept_normals[0::2] = polygon.normals
        kept_normals[1::2] = _unit_rows(ins_a)
    else:
        ref_p = np.empty((2 * n - 1, 2))
        ref_a = np.empty(2 * n - 1)
        ref_p[0::2] = pts
        ref_p[1::2] = ins_p
        ref_a[0::2] = ang
        ref_a[1::2] = ins_a
        kept_normals = np.empty((2 * n - 1, 2))
        kept_normals[0::2] = polygon.normals
        kept_normals[1::2] = _unit_rows(ins_a)

    if m == 1:
        return PnpPolygon(ref_p, kept_normals, polygon.closed)

    sm_p, sm_a = ref_p, ref_a
    if polygon.closed:
        for k in range(1, m):
            nn = len(sm_p)
            j1 = (np.arange(nn) + 1) % nn
            _check_averageable(sm_a, sm_a[j1], f"smoothing pass {k}")
            sm_p, sm_a = avg(sm_p, sm_a, sm_p[j1], sm_a[j1], 0.5)
        return PnpPolygon(sm_p, _unit_rows(sm_a), True)

    for k in range(1, m):
        if len(sm_p) < 2:
            raise TooFewVertices(
                f"smoothing degree m={m} exhausts an open polygon of {n} vertices"
            )
        _check_averageable(sm_a[:-1], sm_a[1:], f"smoothing pass {k}")
        sm_p, sm_a = avg(sm_p[:-1], sm_a[:-1], sm_p[1:], sm_a[1:], 0.5)
    # Re-attach the held-fixed endpoints so the curve keeps interpolating them.
    out_p = np.vstack((ref_p[:1], sm_p, ref_p[-1:]))
    out_n = np.vstack((kept_normals[:1], _unit_rows(sm_a), kept_normals[-1:]))
    return PnpPolygon(out_p, out_n, False)


def _four_point_step(polygon: PnpPolygon, linear: bool) -> PnpPolygon:
    avg = _averager(linear)
    w = FOUR_POINT_EXTENSION_WEIGHT
    pts = polygon.points
    ang = polygon.angles()
    n = len(polygon)

    if polygon.closed:
        if n < 4:
            raise TooFewVertices(
                f"closed 4-point refinement needs >= 4 vertices, got {n}"
            )
        i = np.arange(n)
        im1, ip1, ip2 = (i - 1) % n, (i + 1) % n, (i + 2) % n
        _check_averageable(ang[i], ang[im1], "left extension")
        sl_p, sl_a = avg(pts[i], ang[i], pts[im1], ang[im1], w)
        _check_averageable(ang[ip1], ang[ip2], "right extension")
        sr_p, sr_a = avg(pts[ip1], ang[ip1], pts[ip2], ang[ip2], w)
        _check_averageable(sl_a, sr_a, "insertion average")
        ins_p, ins_a = avg(sl_p, sl_a, sr_p, sr_a, 0.5)

        out_p = np.empty((2 * n, 2))
        out_n = np.empty((2 * n, 2))
        out_p[0::2] = pts
        out_n[0::2] = polygon.normals
        out_p[1::2] = ins_p
        out_n[1::2] = _unit_rows(ins_a)
        return PnpPolygon(out_p, out_n, True)

    # Open: insert between i and i+1 for i = 0..n-2; the end insertions have
    # no p_{i-1} / p_{i+2} and fall back to the midpoint average.
    i = np.arange(n - 1)
    _check_averageable(ang[i], ang[i + 1], "midpoint fallback")
    ins_p, ins_a = avg(pts[i], ang[i], pts[i + 1], ang[i + 1], 0.5)
    if n >= 4:
        j = np.arange(1, n - 2)
        _check_averageable(ang[j], ang[j - 1], "left extension")
        sl_p, sl_a = avg(pts[j], ang[j], pts[j - 1], ang[j - 1], w)
        _check_averageable(ang[j + 1], ang[j + 2], "right extension")
        sr_p, sr_a = avg(pts[j + 1], ang[j + 1], pts[j + 2], ang[j + 2], w)
        _check_averageable(sl_a, sr_a, "insertion average")
        mid_p, mid_a = avg(sl_p, sl_a, sr_p, sr_a, 0.5)
        ins_p[j] = mid_p
        ins_a[j] = mid_a

    out_p = np.empty((2 * n - 1, 2))
    out_n = np.empty((2 * n - 1, 2))
    out_p[0::2] = pts
    out_n[0::2] = polygon.normals
    out_p[1::2] = ins_p
    out_n[1::2] = _unit_rows(ins_a)
    return PnpPolygon(out_p, out_n, False)


def mlr_step(polygon: PnpPolygon, m: int = 1) -> PnpPolygon:
    """One level of the modified (circle-average) refine-and-smooth scheme."""
    if m < 1:
        raise ValueError(f"smoothing degree m must be >= 1, got {m}")
    return _lr_step(polygon, m, linear=False)


def m4pt_step(polygon: PnpPolygon) -> PnpPolygon:
    """One level of the modified interpolatory 4-point scheme."""
    return _four_point_step(polygon, linear=False)


def linear_step(polygon: PnpPolygon, scheme: str, m: int = 1) -> PnpPolygon:
    """One level of the linear counterpart (affine points, geodesic normals)."""
    if scheme == "llr":
        return _lr_step(polygon, m, linear=True)
    if scheme == "l4pt":
        return _four_point_step(polygon, linear=True)
    raise ValueError(f"not a linear scheme: {scheme!r}")


def scheme_step(polygon: PnpPolygon, config: SchemeConfig) -> PnpPolygon:
    if config.scheme == "mlr":
        return mlr_step(polygon, config.m)
    if config.scheme == "m4pt":
        return m4pt_step(polygon)
    return linear_step(polygon, config.scheme, config.m)


def theta_m(m: int) -> float:
    """Critical normal-angle bound 4*arccos(2^(-1/m)) for smoothing degree m.

    Below this angle the degree-m refine-and-smooth scheme contracts the
    maximal edge length; it exceeds pi for m = 1 and equals pi for m = 2, so
    those degrees contract from the first level for any valid input.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return 4.0 * math.acos(2.0 ** (-1.0 / m))


def _sin_ratio(a: np.ndarray) -> np.ndarray:
    # sin(a/16)/sin(a/2) with its limit value 1/8 at a = 0.
    out = np.full_like(a, 0.125)
    nz = a > 1e-9
    out[nz] = np.sin(a[nz] / 16.0) / np.sin(a[nz] / 2.0)
    return out


def _eta_bound(polygon: PnpPolygon, config: SchemeConfig, theta: float) -> float:
    if config.scheme == "mlr":
        return 0.5 / math.cos(theta / 4.0) ** config.m
    if config.scheme == "m4pt":
        alphas = polygon.adjacent_normal_angles()
        if alphas.size == 0:
            return math.nan
        a = float(np.max(_sin_ratio(alphas)))
        return (1.0 + 2.0 * a) / (2.0 * math.cos(5.0 * theta / 16.0)) + a
    return math.nan


def refine(
    polygon: PnpPolygon, config: SchemeConfig
) -> tuple[list[PnpPolygon], RefinementDiagnostics]:
    """Apply the configured scheme ``config.levels`` times.

    Returns every level including the input (``levels + 1`` polygons) and the
    per-level diagnostics.
    """
    levels = [polygon]
    for _ in range(config.levels):
        levels.append(scheme_step(levels[-1], config))

    diag = RefinementDiagnostics()
    for poly in levels:
        edges = poly.edge_lengths()
        angles = poly.adjacent_normal_angles()
        e = float(np.max(edges)) if edges.size else 0.0
        th = float(np.max(angles)) if angles.size else 0.0
        diag.edge_max.append(e)
        diag.theta_max.append(th)
        diag.mu.append(1.0 / (2.0 * math.cos(th / 4.0)))
        diag.eta_bound.append(_eta_bound(poly, config, th))
    for j in range(len(levels)):
        if j + 1 < len(levels) and diag.edge_max[j] > 0.0:
            diag.eta_ratio.append(diag.edge_max[j + 1] / diag.edge_max[j])
        else:
            diag.eta_ratio.append(math.nan)
    return levels, diag
