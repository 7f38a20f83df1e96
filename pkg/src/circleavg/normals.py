"""Naive initial normals for a bare control polygon.

Each edge gets the unit normal on the right of the traversal direction; a
vertex normal is the geodesic average of its two edge normals weighted by
the reciprocal of the edge lengths, so the shorter edge pulls harder. Open
boundary vertices copy the normal of their only edge.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import AntipodalEdgeNormals, TooFewVertices, ZeroLengthEdge
from .subdivision import PnpPolygon

_ZERO_EDGE_REL_TOL = 1e-14


def naive_normals(points, closed: bool = False) -> PnpPolygon:
    """Build a point-normal polygon from bare points.

    The edge normal ``v_i`` of edge ``p_i -> p_{i+1}`` satisfies
    ``cross(v_i, p_{i+1} - p_i) > 0``; the normal at an interior vertex is
    the geodesic average of ``v_{i-1}`` and ``v_i`` with weight
    ``d_{i-1} / (d_i + d_{i-1})`` on the second, where ``d_k`` are the edge
    lengths.
    """
    pts = np.ascontiguousarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("points must have shape (n, 2)")
    n = len(pts)
    if n < (3 if closed else 2):
        raise TooFewVertices(
            f"need at least {3 if closed else 2} points, got {n}"
        )

    idx = np.arange(n if closed else n - 1)
    nxt = (idx + 1) % n if closed else idx + 1
    edges = pts[nxt] - pts[idx]
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    scale = 1.0 + np.max(np.abs(pts))
    short = np.nonzero(lengths < _ZERO_EDGE_REL_TOL * scale)[0]
    if short.size:
        raise ZeroLengthEdge(
            f"zero-length edge at index {int(short[0])}", index=int(short[0])
        )

    # cross(v, e) > 0 for v = (ey, -ex)/|e|: the right side of the traversal.
    edge_angles = np.arctan2(-edges[:, 0], edges[:, 1])

    normal_angles = np.empty(n)
    for i in range(n):
        if closed:
            prev_e, this_e = (i - 1) % n, i
        else:
            if i == 0:
                normal_angles[i] = edge_angles[0]
                continue
            if i == n - 1:
                normal_angles[i] = edge_angles[n - 2]
                continue
            prev_e, this_e = i - 1, i
        a_prev = edge_angles[prev_e]
        delta = math.remainder(edge_angles[this_e] - a_prev, 2.0 * math.pi)
        if math.pi - abs(delta) < 1e-12:
            raise AntipodalEdgeNormals(
                f"edges around vertex {i} fold back 180 degrees", index=i
            )
        w = lengths[prev_e] / (lengths[prev_e] + lengths[this_e])
        normal_angles[i] = a_prev + w * delta

    normals = np.column_stack((np.cos(normal_angles), np.sin(normal_angles)))
    return PnpPolygon(pts, normals, closed)
