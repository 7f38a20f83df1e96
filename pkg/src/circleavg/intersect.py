"""Counting proper self-intersections of a polyline by a sweep over segments.

Segments are sorted by their leftmost x; an active list holds segments whose
x-interval still overlaps the sweep front, so only x-overlapping pairs are
tested. Segments sharing a polyline vertex (adjacent edges, including the
closing wrap of a closed polyline) are skipped.
"""

from __future__ import annotations

import numpy as np

_EPS = 1e-12


def _orient(ax, ay, bx, by, cx, cy, scale):
    val = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if abs(val) <= _EPS * scale:
        return 0
    return 1 if val > 0.0 else -1


def _on_segment(ax, ay, bx, by, px, py):
    return (
        min(ax, bx) - _EPS <= px <= max(ax, bx) + _EPS
        and min(ay, by) - _EPS <= py <= max(ay, by) + _EPS
    )


def segments_cross(a0, a1, b0, b1) -> bool:
    """True when the closed segments [a0,a1] and [b0,b1] intersect."""
    scale = max(
        abs(a0[0]), abs(a0[1]), abs(a1[0]), abs(a1[1]),
        abs(b0[0]), abs(b0[1]), abs(b1[0]), abs(b1[1]), 1.0,
    ) ** 2
    o1 = _orient(*a0, *a1, *b0, scale)
    o2 = _orient(*a0, *a1, *b1, scale)
    o3 = _orient(*b0, *b1, *a0, scale)
    o4 = _orient(*b0, *b1, *a1, scale)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and _on_segment(*a0, *a1, *b0):
        return True
    if o2 == 0 and _on_segment(*a0, *a1, *b1):
        return True
    if o3 == 0 and _on_segment(*b0, *b1, *a0):
        return True
    if o4 == 0 and _on_segment(*b0, *b1, *a1):
        return True
    return False


def count_self_intersections(points, closed: bool = False) -> int:
    """Number of crossing pairs of non-adjacent edges of the polyline."""
    pts = np.asarray(points, dtype=np.float64)
    n = len(pts)
    nseg = n if closed else n - 1
    if nseg < 2:
        return 0

    seg_i = np.arange(nseg)
    seg_j = (seg_i + 1) % n
    xmin = np.minimum(pts[seg_i, 0], pts[seg_j, 0])
    xmax = np.maximum(pts[seg_i, 0], pts[seg_j, 0])
    order = np.argsort(xmin, kind="stable")

    def adjacent(a: int, b: int) -> bool:
        if abs(a - b) == 1:
            return True
        return closed and {a, b} == {0, nseg - 1}

    count = 0
    active: list[int] = []
    for s in order:
        lo = xmin[s]
        active = [t for t in active if xmax[t] >= lo - _EPS]
        a0 = (pts[seg_i[s], 0], pts[seg_i[s], 1])
        a1 = (pts[seg_j[s], 0], pts[seg_j[s], 1])
        for t in active:
            if adjacent(s, t):
                continue
            b0 = (pts[seg_i[t], 0], pts[seg_i[t], 1])
            b1 = (pts[seg_j[t], 0], pts[seg_j[t], 1])
            if segments_cross(a0, a1, b0, b1):
                count += 1
        active.append(s)
    return count
