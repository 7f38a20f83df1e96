"""Array kernels for the per-edge circle average used by the refinement loops.

Two interchangeable backends compute the same elementwise math:

* a numba ``@njit`` backend (default when numba imports cleanly), and
* a vectorized pure-numpy fallback.

Set ``CIRCLEAVG_PURE_NUMPY=1`` in the environment to force the numpy path.
Inputs are parallel arrays ``points`` (n, 2) and normal ``angles`` (n,); the
caller is responsible for rejecting antipodal pairs beforehand, the kernels
assume every pair is averageable.

The closed form used here is equivalent to the constructive arc selection in
:mod:`circleavg.geometry`: the selected arc always lies in the half-plane of
the chord opposite the sign of cross(n0, n1), so the center offset and the
rotation direction both reduce to the sign of the wrapped angle difference.
The scalar construction is kept as the reference; the equivalence of the two
routes is pinned by tests.
"""

from __future__ import annotations

import math
import os

import numpy as np

THETA_ZERO_TOL = 1e-12
COINCIDENT_REL_TOL = 1e-14

_FORCE_NUMPY = os.environ.get("CIRCLEAVG_PURE_NUMPY", "") not in ("", "0")

try:  # pragma: no cover - exercised via backend_name()
    if _FORCE_NUMPY:
        raise ImportError("numpy backend forced by CIRCLEAVG_PURE_NUMPY")
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:
    _HAVE_NUMBA = False


def _circle_pair_average_numpy(p0, a0, p1, a1, w):
    """Vectorized circle average of paired PNP arrays with one scalar weight."""
    p0 = np.asarray(p0, dtype=np.float64)
    p1 = np.asarray(p1, dtype=np.float64)
    a0 = np.asarray(a0, dtype=np.float64)
    a1 = np.asarray(a1, dtype=np.float64)

    delta = np.mod(a1 - a0, 2.0 * np.pi)
    delta = np.where(delta > np.pi, delta - 2.0 * np.pi, delta)
    theta = np.abs(delta)

    chord = p1 - p0
    dist = np.hypot(chord[:, 0], chord[:, 1])
    scale = 1.0 + np.maximum(np.max(np.abs(p0), axis=1), np.max(np.abs(p1), axis=1))

    out_a = a0 + w * delta

    linear = p0 + w * chord
    coincident = dist < COINCIDENT_REL_TOL * scale
    straight = theta < THETA_ZERO_TOL

    generic = ~(straight | coincident)
    out_p = np.where(coincident[:, None], p0, linear)

    if np.any(generic):
        g = generic
        s = np.sign(delta[g])
        d = dist[g]
        th = theta[g]
        h = 0.5 * d / np.tan(0.5 * th)
        mid = 0.5 * (p0[g] + p1[g])
        ox = mid[:, 0] + s * h * (-chord[g, 1] / d)
        oy = mid[:, 1] + s * h * (chord[g, 0] / d)
        rot = s * w * th
        # p_w = p0 + (R(rot) - I)(p0 - o): cancellation-free for tiny theta.
        k = -2.0 * np.sin(0.5 * rot) ** 2
        sr = np.sin(rot)
        vx = p0[g, 0] - ox
        vy = p0[g, 1] - oy
        gx = p0[g, 0] + k * vx - sr * vy
        gy = p0[g, 1] + k * vy + sr * vx
        out_p = out_p.copy()
        out_p[g, 0] = gx
        out_p[g, 1] = gy
    return out_p, out_a


def _affine_pair_average_numpy(p0, a0, p1, a1, w):
    """Affine point average with the same geodesic normal average."""
    p0 = np.asarray(p0, dtype=np.float64)
    p1 = np.asarray(p1, dtype=np.float64)
    a0 = np.asarray(a0, dtype=np.float64)
    a1 = np.asarray(a1, dtype=np.float64)
    delta = np.mod(a1 - a0, 2.0 * np.pi)
    delta = np.where(delta > np.pi, delta - 2.0 * np.pi, delta)
    return p0 + w * (p1 - p0), a0 + w * delta


if _HAVE_NUMBA:

    @njit(cache=True)
    def _circle_pair_average_numba(p0, a0, p1, a1, w):  # pragma: no cover
        n = p0.shape[0]
        out_p = np.empty((n, 2), dtype=np.float64)
        out_a = np.empty(n, dtype=np.float64)
        for i in range(n):
            delta = (a1[i] - a0[i]) % (2.0 * math.pi)
            if delta > math.pi:
                delta -= 2.0 * math.pi
            theta = abs(delta)
            cx = p1[i, 0] - p0[i, 0]
            cy = p1[i, 1] - p0[i, 1]
            dist = math.hypot(cx, cy)
            out_a[i] = a0[i] + w * delta

            scale = 1.0 + max(
                abs(p0[i, 0]), abs(p0[i, 1]), abs(p1[i, 0]), abs(p1[i, 1])
            )
            if dist < COINCIDENT_REL_TOL * scale:
                out_p[i, 0] = p0[i, 0]
                out_p[i, 1] = p0[i, 1]
                continue
            if theta < THETA_ZERO_TOL:
                out_p[i, 0] = p0[i, 0] + w * cx
                out_p[i, 1] = p0[i, 1] + w * cy
                continue

            s = 1.0 if delta > 0.0 else -1.0
            h = 0.5 * dist / math.tan(0.5 * theta)
            ox = 0.5 * (p0[i, 0] + p1[i, 0]) + s * h * (-cy / dist)
            oy = 0.5 * (p0[i, 1] + p1[i, 1]) + s * h * (cx / dist)
            rot = s * w * theta
            k = -2.0 * math.sin(0.5 * rot) ** 2
            sr = math.sin(rot)
            vx = p0[i, 0] - ox
            vy = p0[i, 1] - oy
            out_p[i, 0] = p0[i, 0] + k * vx - sr * vy
            out_p[i, 1] = p0[i, 1] + k * vy + sr * vx
        return out_p, out_a

    @njit(cache=True)
    def _affine_pair_average_numba(p0, a0, p1, a1, w):  # pragma: no cover
        n = p0.shape[0]
        out_p = np.empty((n, 2), dtype=np.float64)
        out_a = np.empty(n, dtype=np.float64)
        for i in range(n):
            delta = (a1[i] - a0[i]) % (2.0 * math.pi)
            if delta > math.pi:
                delta -= 2.0 * math.pi
            out_p[i, 0] = p0[i, 0] + w * (p1[i, 0] - p0[i, 0])
            out_p[i, 1] = p0[i, 1] + w * (p1[i, 1] - p0[i, 1])
            out_a[i] = a0[i] + w * delta
        return out_p, out_a

    circle_pair_average = _circle_pair_average_numba
    affine_pair_average = _affine_pair_average_numba
else:
    circle_pair_average = _circle_pair_average_numpy
    affine_pair_average = _affine_pair_average_numpy


def backend_name() -> str:
    return "numba" if _HAVE_NUMBA else "numpy"


def warmup() -> None:
    """Trigger JIT compilation so the first real request is not charged for it."""
    p = np.array([[0.0, 0.0], [1.0, 0.0]])
    a = np.array([0.1, 0.4])
    q = np.array([[1.0, 1.0], [2.0, 0.5]])
    b = np.array([0.7, 0.9])
    circle_pair_average(p, a, q, b, 0.5)
    affine_pair_average(p, a, q, b, 0.5)
