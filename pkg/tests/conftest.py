import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from circleavg import _kernels
from circleavg.subdivision import PnpPolygon

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # JIT compilation happens once up front instead of inside a timed test.
    _kernels.warmup()


def random_pair_arrays(rng, n, max_theta=math.pi - 0.05):
    """Random averageable PNP pairs as kernel-style arrays."""
    p0 = rng.uniform(-5.0, 5.0, (n, 2))
    p1 = rng.uniform(-5.0, 5.0, (n, 2))
    a0 = rng.uniform(-math.pi, math.pi, n)
    a1 = a0 + rng.uniform(-max_theta, max_theta, n)
    return p0, a0, p1, a1


def random_closed_polygon(rng, n=8, max_step=2.5):
    """Star-shaped closed polygon with a bounded-step random normal walk."""
    ang = np.sort(rng.uniform(0.0, 2.0 * np.pi, n))
    ang += np.arange(n) * 1e-9  # strictly increasing
    radii = rng.uniform(0.5, 2.0, n)
    pts = np.column_stack((np.cos(ang), np.sin(ang))) * radii[:, None]
    while True:
        na = np.cumsum(rng.uniform(-max_step, max_step, n))
        wrap_gap = (na[0] - na[-1] + np.pi) % (2.0 * np.pi) - np.pi
        if abs(wrap_gap) < np.pi - 0.05:
            break
    normals = np.column_stack((np.cos(na), np.sin(na)))
    return PnpPolygon(pts, normals, closed=True)


def circle_polygon(n=8, radius=1.0, center=(0.0, 0.0), inward=False):
    """Uniform circle samples with matching circle normals."""
    ang = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    radial = np.column_stack((np.cos(ang), np.sin(ang)))
    pts = np.asarray(center) + radius * radial
    normals = -radial if inward else radial
    return PnpPolygon(pts, normals.copy(), closed=True)


def normal_angle_diff(a, b):
    """Absolute angular distance between two angles."""
    return abs((a - b + math.pi) % (2.0 * math.pi) - math.pi)
