import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from circleavg.errors import AntipodalEdgeNormals, TooFewVertices, ZeroLengthEdge
from circleavg.normals import naive_normals

SQ2 = math.sqrt(2.0) / 2.0


class TestExamples:
    def test_l_shape_equal_edges(self):
        poly = naive_normals([(0, 0), (1, 0), (1, 1)])
        assert poly.normals[0] == pytest.approx([0.0, -1.0], abs=1e-15)
        assert poly.normals[1] == pytest.approx([SQ2, -SQ2], abs=1e-12)
        assert poly.normals[2] == pytest.approx([1.0, 0.0], abs=1e-15)

    def test_reciprocal_length_weighting(self):
        # d0 = 2, d1 = 1: weight 2/3 toward the second edge normal,
        # gamma = -pi/2 + (2/3)(pi/2) = -pi/6
        poly = naive_normals([(0, 0), (2, 0), (2, 1)])
        want = (math.cos(-math.pi / 6), math.sin(-math.pi / 6))
        assert poly.normals[1] == pytest.approx(want, abs=1e-12)

    def test_regular_ngon_radial(self):
        n = 12
        ang = np.linspace(0, 2 * np.pi, n, endpoint=False)
        pts = np.column_stack((np.cos(ang), np.sin(ang)))
        poly = naive_normals(pts, closed=True)
        # counterclockwise traversal: right-side normals point outward... the
        # vertex normal must be radial (inward or outward consistently)
        dots = (poly.normals * pts).sum(axis=1)
        assert np.all(np.abs(np.abs(dots) - 1.0) < 1e-12)
        assert np.all(np.sign(dots) == np.sign(dots[0]))


class TestErrors:
    def test_zero_length_edge(self):
        with pytest.raises(ZeroLengthEdge) as err:
            naive_normals([(0, 0), (1, 0), (1, 0), (2, 0)])
        assert err.value.index == 1

    def test_reflex_fold_rejected(self):
        with pytest.raises(AntipodalEdgeNormals) as err:
            naive_normals([(0, 0), (1, 0), (0, 0.0)])
        assert err.value.index == 1

    def test_too_few(self):
        with pytest.raises(TooFewVertices):
            naive_normals([(0, 0)])
        with pytest.raises(TooFewVertices):
            naive_normals([(0, 0), (1, 1)], closed=True)


class TestProperties:
    @given(
        st.floats(-math.pi, math.pi),
        st.floats(-5, 5),
        st.floats(-5, 5),
        st.floats(0.2, 4.0),
    )
    def test_rotation_translation_equivariance(self, rot, tx, ty, scale):
        pts = np.array([[0.0, 0.0], [2.0, 0.0], [2.5, 1.0], [1.0, 2.5]])
        c, s = math.cos(rot), math.sin(rot)
        rmat = np.array([[c, -s], [s, c]])
        moved = scale * pts @ rmat.T + [tx, ty]
        a = naive_normals(pts)
        b = naive_normals(moved)
        assert np.max(np.abs(b.normals - a.normals @ rmat.T)) < 1e-10
        # uniform scaling alone leaves normals untouched
        assert np.max(np.abs(naive_normals(scale * pts).normals - a.normals)) < 1e-12

    def test_reflection_flips_side(self):
        pts = np.array([[0.0, 0.0], [2.0, 0.0], [2.5, 1.0], [1.0, 2.5]])
        mirrored = pts * [1.0, -1.0]
        a = naive_normals(pts)
        b = naive_normals(mirrored)
        # reflected polygon: normals are the mirrored negatives (side flip)
        assert np.max(np.abs(b.normals - (-a.normals * [1.0, -1.0]))) < 1e-12

    def test_equal_edges_bisector(self):
        poly = naive_normals([(0, 0), (1, 0), (2, 0)])
        assert poly.normals[1] == pytest.approx([0.0, -1.0], abs=1e-15)
