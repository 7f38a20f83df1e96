import numpy as np
import pytest

from circleavg.intersect import count_self_intersections, segments_cross


class TestSegmentsCross:
    def test_proper_crossing(self):
        assert segments_cross((0, 0), (1, 1), (0, 1), (1, 0))

    def test_disjoint(self):
        assert not segments_cross((0, 0), (1, 0), (0, 1), (1, 1))

    def test_t_touch(self):
        assert segments_cross((0, 0), (2, 0), (1, 0), (1, 1))

    def test_collinear_overlap(self):
        assert segments_cross((0, 0), (2, 0), (1, 0), (3, 0))

    def test_collinear_apart(self):
        assert not segments_cross((0, 0), (1, 0), (2, 0), (3, 0))


class TestCountSelfIntersections:
    def test_square_simple(self):
        square = [(0, 0), (1, 0), (1, 1), (0, 1)]
        assert count_self_intersections(square, closed=True) == 0

    def test_bowtie(self):
        bowtie = [(0, 0), (1, 1), (1, 0), (0, 1)]
        assert count_self_intersections(bowtie, closed=True) == 1

    def test_open_zigzag(self):
        zig = [(0, 0), (2, 0), (2, 1), (0.5, 1), (0.5, -1)]
        assert count_self_intersections(zig, closed=False) == 1

    def test_adjacent_edges_not_counted(self):
        path = [(0, 0), (1, 0), (2, 1), (3, 0)]
        assert count_self_intersections(path, closed=False) == 0

    def test_closed_wrap_adjacency_excluded(self):
        tri = [(0, 0), (4, 0), (2, 3)]
        assert count_self_intersections(tri, closed=True) == 0

    def test_five_pointed_star(self):
        ang = np.pi / 2 + np.arange(5) * 4 * np.pi / 5
        star = np.column_stack((np.cos(ang), np.sin(ang)))
        assert count_self_intersections(star, closed=True) == 5

    def test_short_inputs(self):
        assert count_self_intersections([(0, 0), (1, 1)], closed=False) == 0
