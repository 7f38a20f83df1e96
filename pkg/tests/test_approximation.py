import math

import numpy as np
import pytest

from circleavg.approximation import (
    CURVES,
    REPORT_CASES,
    REFERENCE_STATS,
    SegmentSpec,
    build_arc,
    distance_to_arc,
    distance_to_circle,
    fit_circle_ls,
    format_report,
    sample_curve,
    approximation_report,
)
from circleavg.errors import AntipodalNormals, CollinearPoints
from circleavg.geometry import CircleSpec, PointNormalPair, UnitVector

P = PointNormalPair.of


class TestSampleCurve:
    def test_ellipse_endpoint(self):
        pts, _, _ = sample_curve(CURVES["ellipse"], math.pi / 2, math.pi)
        assert pts[-1] == pytest.approx([-2.0, 0.0], abs=1e-12)

    def test_spiral_endpoint(self):
        pts, _, _ = sample_curve(CURVES["spiral"], math.pi, 3 * math.pi / 2)
        assert pts[-1] == pytest.approx([0.0, -3 * math.pi / 2], abs=1e-12)

    def test_uniform_spacing(self):
        pts, _, _ = sample_curve(CURVES["ellipse"], 0.25, 1.25, count=101)
        ts = np.linspace(0.25, 1.25, 101)
        assert ts[1] - ts[0] == pytest.approx(0.01, abs=1e-15)
        assert len(pts) == 101

    def test_normals_are_unit_and_perpendicular(self):
        for ident, t0, t1 in REPORT_CASES:
            curve = CURVES[ident]
            _, n0, n1 = sample_curve(curve, t0, t1)
            for t, n in ((t0, n0), (t1, n1)):
                tx, ty = curve.dx(t), curve.dy(t)
                assert abs(n.x * tx + n.y * ty) < 1e-12 * math.hypot(tx, ty)


class TestFitCircle:
    def test_three_points_circumscribed(self):
        fit = fit_circle_ls([(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0)])
        assert fit.circle.center == pytest.approx((0.0, 0.0), abs=1e-10)
        assert fit.circle.radius == pytest.approx(1.0, abs=1e-10)
        assert fit.max_residual < 1e-10

    def test_exact_samples_recovered(self):
        ang = np.linspace(0, 2 * np.pi, 20, endpoint=False)
        pts = np.column_stack((3 + 2 * np.cos(ang), -1 + 2 * np.sin(ang)))
        fit = fit_circle_ls(pts)
        assert fit.circle.center == pytest.approx((3.0, -1.0), abs=1e-10)
        assert fit.circle.radius == pytest.approx(2.0, abs=1e-10)

    def test_paper_row_statistics(self):
        pts, _, _ = sample_curve(CURVES["ellipse"], 5 * math.pi / 8, math.pi)
        fit = fit_circle_ls(pts)
        rho = [distance_to_circle(p, fit.circle) for p in pts]
        assert np.mean(rho) == pytest.approx(0.01315, rel=0.05)
        assert np.max(rho) == pytest.approx(0.04145, rel=0.05)

    def test_collinear_rejected(self):
        with pytest.raises(CollinearPoints):
            fit_circle_ls([(0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (3.0, 3.0)])


class TestBuildArc:
    def test_circle_data_gives_that_circle(self):
        arc = build_arc(P(1, 0, 1, 0), P(0, 1, 0, 1))
        assert arc.circle.center == pytest.approx((0.0, 0.0), abs=1e-12)
        assert arc.circle.radius == pytest.approx(1.0, abs=1e-12)

    def test_equal_normals_degenerates_to_segment(self):
        arc = build_arc(P(0, 0, 0, 1), P(2, 0, 0, 1))
        assert isinstance(arc, SegmentSpec)
        assert distance_to_arc((1.0, 0.5), arc) == pytest.approx(0.5, abs=1e-15)
        assert distance_to_arc((3.0, 0.0), arc) == pytest.approx(1.0, abs=1e-15)

    def test_antipodal_errors(self):
        with pytest.raises(AntipodalNormals):
            build_arc(P(0, 0, 0, 1), P(1, 0, 0, -1))


class TestDistances:
    def test_point_on_arc(self):
        arc = build_arc(P(1, 0, 1, 0), P(0, 1, 0, 1))
        on = (math.cos(0.7), math.sin(0.7))
        assert distance_to_arc(on, arc) < 1e-12

    def test_center_distance_is_radius(self):
        circle = CircleSpec((2.0, 3.0), 1.5)
        assert distance_to_circle((2.0, 3.0), circle) == pytest.approx(1.5)

    def test_arc_ge_circle(self):
        arc = build_arc(P(1, 0, 1, 0), P(0, 1, 0, 1))
        rng = np.random.default_rng(2)
        for _ in range(200):
            p = tuple(rng.uniform(-2, 2, 2))
            assert distance_to_arc(p, arc) >= distance_to_circle(p, arc.circle) - 1e-15

    def test_brute_force_oracle(self):
        # Independent oracle: minimize the distance over a dense sampling of
        # the arc (1e6 points), including points radially outside the sweep.
        arc = build_arc(P(1, 0, 1, 0), P(0, 1, 0, 1))
        fracs = np.linspace(0.0, 1.0, 1_000_000)
        angs = arc.start_angle + fracs * arc.sweep
        ax = arc.circle.center[0] + arc.circle.radius * np.cos(angs)
        ay = arc.circle.center[1] + arc.circle.radius * np.sin(angs)
        rng = np.random.default_rng(4)
        test_points = [
            (0.2, -1.3),   # radially outside the sweep, below
            (-1.0, 0.2),   # outside, left
            (0.9, 0.9),    # inside the sweep, off circle
            (0.0, 0.0),    # center
        ] + [tuple(rng.uniform(-2, 2, 2)) for _ in range(12)]
        for p in test_points:
            brute = float(np.min(np.hypot(ax - p[0], ay - p[1])))
            assert distance_to_arc(p, arc) == pytest.approx(brute, abs=2e-6)

    def test_outside_sweep_clamps_to_endpoint(self):
        arc = build_arc(P(1, 0, 1, 0), P(0, 1, 0, 1))
        # radially at angle -0.5: nearest arc point is the endpoint p0=(1,0)
        p = (math.cos(-0.5) * 1.4, math.sin(-0.5) * 1.4)
        want = math.hypot(p[0] - 1.0, p[1] - 0.0)
        assert distance_to_arc(p, arc) == pytest.approx(want, abs=1e-12)


class TestApproximationReport:
    def test_six_rows(self):
        rows = approximation_report()
        assert len(rows) == 6
        assert [r.curve for r in rows] == [c for c, _, _ in REPORT_CASES]

    def test_against_reference_values(self):
        for row, (maxc, maxa, meanc, meana) in zip(approximation_report(), REFERENCE_STATS):
            assert abs(row.max_arc - maxa) <= max(2e-3, 0.02 * maxa)
            assert abs(row.mean_arc - meana) <= max(2e-3, 0.02 * meana)
            assert abs(row.max_circle - maxc) <= 0.05 * maxc
            assert abs(row.mean_circle - meanc) <= 0.05 * meanc

    def test_optimal_circle_wins_each_row(self):
        for row in approximation_report():
            assert row.max_circle <= row.max_arc + 1e-12
            assert row.mean_circle <= row.mean_arc + 1e-12
            assert row.max_circle >= row.mean_circle >= 0.0
            assert row.max_arc >= row.mean_arc >= 0.0

    def test_shrinking_interval_shrinks_arc_error(self):
        rows = approximation_report()
        by_curve = {}
        for row in rows:
            by_curve.setdefault(row.curve, []).append(row)
        for curve, pair in by_curve.items():
            outer, inner = pair
            assert inner.t0 >= outer.t0 and inner.t1 <= outer.t1
            assert inner.max_arc < outer.max_arc

    def test_report_formats(self):
        rows = approximation_report()
        text = format_report(rows)
        csv = format_report(rows, sep=",")
        assert len(text.splitlines()) == 7
        assert csv.splitlines()[0].startswith("curve,")
        assert all(line.count(",") == 6 for line in csv.splitlines())
