import json
import math

import numpy as np
import pytest

import circleavg.subdivision as subdivision
from circleavg import cli
from circleavg.polyio import dumps_polygon, loads_polygon
from circleavg.subdivision import PnpPolygon

from conftest import circle_polygon


@pytest.fixture
def circle_file(tmp_path):
    path = tmp_path / "circle4.pnp"
    path.write_text(dumps_polygon(circle_polygon(n=4)))
    return str(path)


class TestRefine:
    def test_circle_reproduction_through_cli(self, circle_file, tmp_path, capsys):
        out = tmp_path / "out.pnp"
        rc = cli.main(
            ["refine", circle_file, "-o", str(out), "--scheme", "mlr", "--m", "1", "--levels", "5"]
        )
        assert rc == 0
        doc = json.loads(out.read_text())
        pts = np.array([rec["p"] for rec in doc["points"]])
        assert len(pts) == 128
        assert np.max(np.abs(np.hypot(pts[:, 0], pts[:, 1]) - 1.0)) < 1e-9
        assert len(doc["diagnostics"]["edge_max"]) == 6

    def test_zero_levels_echoes_vertices(self, circle_file, tmp_path):
        out = tmp_path / "echo.pnp"
        assert cli.main(["refine", circle_file, "-o", str(out), "--levels", "0"]) == 0
        doc = json.loads(out.read_text())
        src = json.loads(open(circle_file).read())
        assert doc["points"] == src["points"]

    def test_antipodal_exit_code(self, tmp_path):
        bad = {
            "closed": False,
            "points": [
                {"p": [0, 0], "n": [0, 1]},
                {"p": [1, 0], "n": [0, -1]},
                {"p": [2, 0], "n": [0, 1]},
            ],
        }
        path = tmp_path / "bad.pnp"
        path.write_text(json.dumps(bad))
        assert cli.main(["refine", str(path), "--levels", "1"]) == cli.EXIT_GEOMETRY

    def test_parse_error_exit_code(self, tmp_path):
        path = tmp_path / "junk.pnp"
        path.write_text("{nope")
        assert cli.main(["refine", str(path)]) == cli.EXIT_PARSE

    def test_missing_file(self):
        assert cli.main(["refine", "/nonexistent/x.pnp"]) == cli.EXIT_PARSE

    def test_deterministic_output(self, circle_file, tmp_path):
        a, b = tmp_path / "a.pnp", tmp_path / "b.pnp"
        cli.main(["refine", circle_file, "-o", str(a), "--levels", "3"])
        cli.main(["refine", circle_file, "-o", str(b), "--levels", "3"])
        assert a.read_bytes() == b.read_bytes()

    def test_svg_and_csv_formats(self, circle_file, tmp_path):
        svg = tmp_path / "c.svg"
        csv = tmp_path / "c.csv"
        assert cli.main(["refine", circle_file, "-o", str(svg), "--format", "svg", "--ticks", "0.2"]) == 0
        assert cli.main(["refine", circle_file, "-o", str(csv), "--format", "csv"]) == 0
        assert svg.read_text().startswith("<svg")
        assert len(csv.read_text().splitlines()) == 8

    def test_emit_levels(self, circle_file, tmp_path):
        out = tmp_path / "lv.pnp"
        cli.main(["refine", circle_file, "-o", str(out), "--levels", "2", "--emit-levels"])
        doc = json.loads(out.read_text())
        assert [len(lv["points"]) for lv in doc["levels"]] == [4, 8, 16]


class TestNormals:
    def test_round_trip_example(self, tmp_path):
        src = tmp_path / "pts.csv"
        src.write_text("0,0\n1,0\n1,1\n")
        out = tmp_path / "out.pnp"
        assert cli.main(["normals", str(src), "-o", str(out)]) == 0
        poly = loads_polygon(out.read_text())
        s = math.sqrt(2) / 2
        assert poly.normals[0] == pytest.approx([0.0, -1.0], abs=1e-15)
        assert poly.normals[1] == pytest.approx([s, -s], abs=1e-12)
        assert poly.normals[2] == pytest.approx([1.0, 0.0], abs=1e-15)

    def test_zero_edge_reports_index(self, tmp_path, capsys):
        src = tmp_path / "pts.csv"
        src.write_text("0,0\n0,0\n1,1\n")
        assert cli.main(["normals", str(src)]) == cli.EXIT_GEOMETRY
        assert "index 0" in capsys.readouterr().err


class TestApprox:
    def test_plain_run_emits_six_rows(self, capsys):
        assert cli.main(["approx"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 7  # header + 6 rows

    def test_check_passes_on_correct_build(self, capsys):
        assert cli.main(["approx", "--check"]) == 0
        assert "CHECK PASS" in capsys.readouterr().out

    def test_check_detects_mutated_four_point_weight(self, monkeypatch, capsys):
        # deliberate fault injection: -1/8 -> +1/8
        monkeypatch.setattr(subdivision, "FOUR_POINT_EXTENSION_WEIGHT", 0.125)
        assert cli.main(["approx", "--check"]) == cli.EXIT_CHECK
        assert "four-point insertion probe" in capsys.readouterr().out

    def test_check_detects_broken_arc_side(self, monkeypatch, capsys):
        import circleavg.geometry as geometry

        real = geometry._arc_side
        monkeypatch.setattr(geometry, "_arc_side", lambda *a: -real(*a))
        assert cli.main(["approx", "--check"]) == cli.EXIT_CHECK


class TestAverage:
    def test_midpoint_example(self, capsys):
        rc = cli.main(["average", "--p0", "1,0", "--n0", "1,0", "--p1", "0,1", "--n1", "0,1", "--w", "0.5"])
        assert rc == 0
        out = capsys.readouterr().out
        s = math.sqrt(2) / 2
        assert f"{s!r}" in out
        assert "case: generic" in out

    def test_special_case_reported(self, capsys):
        cli.main(["average", "--p0", "0,0", "--n0", "0,1", "--p1", "2,0", "--n1", "0,1", "--w", "0.25"])
        out = capsys.readouterr().out
        assert "case: equal-normals" in out
        assert "(0.5, 0.0)" in out

    def test_weight_out_of_range(self, capsys):
        rc = cli.main(["average", "--p0", "1,0", "--n0", "1,0", "--p1", "0,1", "--n1", "0,1", "--w", "2"])
        assert rc == cli.EXIT_GEOMETRY

    def test_bad_vector(self):
        rc = cli.main(["average", "--p0", "1", "--n0", "1,0", "--p1", "0,1", "--n1", "0,1"])
        assert rc == cli.EXIT_PARSE


def test_mutated_weight_breaks_eq4_oracle(monkeypatch):
    # The four-point insertion arithmetic pins the -1/8 extension weight; the
    # spacing must be non-uniform: on symmetric data the +-1/8 mutation cancels.
    monkeypatch.setattr(subdivision, "FOUR_POINT_EXTENSION_WEIGHT", 0.125)
    poly = PnpPolygon(
        np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [7.0, 0.0]]),
        np.tile([0.0, 1.0], (4, 1)),
        closed=False,
    )
    out = subdivision.m4pt_step(poly)
    want = -(0.0 + 7.0) / 16 + 9 * (1.0 + 2.0) / 16
    assert abs(out.points[3, 0] - want) > 1e-2
