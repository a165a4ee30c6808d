# workbench/test_cli.py
import json

import pytest

from infrastructure.errors import BoundViolationError, CertificateError
from triangulation.point_set import PointSet
from workbench import cli
from workbench.formats import read_point_set, write_point_set
from workbench.svg import arc_endpoints

KITE = [(0, 0), (1, 0), (0.5, 0.4), (0.5, -0.4), (0.5, 1.5)]


@pytest.fixture
def kite_file(tmp_path):
    ps = PointSet.from_coordinates(KITE, ["a", "b", "up", "down", "top"], roles={"s": 0, "t": 1})
    return write_point_set(ps, tmp_path / "kite.points")


def test_resolve_vertex(kite_file):
    ps = read_point_set(kite_file)
    assert cli.resolve_vertex(ps, "t") == 1
    assert cli.resolve_vertex(ps, "up") == 2
    assert cli.resolve_vertex(ps, "4") == 4


def test_generate_writes_both_twins(tmp_path, capsys):
    out = tmp_path / "linf.points"
    assert cli.main(["generate", "linf-lower", "--epsilon", "1e-3", "--density", "10", "--mirrored", "--out", str(out)]) == 0
    assert read_point_set(out).metadata["mirrored"] is False
    assert read_point_set(tmp_path / "linf-mirrored.points").metadata["mirrored"] is True
    assert capsys.readouterr().out.count("✅") == 2


def test_route(kite_file, tmp_path):
    out, svg = tmp_path / "route.json", tmp_path / "route.svg"
    assert cli.main(["route", str(kite_file), "--s", "s", "--t", "t", "--decisions", "--json", str(out), "--svg", str(svg)]) == 0
    report = json.loads(out.read_text())
    assert report["vertex_path"][0] == 0 and report["vertex_path"][-1] == 1
    assert report["ratios"]["routing_ratio"] >= 1.0
    assert len(report["decisions"]) == len(report["steps"])
    assert len(arc_endpoints(svg.read_text())) == sum(s["arc"] is not None for s in report["steps"])


def test_triangulate_prints_json(kite_file, capsys):
    assert cli.main(["triangulate", str(kite_file)]) == 0
    assert json.loads(capsys.readouterr().out)["n"] == 5


def test_unknown_vertex_is_an_operational_error(kite_file):
    assert cli.main(["route", str(kite_file), "--s", "s", "--t", "nowhere"]) == 1
    assert cli.main(["route", str(kite_file), "--s", "s", "--t", "9"]) == 1


def test_missing_file(tmp_path):
    assert cli.main(["triangulate", str(tmp_path / "absent.points")]) == 1


def test_render_needs_a_route(kite_file, tmp_path):
    assert cli.main(["render", str(kite_file), "--svg", str(tmp_path / "x.svg"), "--snail"]) == 1
    assert cli.main(["render", str(kite_file), "--svg", str(tmp_path / "x.svg"), "--s", "s", "--t", "t", "--worst-case", "--snail"]) == 0


def test_verify_random(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert cli.main(["verify", "--random", "10", "--trials", "2", "--seed", "4", "--json", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["summary"]["instances"] == 2
    assert report["config"]["seed"] == 4
    assert "✅" in capsys.readouterr().out


def test_verify_violation_exit_code(tmp_path, monkeypatch):
    bundle = {"summary": {"violations": 1}, "counterexamples": [{"points": [[0, 0]]}]}

    def failing(config):
        raise BoundViolationError("arc ratio above bound", bundle=bundle)

    monkeypatch.setattr(cli, "run_verify", failing)
    out = tmp_path / "report.json"
    assert cli.main(["verify", "--random", "5", "--json", str(out)]) == 2
    assert json.loads(out.read_text()) == bundle


def test_reproduce_linf(tmp_path):
    out = tmp_path / "linf.json"
    assert cli.main(["reproduce", "linf-lower", "--epsilon", "1e-3", "--density", "20", "--json", str(out)]) == 0
    rows = json.loads(out.read_text())
    assert any(row["mode"] == "reference" and row["computed"] is None for row in rows)


def test_certificate_failure_is_an_operational_error(monkeypatch):
    def corrupted(config):
        raise CertificateError("edge (0, 2) fails the empty-circle test")

    monkeypatch.setattr(cli, "run_verify", corrupted)
    assert cli.main(["verify", "--random", "5"]) == 1
