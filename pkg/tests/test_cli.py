"""End-to-end command-line checks: output formats, determinism, exit codes,
and the config-file merge."""

import json
import math

import numpy as np
import pytest

from starhull.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_expected_area_bridge_star(self, capsys):
        code, out, _ = run(capsys, "eval", "expected-area", "--process", "bb",
                           "--hull", "star", "--seed", "1")
        assert code == 0
        assert out.strip() == "0.785398163397448"

    def test_place_cdf_median(self, capsys):
        code, out, _ = run(capsys, "eval", "x-cdf", "--rho", "1", "--x", "2", "--seed", "1")
        assert code == 0
        assert float(out) == 0.5

    def test_laplace_at_zero(self, capsys):
        code, out, _ = run(capsys, "eval", "laplace", "--rho", "1", "--lambda", "0",
                           "--mu", "0", "--seed", "1")
        assert code == 0
        assert float(out) == 1.0

    def test_open_problem_prints_unknown(self, capsys):
        code, out, _ = run(capsys, "eval", "expected-area", "--process", "bm",
                           "--hull", "topological", "--seed", "1")
        assert code == 0
        assert out.strip() == "unknown"

    def test_grid_evaluation(self, capsys):
        code, out, _ = run(capsys, "eval", "x-cdf", "--rho", "1", "--x", "2:10:5",
                           "--seed", "1")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x,value"
        assert len(lines) == 6
        values = [float(ln.split(",")[1]) for ln in lines[1:]]
        assert values == sorted(values)

    def test_json_record_schema(self, capsys):
        code, out, _ = run(capsys, "eval", "moment", "--process", "bm", "--p", "2",
                           "--format", "json", "--seed", "12")
        assert code == 0
        record = json.loads(out)
        assert {"name", "params", "seed", "config_digest", "value"} <= set(record)
        assert record["value"] == pytest.approx(0.375)
        assert record["seed"] == 12

    def test_gamma_moment_route(self, capsys):
        code, out, _ = run(capsys, "eval", "moment", "--c", str(2**0.25),
                           "--alpha", "0.25", "--p", "1", "--seed", "1")
        assert code == 0
        assert float(out) == pytest.approx(0.375, rel=1e-12)

    def test_domain_violation_exits_2(self, capsys):
        code, _, err = run(capsys, "eval", "x-cdf", "--rho", "-1", "--x", "2", "--seed", "1")
        assert code == 2
        assert "rho" in err

    def test_missing_parameter_exits_2(self, capsys):
        code, _, err = run(capsys, "eval", "x-cdf", "--rho", "1", "--seed", "1")
        assert code == 2
        assert "x" in err

    def test_two_ranges_rejected(self, capsys):
        code, _, err = run(capsys, "eval", "x-cdf", "--rho", "1:2:3", "--x", "2:3:4",
                           "--seed", "1")
        assert code == 2


class TestSample:
    def test_ray_hit_deterministic(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (a, b):
            code, _, _ = run(capsys, "sample", "ray-hit", "--rho", "1", "-n", "3",
                             "--seed", "42", "--out", str(out))
            assert code == 0
        assert a.read_text() == b.read_text()
        assert a.read_text().splitlines()[0] == "t,x"

    def test_bb_radial_sample_moment(self, tmp_path, capsys):
        out = tmp_path / "r.csv"
        code, _, _ = run(capsys, "sample", "rbb", "-n", "100000", "--seed", "7",
                         "--out", str(out))
        assert code == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "r"
        r = np.array([float(v) for v in lines[1:]])
        se = (r**2).std() / math.sqrt(len(r))
        assert abs((r**2).mean() - 0.25) < 3 * se

    def test_bm_path_shape(self, capsys):
        code, out, _ = run(capsys, "sample", "bm-path", "--steps", "4", "--seed", "1")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 6
        assert lines[0] == "t,x,y"
        assert lines[1] == "0,0,0"

    def test_srw_path_integer_steps(self, capsys):
        code, out, _ = run(capsys, "sample", "srw-path", "--steps", "10", "--seed", "3")
        assert code == 0
        rows = [ln.split(",") for ln in out.strip().splitlines()[1:]]
        pts = np.array([[float(r[1]), float(r[2])] for r in rows])
        steps = np.diff(pts, axis=0)
        assert np.all(np.abs(steps).sum(axis=1) == 1)

    def test_path_target_rejects_multiple(self, capsys):
        code, _, err = run(capsys, "sample", "bm-path", "-n", "2", "--seed", "1")
        assert code == 2

    def test_json_rows(self, capsys):
        code, out, _ = run(capsys, "sample", "x", "-n", "5", "--rho", "2",
                           "--seed", "9", "--format", "json")
        assert code == 0
        record = json.loads(out)
        assert record["header"] == ["x"]
        assert len(record["rows"]) == 5
        assert all(v[0] > 2 for v in record["rows"])

    def test_entropy_seed_echoed(self, tmp_path, capsys):
        out = tmp_path / "x.csv"
        code, _, err = run(capsys, "sample", "x", "-n", "2", "--out", str(out))
        assert code == 0
        assert "seed:" in err


class TestVerify:
    def test_densities_quick_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "densities", "--budget", "quick",
                           "--seed", "1")
        assert code == 0
        report = json.loads(out)
        assert report["pass"] is True
        for criterion in report["criteria"]:
            assert {"name", "target", "estimate", "stderr", "band", "pass"} <= set(criterion)

    def test_geometry_quick_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "geometry", "--budget", "quick", "--seed", "3")
        assert code == 0
        assert json.loads(out)["pass"] is True

    def test_unknown_suite_exits_2(self, capsys):
        code, _, _ = run(capsys, "verify", "everything", "--seed", "1")
        # argparse rejects the choice before dispatch
        assert code == 2

    def test_bad_budget_exits_2(self, capsys):
        code, _, _ = run(capsys, "verify", "densities", "--budget", "huge", "--seed", "1")
        assert code == 2


class TestExperiment:
    def test_radial_area_record(self, capsys):
        code, out, _ = run(capsys, "experiment", "--name", "radial_area",
                           "--process", "bb", "-n", "10000", "--seed", "5")
        assert code == 0
        record = json.loads(out)
        assert record["name"] == "radial_area"
        assert record["n"] == 10000
        assert "wall_time_s" in record
        assert abs(record["mean"] - math.pi / 4) < 5 * record["stderr"]

    def test_missing_knob_exits_2(self, capsys):
        code, _, err = run(capsys, "experiment", "--name", "area", "--process", "bm",
                           "-n", "100", "--seed", "5")
        assert code == 2

    def test_resource_cap_exits_3(self, capsys):
        code, _, err = run(capsys, "experiment", "--name", "area", "--process", "bm",
                           "--hull", "topological", "--steps", "256",
                           "--cell", "1e-7", "-n", "2", "--seed", "5")
        assert code == 3
        assert "cells" in err


class TestConfigFile:
    def test_config_supplies_defaults(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("rho = 2\nx = 8\nseed = 4\n# comment\n")
        code, out, _ = run(capsys, "eval", "x-cdf", "--config", str(cfg))
        assert code == 0
        assert float(out) == pytest.approx(2 / math.pi * math.atan(math.sqrt(3.0)))

    def test_flags_beat_config(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("rho = 2\nx = 4\nseed = 4\n")
        code, out, _ = run(capsys, "eval", "x-cdf", "--rho", "1", "--config", str(cfg))
        assert code == 0
        assert float(out) == pytest.approx(2 / math.pi * math.atan(math.sqrt(3.0)))

    def test_malformed_config_exits_2(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("rho 2\n")
        code, _, _ = run(capsys, "eval", "x-cdf", "--rho", "1", "--x", "2",
                         "--config", str(cfg), "--seed", "1")
        assert code == 2
