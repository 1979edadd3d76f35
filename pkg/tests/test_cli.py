"""CLI: experiment dispatch, file outputs, manifests, determinism."""

import json
import math
from pathlib import Path

import pytest

from geomflow.cli import main


def read_csv(path: Path):
    lines = path.read_text().strip().split("\n")
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


class TestGeoCommands:
    def test_period_table_reproduces_reference_rows(self, tmp_path):
        out = tmp_path / "table"
        assert main(["geo", "period-table", "--beta", "0.999", "--out", str(out)]) == 0
        header, rows = read_csv(out / "period_table.csv")
        assert header == ["alpha", "P", "pi_sqrt2_over_sqrt_alpha"]
        assert len(rows) == 10
        table = {0.1: 14.0792, 0.5: 6.28842, 1.0: 4.44622}
        for row in rows:
            alpha = float(row[0])
            if alpha in table:
                assert abs(float(row[1]) - table[alpha]) < 5e-3
        manifest = json.loads((out / "geo_period_table_manifest.json").read_text())
        assert manifest["experiment"] == "geo_period_table"
        assert manifest["parameters"]["beta"] == 0.999

    def test_determinism_byte_identical(self, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        main(["geo", "period-table", "--beta", "0.9", "--out", str(out1)])
        main(["geo", "period-table", "--beta", "0.9", "--out", str(out2)])
        assert (out1 / "period_table.csv").read_bytes() == \
               (out2 / "period_table.csv").read_bytes()

    def test_curvature_tables(self, tmp_path):
        out = tmp_path / "curv"
        assert main(["geo", "curvature", "--alpha", "0.5", "--out", str(out)]) == 0
        header, rows = read_csv(out / "plane_curvatures.csv")
        manifest = json.loads((out / "geo_curvature_manifest.json").read_text())
        assert manifest["parameters"]["scalar_curvature"] == -1.5
        planes = {r[0] for r in rows}
        assert planes == {"XY", "XZ", "YZ"}

    def test_period_single(self, tmp_path):
        out = tmp_path / "p"
        assert main(["geo", "period", "--alpha", "0.5", "--beta", "0.7",
                     "--out", str(out)]) == 0
        header, rows = read_csv(out / "period.csv")
        assert len(rows) == 2  # numeric + closed form
        assert abs(float(rows[0][4]) - float(rows[1][4])) < 1e-6

    def test_boundingbox_scan(self, tmp_path):
        out = tmp_path / "bb"
        assert main(["geo", "boundingbox", "--alpha", "0.5", "--x0-min", "0.7",
                     "--x0-max", "0.8", "--step", "0.05", "--out", str(out)]) == 0
        header, rows = read_csv(out / "boundingbox.csv")
        assert all(r[header.index("passed")] == "True" for r in rows)

    def test_sphere_outputs_obj(self, tmp_path):
        out = tmp_path / "sph"
        assert main(["geo", "sphere", "--alpha", "0.5", "--R", "0.5",
                     "--n-dirs", "100", "--out", str(out)]) == 0
        obj = (out / "sphere.obj").read_text().strip().split("\n")
        assert len(obj) == 100
        assert all(line.startswith("v ") for line in obj)


class TestTorsionCommands:
    def test_stationary(self, tmp_path):
        out = tmp_path / "st"
        assert main(["torsion", "stationary", "--C", "3.0", "--out", str(out)]) == 0
        manifest = json.loads((out / "torsion_stationary_manifest.json").read_text())
        assert manifest["parameters"]["rhs_sup_norm"] < 1e-6

    def test_stability_short(self, tmp_path):
        out = tmp_path / "stab"
        assert main(["torsion", "stability", "--amplitude", "0.01", "--T", "0.5",
                     "--out", str(out)]) == 0
        header, rows = read_csv(out / "stability.csv")
        assert abs(float(rows[0][1]) - 0.0177245) < 1e-6

    def test_transform(self, tmp_path):
        out = tmp_path / "tr"
        assert main(["torsion", "transform", "--initial", "tau1", "--n", "256",
                     "--out", str(out)]) == 0
        manifest = json.loads((out / "torsion_transform_manifest.json").read_text())
        assert manifest["parameters"]["roundtrip_sup_error"] < 1e-8

    def test_evolve_writes_long_format(self, tmp_path):
        out = tmp_path / "ev"
        assert main(["torsion", "evolve", "--initial", "sin-half", "--n", "64",
                     "--T", "0.05", "--frames", "2", "--out", str(out)]) == 0
        header, rows = read_csv(out / "torsion.csv")
        assert header == ["t", "s", "tau"]
        assert len(rows) == 64 * 3  # initial + 2 frames

    def test_numerical_failure_exit_code(self, tmp_path):
        out = tmp_path / "bad"
        code = main(["torsion", "stationary", "--A", "0.05", "--C", "3.0",
                     "--out", str(out)])
        assert code == 1

    def test_reconstruct(self, tmp_path):
        out = tmp_path / "rec"
        assert main(["torsion", "reconstruct", "--initial", "helix", "--n", "64",
                     "--s-max", str(2 * math.pi), "--samples", "65",
                     "--out", str(out)]) == 0
        header, rows = read_csv(out / "curve.csv")
        assert header == ["s", "x", "y", "z"]
        assert len(rows) == 65


class TestCsfCommands:
    def test_short_run(self, tmp_path):
        out = tmp_path / "csf"
        assert main(["csf", "run", "--n", "256", "--T", "0.01",
                     "--record-dt", "0.005", "--out", str(out)]) == 0
        header, rows = read_csv(out / "diagnostics.csv")
        assert header[0] == "time" and "alpha_angle" in header
        frames_header, frame_rows = read_csv(out / "frames.csv")
        assert frames_header == ["t", "point_index", "x", "y"]


class TestUsageErrors:
    def test_unknown_experiment_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["geo", "nonsense"])
        assert exc.value.code == 2

    def test_unknown_initial_data(self, tmp_path):
        with pytest.raises(SystemExit):
            main(["torsion", "evolve", "--initial", "garbage",
                  "--out", str(tmp_path)])
