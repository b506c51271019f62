import json
import subprocess
import sys

import numpy as np
import pytest

from tentspace.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, parse_and_dispatch
from tentspace.series import TaylorSeries


@pytest.fixture
def series_file(tmp_path):
    path = tmp_path / "f.json"
    path.write_text(json.dumps(TaylorSeries([1.0, 0.5, 0.25j]).to_json()))
    return str(path)


def run(argv, capsys):
    code = parse_and_dispatch(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestNorm:
    def test_hardy(self, series_file, capsys):
        code, out, _ = run(["norm", "--series", series_file, "--kind", "hardy"], capsys)
        assert code == EXIT_OK
        assert json.loads(out)["value"] == pytest.approx(np.sqrt(1 + 0.25 + 1 / 16))

    def test_tent(self, series_file, capsys, tmp_path):
        dest = tmp_path / "n.json"
        code, out, _ = run(["norm", "--series", series_file, "--grid-depth", "6", "--out", str(dest)], capsys)
        assert code == EXIT_OK and out == ""
        data = json.loads(dest.read_text())
        assert data["value"] > 0 and data["grid"]["sup_grid"]["depth"] == 6

    def test_missing_file(self, capsys):
        code, _, err = run(["norm", "--series", "/nonexistent.json"], capsys)
        assert code == EXIT_USAGE and "error" in err


class TestApply:
    def test_kg(self, series_file, capsys):
        code, out, _ = run(["apply", "kg", "--series", series_file, "--kernel", series_file], capsys)
        data = json.loads(out)
        assert code == EXIT_OK and data["flagged"] is False
        assert data["cross_check_residual"] < 1e-6

    def test_duhamel(self, series_file, capsys):
        code, out, _ = run(["apply", "duhamel", "--series", series_file, "--kernel", series_file], capsys)
        assert code == EXIT_OK and json.loads(out)["operator"] == "duhamel"

    def test_cesaro(self, series_file, capsys):
        code, out, _ = run(["apply", "cesaro", "--series", series_file, "--measure", "beta:-0.5"], capsys)
        data = json.loads(out)
        assert code == EXIT_OK and data["measure"] == "beta:-0.5" and not data["flagged"]

    def test_cesaro_measure_file(self, series_file, capsys, tmp_path):
        mfile = tmp_path / "mu.json"
        mfile.write_text(json.dumps({"atoms": [[0.5, 1.0]], "densities": []}))
        code, out, _ = run(["apply", "cesaro", "--series", series_file, "--measure", str(mfile)], capsys)
        assert code == EXIT_OK and json.loads(out)["measure"] == "mu"

    def test_missing_kernel(self, series_file, capsys):
        code, _, err = run(["apply", "kg", "--series", series_file], capsys)
        assert code == EXIT_USAGE and "--kernel" in err

    def test_missing_measure(self, series_file, capsys):
        assert run(["apply", "cesaro", "--series", series_file], capsys)[0] == EXIT_USAGE


class TestMeasure:
    def test_builtin(self, capsys):
        code, out, _ = run(["measure", "atom:0.5", "--moments", "4"], capsys)
        data = json.loads(out)
        assert code == EXIT_OK
        assert data["moments"] == pytest.approx([1, 0.5, 0.25, 0.125, 0.0625])
        assert data["carleson"]["verdict"] == "vanishing"

    def test_bad_measure(self, capsys):
        assert run(["measure", "atom:7"], capsys)[0] == EXIT_USAGE


class TestVerify:
    def test_single(self, capsys, tmp_path):
        code, out, _ = run(["verify", "--scenario", "split_identity", "--csv-dir", str(tmp_path / "csv")], capsys)
        data = json.loads(out)
        assert code == EXIT_OK and data[0]["verdict"] == "pass"
        files = list((tmp_path / "csv").iterdir())
        assert len(files) == 1 and files[0].read_text().startswith("scenario_id,label,parameter,value")

    def test_unknown_scenario(self, capsys):
        code, _, err = run(["verify", "--scenario", "nope"], capsys)
        assert code == EXIT_USAGE and "unknown scenario" in err

    def test_rejected_parameters(self, capsys):
        code, out, _ = run(["verify", "--scenario", "radial_integral", "--p", "3"], capsys)
        assert code == EXIT_FAIL and json.loads(out)[0]["verdict"] == "rejected"

    def test_config_file(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"seed": 3}))
        code, _, _ = run(["verify", "--scenario", "duhamel_algebra", "--config", str(cfg)], capsys)
        assert code == EXIT_OK

    def test_bad_config(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"degree": 2}))
        assert run(["verify", "--scenario", "duhamel_algebra", "--config", str(cfg)], capsys)[0] == EXIT_USAGE


class TestReport:
    def test_summary(self, capsys, tmp_path):
        dest = tmp_path / "r.json"
        run(["verify", "--scenario", "carleson_constants", "--out", str(dest)], capsys)
        code, out, _ = run(["report", str(dest)], capsys)
        assert code == EXIT_OK
        assert "PASS" in out and "1/1 scenarios passed" in out

    def test_failed_report(self, capsys, tmp_path):
        dest = tmp_path / "r.json"
        run(["verify", "--scenario", "radial_integral", "--p", "3", "--out", str(dest)], capsys)
        code, out, _ = run(["report", str(dest)], capsys)
        assert code == EXIT_FAIL and "REJECTED" in out


class TestUsage:
    def test_no_command(self, capsys):
        assert run([], capsys)[0] == EXIT_USAGE

    def test_bad_option(self, capsys):
        assert run(["norm", "--bogus"], capsys)[0] == EXIT_USAGE

    def test_help(self, capsys):
        code, out, _ = run(["--help"], capsys)
        assert code == EXIT_OK and "verify" in out

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "tentspace", "measure", "lebesgue"], capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["carleson"]["verdict"] == "carleson"
