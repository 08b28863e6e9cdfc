import json
import math
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "besselbounds.cli"]


def run_cli(*args, env_extra=None):
    import os
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(CLI + list(args), capture_output=True, text=True,
                          env=env)


class TestExitCodes:
    def test_success_is_zero(self):
        res = run_cli("bound", "dirichlet", "--dim", "3", "--h0", "1")
        assert res.returncode == 0

    def test_usage_error_is_one(self):
        res = run_cli("bessel", "--kind", "j", "--nu", "0.5")
        assert res.returncode == 1
        assert "usage" in res.stderr.lower()

    def test_unknown_flag_is_one(self):
        res = run_cli("zero", "--nu", "0", "--k", "1", "--bogus", "1")
        assert res.returncode == 1

    def test_domain_error_is_one(self):
        res = run_cli("bessel", "--kind", "y", "--nu", "0", "--x", "0")
        assert res.returncode == 1

    def test_hypothesis_violation_is_two(self):
        res = run_cli("bound", "robin-threshold", "--dim", "3", "--h0", "1",
                      "--tau", "0.5", "--tau0", "1.5707963267948966")
        assert res.returncode == 2
        payload = json.loads(res.stdout)
        assert payload["value"] is None

    def test_raised_hypothesis_violation_is_two(self):
        res = run_cli("bound", "quotient", "--dim", "2", "--h0", "1",
                      "--lam", "100.0")
        assert res.returncode == 2


class TestJsonContract:
    def test_schema_keys(self):
        res = run_cli("bound", "dirichlet", "--dim", "3", "--h0", "1")
        payload = json.loads(res.stdout)
        for key in ("op", "inputs", "value", "intermediates", "hypotheses",
                    "warnings"):
            assert key in payload

    def test_dirichlet_value(self):
        res = run_cli("bound", "dirichlet", "--dim", "3", "--h0", "1")
        payload = json.loads(res.stdout)
        assert payload["value"] == pytest.approx(math.pi**2, rel=1e-12)

    def test_char_root_example(self):
        res = run_cli("char-root", "--dim", "3", "--c", "2")
        payload = json.loads(res.stdout)
        assert payload["root"] == pytest.approx(2.0287578381, abs=1e-9)

    def test_zero_value(self):
        res = run_cli("zero", "--nu", "0", "--k", "1")
        payload = json.loads(res.stdout)
        assert payload["value"] == pytest.approx(2.404825557695773, abs=1e-10)

    def test_determinism_byte_identical(self):
        args = ("bound", "robin-ball", "--dim", "3", "--h0", "1", "--tau", "1")
        first = run_cli(*args)
        second = run_cli(*args)
        assert first.stdout == second.stdout
        assert first.stdout.strip()

    def test_seventeen_digit_round_trip(self):
        res = run_cli("zero", "--nu", "0.5", "--k", "1")
        payload = json.loads(res.stdout)
        assert payload["value"] == math.pi


class TestFormats:
    def test_csv_output(self):
        res = run_cli("--output", "csv", "zero", "--nu", "0", "--k", "1")
        lines = res.stdout.strip().splitlines()
        assert lines[0] == "key,value"
        assert any(line.startswith("value,2.40482555769577") for line in lines)

    def test_plain_output(self):
        res = run_cli("--output", "plain", "zero", "--nu", "0", "--k", "1")
        assert any(line.startswith("value = 2.40482")
                   for line in res.stdout.splitlines())


class TestSubcommands:
    def test_bessel_j(self):
        res = run_cli("bessel", "--kind", "j", "--nu", "0.5", "--x",
                      "1.5707963267948966")
        payload = json.loads(res.stdout)
        assert payload["value"] == pytest.approx(2.0 / math.pi, rel=1e-12)

    def test_bessel_bowman(self):
        res = run_cli("bessel", "--kind", "bowman", "--nu", "0.5", "--x", "1",
                      "--alpha", "0.5", "--beta", "1", "--gamma-exp", "1",
                      "--a", "1", "--b", "0")
        payload = json.loads(res.stdout)
        expected = math.sqrt(2.0 / math.pi) * math.sin(1.0)
        assert payload["value"] == pytest.approx(expected, rel=1e-12)

    def test_bessel_bowman_missing_params(self):
        res = run_cli("bessel", "--kind", "bowman", "--nu", "0.5", "--x", "1")
        assert res.returncode == 1

    def test_ode_with_csv(self, tmp_path):
        out = tmp_path / "traj.csv"
        res = run_cli("ode", "--dim", "3", "--lam", "1", "--y0", "1",
                      "--yp0", "-3", "--r-max", "0.999", "--csv", str(out))
        assert res.returncode == 0
        payload = json.loads(res.stdout)
        assert payload["value"] < 1e-7          # sup distance to closed form
        assert out.exists()
        header = out.read_text().splitlines()[0]
        assert header == "r,y_numeric,y_closed_form,residual"

    def test_oracle_single(self):
        res = run_cli("oracle", "--dim", "3", "--bc", "robin", "--tau", "1",
                      "--grid", "512")
        payload = json.loads(res.stdout)
        assert payload["value"] == pytest.approx((math.pi / 2) ** 2, rel=1e-5)

    def test_oracle_sweep_csv(self, tmp_path):
        out = tmp_path / "sweep.csv"
        res = run_cli("oracle", "--dim", "3", "--taus", "0.5,1.5",
                      "--grid", "256", "--csv", str(out))
        assert res.returncode == 0
        payload = json.loads(res.stdout)
        assert len(payload["value"]) == 2
        assert out.read_text().splitlines()[0] == "tau,lambda_1"

    def test_verify_suite_passes(self):
        res = run_cli("verify", "robin-ball", "--dim", "3", "--tau", "1",
                      "--grid", "512")
        assert res.returncode == 0
        payload = json.loads(res.stdout)
        assert payload["value"] is True
        assert all(c["pass"] for c in payload["checks"])
        assert all({"name", "tolerance", "observed", "pass"} <= set(c)
                   for c in payload["checks"])

    def test_report_writes_figures_and_csv(self, tmp_path):
        out = tmp_path / "report"
        res = run_cli("report", "--out-dir", str(out), "--dim", "3",
                      "--grid", "256")
        assert res.returncode == 0
        payload = json.loads(res.stdout)
        written = set(payload["value"])
        pngs = [p for p in written if p.endswith(".png")]
        csvs = [p for p in written if p.endswith(".csv")]
        assert len(pngs) == 3 and len(csvs) == 3
        for p in written:
            assert (out / p.split("/")[-1]).exists()

    def test_spec_tol_environment_override(self):
        res = run_cli("bessel", "--kind", "j", "--nu", "0", "--x", "1",
                      env_extra={"SPEC_TOL": "1e-6"})
        assert res.returncode == 0
        payload = json.loads(res.stdout)
        assert payload["value"] == pytest.approx(0.7651976865579666, rel=1e-6)

    def test_help_documents_spec_tol(self):
        res = run_cli("--help")
        assert "SPEC_TOL" in res.stdout
