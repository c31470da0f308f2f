import json
import math
import subprocess
import sys

import pytest

from reebmin import bundled_spec

SPECS = {name: str(bundled_spec(name)) for name in
         ("c_n.json", "a1.json", "spp.json", "dk_4dim.json", "dk_downgrade.json")}


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "reebmin.cli", *args],
        capture_output=True,
        text=True,
    )


class TestMinimizeCommand:
    def test_spp_minimize_report(self, tmp_path):
        out = tmp_path / "report.json"
        proc = run_cli("minimize", SPECS["spp.json"], "--out", str(out), "--json-only")
        assert proc.returncode == 0, proc.stderr
        report = json.loads(out.read_text())
        xi = [float(x) for x in report["results"]["xi_star"]]
        expected = [(3 + math.sqrt(3)) / 2, (3 + math.sqrt(3)) / 2, math.sqrt(3)]
        assert max(abs(a - b) for a, b in zip(xi, expected)) < 1e-8
        assert report["results"]["converged"] is True

    def test_dk_minimize_with_ambient_weights(self):
        proc = run_cli("minimize", SPECS["dk_4dim.json"], "--json-only", "--tol", "1e-7")
        assert proc.returncode == 0, proc.stderr
        report = json.loads(proc.stdout)
        weights = [float(x) for x in report["results"]["ambient_weights"]]
        scale = weights[0]
        alpha = (-3 + math.sqrt(33)) / 4
        beta = (7 - math.sqrt(33)) / 2
        expected = [1, 1, 1, alpha, beta]
        assert max(abs(w / scale - e) for w, e in zip(weights, expected)) < 1e-6


class TestDowngradeCommand:
    def test_reproduces_exact_data(self):
        proc = run_cli("downgrade", SPECS["dk_downgrade.json"], "--json-only")
        assert proc.returncode == 0, proc.stderr
        report = json.loads(proc.stdout)
        res = report["results"]
        assert sorted(map(tuple, res["sigma_rays"])) == sorted(
            [(0, 1, 0), (2, 1, 0), (2, 1, 1), (0, 1, 1)]
        )
        assert sorted(map(tuple, res["sigma_dual_rays"])) == sorted(
            [(1, 0, 0), (0, 0, 1), (-1, 2, 0), (0, 1, -1)]
        )
        coeffs = res["coefficients"]
        assert sorted(map(tuple, coeffs["0"]["vertices"])) == [("0", "0", "0"), ("0", "0", "1/2")]
        assert sorted(map(tuple, coeffs["1"]["vertices"])) == [("0", "1/2", "0")]
        assert sorted(map(tuple, coeffs["inf"]["vertices"])) == [("0", "0", "0"), ("1", "0", "0")]


class TestOracleCommand:
    def test_smooth_surface_estimates(self):
        proc = run_cli("oracle", SPECS["c_n.json"], "--json-only")
        assert proc.returncode == 0, proc.stderr
        report = json.loads(proc.stdout)
        estimates = [float(x) for x in report["results"]["estimates"]]
        assert abs(estimates[-1] - 1.0) < 0.05
        assert abs(float(report["results"]["extrapolated"]) - 1.0) < 1e-3


class TestOtherCommands:
    def test_eval(self):
        proc = run_cli("eval", SPECS["a1.json"], "--json-only")
        assert proc.returncode == 0, proc.stderr
        report = json.loads(proc.stdout)
        assert report["results"]["nvol"] == "2"

    def test_binom2toric(self, tmp_path):
        spec = tmp_path / "binom.json"
        spec.write_text(json.dumps({
            "schema": "reebmin/1", "kind": "binomial", "a": [1, 1, 0], "b": [0, 0, 2],
        }))
        proc = run_cli("binom2toric", str(spec), "--json-only")
        assert proc.returncode == 0, proc.stderr
        report = json.loads(proc.stdout)
        assert report["results"]["n"] == 2

    def test_futaki(self, tmp_path):
        spec = tmp_path / "fut.json"
        spec.write_text(json.dumps({
            "schema": "reebmin/1", "kind": "toric",
            "sigma_dual_rays": [[1, 0], [0, 1]], "u0": [1, 1],
            "xi0": ["2", "1"], "etas": [[1, 0]],
        }))
        proc = run_cli("futaki", str(spec), "--json-only")
        assert proc.returncode == 0, proc.stderr
        report = json.loads(proc.stdout)
        assert report["results"]["all_nonnegative"] is False
        assert float(report["results"]["min_fut"]) == -0.75

    def test_approx(self, tmp_path):
        spec = tmp_path / "approx.json"
        spec.write_text(json.dumps({
            "schema": "reebmin/1", "kind": "approx",
            "target": ["1.41421356237309504880"], "signs": [1],
            "epsilon": "1/2", "q_max": 1000, "mode": "signed",
        }))
        proc = run_cli("approx", str(spec), "--json-only")
        assert proc.returncode == 0, proc.stderr
        report = json.loads(proc.stdout)
        assert report["results"]["q"] <= 10
        assert report["results"]["verified"] is True


class TestThreadsAndOutputs:
    def test_oracle_threads_identical(self):
        one = run_cli("oracle", SPECS["a1.json"], "--json-only", "--threads", "1")
        two = run_cli("oracle", SPECS["a1.json"], "--json-only", "--threads", "3")
        assert one.returncode == two.returncode == 0
        assert json.loads(one.stdout) == json.loads(two.stdout)

    def test_out_file_byte_identical(self, tmp_path):
        out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
        run_cli("minimize", SPECS["spp.json"], "--out", str(out1), "--json-only")
        run_cli("minimize", SPECS["spp.json"], "--out", str(out2), "--json-only")
        assert out1.read_bytes() == out2.read_bytes()

    def test_futaki_complexity_one(self, tmp_path):
        import math as _math

        alpha = (-3 + _math.sqrt(33)) / 4
        doc = json.loads(open(SPECS["dk_4dim.json"]).read())
        doc["xi0"] = [1.0, 1.0, alpha]
        doc["etas"] = [[1, 0, 0], [0, 0, 1]]
        spec = tmp_path / "dk_fut.json"
        spec.write_text(json.dumps(doc))
        proc = run_cli("futaki", str(spec), "--json-only")
        assert proc.returncode == 0, proc.stderr
        report = json.loads(proc.stdout)
        assert report["results"]["all_nonnegative"] is True
        assert all(abs(float(e["fut"])) < 1e-6 for e in report["results"]["entries"])


class TestCliContract:
    def test_parse_failure_exit_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{ not json")
        proc = run_cli("minimize", str(bad))
        assert proc.returncode == 2
        err = json.loads(proc.stderr)
        assert err["error"]["type"] == "SpecError"

    def test_module_error_exit_1(self, tmp_path):
        spec = tmp_path / "bad_cone.json"
        spec.write_text(json.dumps({
            "schema": "reebmin/1", "kind": "toric",
            "sigma_dual_rays": [[1, 0], [-1, 0]], "u0": [1, 1],
        }))
        proc = run_cli("minimize", str(spec))
        assert proc.returncode == 1
        err = json.loads(proc.stderr)
        assert "error" in err

    def test_deterministic_output(self):
        a = run_cli("minimize", SPECS["a1.json"], "--json-only")
        b = run_cli("minimize", SPECS["a1.json"], "--json-only")
        assert a.stdout == b.stdout and a.returncode == b.returncode == 0
