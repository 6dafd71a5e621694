"""Command-line interface: outputs, formats and exit codes."""

import io
import json
import math
import shutil
import subprocess
import sys

import pytest

from nosig import cli
from nosig.config import SCENARIOS
from nosig.errors import NotConverged, UnmatchedTerm
from nosig.report import REPORT_KEYS, canonical_json


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


class TestRun:
    def test_z_gate_json(self):
        code, out, _ = run("run", "z_gate", "--basis2-theta", "1.5707963", "--format", "json")
        doc = json.loads(out)
        assert code == 0
        assert doc["trace_distance"] == pytest.approx(0.7071067, abs=1e-6)
        assert doc["verdict"] == "SIGNALLING"

    def test_cnot_single_basis(self):
        code, out, _ = run("run", "cnot", "--basis2-theta", "0", "--expect", "NO_SIGNALLING")
        assert code == 0
        assert json.loads(out)["verdict"] == "NO_SIGNALLING"

    def test_all(self):
        code, out, _ = run("run", "all", "--format", "json")
        doc = json.loads(out)
        assert code == 0
        assert [r["scenario"] for r in doc] == list(SCENARIOS)
        assert all(set(r) == REPORT_KEYS for r in doc)

    def test_report_roundtrips_bytes(self):
        _, out, _ = run("run", "all")
        assert canonical_json(json.loads(out)) + "\n" == out

    def test_report_echoes_resolved_config(self):
        _, out, _ = run("run", "general_op")
        config = json.loads(out)["config"]
        assert sorted(config["machine"]["ancilla"]) == ["psi1", "psi1_bar", "psi2", "psi2_bar"]
        assert config["basis2"]["theta"] == pytest.approx(math.pi / 2)

    def test_text_format(self):
        code, out, _ = run("run", "cloning", "--format", "text")
        assert code == 0
        assert "verdict: SIGNALLING" in out

    def test_not_gate_flags(self):
        code, out, _ = run("run", "not_gate", "--theta", "0", "--mu", "3.141592653589793", "--nu", "3.141592653589793")
        assert code == 0
        assert json.loads(out)["trace_distance"] < 1e-10

    def test_no_machine(self):
        _, out, _ = run("run", "cloning", "--no-machine")
        assert json.loads(out)["trace_distance"] < 1e-12

    def test_threshold(self):
        _, out, _ = run("run", "z_gate", "--threshold", "0.9")
        assert json.loads(out)["verdict"] == "NO_SIGNALLING"

    def test_expect_mismatch(self):
        code, _, _ = run("run", "z_gate", "--expect", "NO_SIGNALLING")
        assert code == cli.EXIT_MISMATCH

    def test_config_file(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"kind": "z_gate", "basis2": {"theta": 0.0}}))
        code, out, _ = run("run", "z_gate", "--config", str(path))
        assert code == 0
        assert json.loads(out)["verdict"] == "NO_SIGNALLING"

    def test_config_from_report_reproduces_run(self, tmp_path):
        _, out, _ = run("run", "not_gate", "--a", "0.3", "--theta", "1.1")
        report = json.loads(out)
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(report["config"]))
        _, again, _ = run("run", "not_gate", "--config", str(path))
        assert again == out


class TestExitCodes:
    def test_usage(self):
        assert run("run", "teleport")[0] == cli.EXIT_USAGE
        assert run()[0] == cli.EXIT_USAGE
        assert run("sweep", "not_gate", "--axes", "theta=0:1")[0] == cli.EXIT_USAGE
        assert run("run", "z_gate", "--basis1-theta", "north")[0] == cli.EXIT_USAGE

    def test_help(self):
        assert run("--help")[0] == 0

    def test_config_errors(self, tmp_path):
        assert run("run", "z_gate", "--basis1-theta", "4")[0] == cli.EXIT_CONFIG
        assert run("run", "not_gate", "--a", "2")[0] == cli.EXIT_CONFIG
        assert run("run", "z_gate", "--mu", "1")[0] == cli.EXIT_CONFIG
        bad = tmp_path / "bad.json"
        bad.write_text('{"kind": "z_gate", "extra": 1}')
        code, _, err = run("run", "z_gate", "--config", str(bad))
        assert code == cli.EXIT_CONFIG and "extra" in err
        bad.write_text("{not json")
        assert run("run", "z_gate", "--config", str(bad))[0] == cli.EXIT_CONFIG
        assert run("run", "z_gate", "--config", str(tmp_path / "missing.json"))[0] == cli.EXIT_CONFIG
        assert run("sweep", "z_gate", "--axes", "theta=0:1:3")[0] == cli.EXIT_CONFIG
        assert run("sweep", "z_gate", "--axes", "basis2_theta=0:1:1")[0] == cli.EXIT_CONFIG

    @pytest.mark.parametrize("exc", [UnmatchedTerm("no rule for 'psi3'"), NotConverged("stuck")])
    def test_scenario_errors(self, monkeypatch, exc):
        def boom(cfg):
            raise exc

        monkeypatch.setattr(cli, "run_scenario", boom)
        code, _, err = run("run", "z_gate")
        assert code == cli.EXIT_SCENARIO
        assert "scenario error" in err


class TestSweep:
    def test_row_count(self, tmp_path):
        path = tmp_path / "s.csv"
        code, _, _ = run(
            "sweep", "not_gate", "--axes", "theta=0:3.14159:9", "--minimize", "mu,nu",
            "--phase-steps", "4", "--out", str(path),
        )
        lines = path.read_bytes().decode().split("\n")
        assert code == 0
        assert lines[0] == "theta,distance,verdict"
        assert len(lines) == 9 + 2 and lines[-1] == ""

    def test_two_axes(self):
        code, out, _ = run("sweep", "not_gate", "--axes", "a=0.1:0.9:5,theta=0:3.14159:7")
        assert code == 0
        assert out.count("\n") == 36
        assert out.startswith("a,theta,distance,verdict\n")

    def test_no_carriage_returns_or_separators(self):
        _, out, _ = run("sweep", "z_gate", "--axes", "basis2_theta=0:3:4")
        assert "\r" not in out
        for line in out.splitlines()[1:]:
            assert len(line.split(",")) == 3

    def test_byte_deterministic(self):
        args = ("sweep", "not_gate", "--axes", "theta=0:3:3", "--minimize", "mu", "--phase-steps", "4")
        assert run(*args)[1] == run(*args)[1]


@pytest.mark.skipif(shutil.which("nosig") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["nosig", "run", "cloning"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["scenario"] == "cloning"


def test_module_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "nosig.cli", "run", "teleport"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 2


def test_selftest():
    code, out, _ = run("selftest")
    lines = out.strip().split("\n")
    assert code == 0
    assert len(lines) == 9 and all(line.startswith("[PASS]") for line in lines)
