import subprocess
import sys
from pathlib import Path

import orjson
import pytest
from click.testing import CliRunner

from src.opcalc.cli import commands
from src.opcalc.cli.commands import cli
from src.opcalc.common import CheckResult, ReportUtils
from src.opcalc.exceptions import ErrorCode, ValidationError
from src.opcalc.model.dto.CommandRequest import CommandRequest
from src.opcalc.service.ComputeService import ComputeService
from src.opcalc.service.VerificationService import VerificationService


@pytest.fixture
def runner():
    return CliRunner()


def _report(result):
    return orjson.loads(result.stdout)


def test_verify_passing_suite(runner):
    result = runner.invoke(cli, ["verify", "combinat", "--quick"])
    assert result.exit_code == 0
    report = _report(result)
    assert report["suite"] == "combinat"
    assert report["status"] == "pass"
    assert report["schema"] == 1
    assert report["checked"] > 0
    assert "elapsed_ms" not in report


def test_verify_ring_with_timing(runner):
    result = runner.invoke(cli, ["verify", "ring", "--timing"])
    assert result.exit_code == 0
    report = _report(result)
    assert report["ring_fingerprint"]
    assert "elapsed_ms" in report


@pytest.mark.parametrize("args", [["verify", "combinat", "--quick"], ["verify", "ring"]])
def test_verify_report_is_byte_identical_across_runs(runner, args):
    first = runner.invoke(cli, args)
    second = runner.invoke(cli, args)
    assert first.exit_code == second.exit_code == 0
    assert first.stdout_bytes == second.stdout_bytes


def test_verify_writes_report_file(runner, tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(cli, ["verify", "combinat", "--quick", "--out", str(out)])
    assert result.exit_code == 0
    assert result.stdout == ""
    assert orjson.loads(out.read_bytes())["status"] == "pass"


def test_verify_failure_exit_code(runner, monkeypatch):
    failing = CheckResult("super-jacobi")
    failing.record(False, {"m": 1}, lhs="P(0,0; 1)", rhs="0")

    class FailingService:
        def run_suite(self, request):
            return ReportUtils.from_checks(request.target, [failing])

    monkeypatch.setattr(commands, "get_verification_service", lambda: FailingService())
    result = runner.invoke(cli, ["verify", "jacobi"])
    assert result.exit_code == ErrorCode.VERIFICATION_FAILED.exit_code == 1
    report = _report(result)
    assert report["status"] == "fail"
    assert report["failures"][0]["lhs"] == "P(0,0; 1)"


def test_usage_errors_exit_2(runner):
    result = runner.invoke(cli, ["verify", "t-relations", "--ring", "curve-cohomology"])
    assert result.exit_code == 2
    assert orjson.loads(result.stderr)["error"] == "VALIDATION_ERROR"
    assert runner.invoke(cli, ["verify", "no-such-suite"]).exit_code == 2
    result = runner.invoke(cli, ["compute", "[P(1,1;1)"])
    assert result.exit_code == 2
    assert orjson.loads(result.stderr)["error"] == "PARSE_ERROR"
    result = runner.invoke(cli, ["compute", "tau-pullback"])
    assert result.exit_code == 2
    assert orjson.loads(result.stderr)["error"] == "INVALID_BOUNDS"


def test_compute_expression(runner):
    result = runner.invoke(cli, ["compute", "[P(0,1;1), P(1,0;1)]", "--ring", "curve-chow"])
    assert result.exit_code == 0
    payload = _report(result)
    assert payload["command"] == "compute"
    assert payload["result"]["type"] == "LieElem"
    assert payload["result"]["value"] == "P(0,0; 1)"


def test_compute_applies_operator(runner):
    result = runner.invoke(cli, ["compute", "P(1,0; p0)", "--ring", "curve-chow", "--apply-to", "1"])
    assert result.exit_code == 0
    assert _report(result)["result"]["image"] == "x(1; p0)"


def test_compute_decompose_table(runner):
    result = runner.invoke(cli, ["compute", "decompose", "--table", "two-copies"])
    assert result.exit_code == 0
    assert _report(result)["result"]["m0_dimension"] == 2


def test_show_commands(runner):
    result = runner.invoke(cli, ["show", "ring", "--ring", "curve-chow"])
    assert result.exit_code == 0
    assert "rewrite rules" in result.stdout
    result = runner.invoke(cli, ["show", "op", "P(1,0;1)", "--ring", "curve-chow", "--as-diffop"])
    assert result.exit_code == 0
    lines = _report(result)["result"]["diffop"]
    assert lines[0].startswith("P(1,0; 1) = ")


def test_verification_service_rejects_unknown_suite():
    with pytest.raises(ValidationError) as info:
        VerificationService().run_suite(CommandRequest(verb="verify", target="nope"))
    assert info.value.error_code is ErrorCode.UNKNOWN_SUITE


def test_verification_service_aggregates():
    service = VerificationService()
    report = service.run_suite(CommandRequest(verb="verify", target="combinat", quick=True))
    assert report.passed
    assert "all" not in service.suite_names()
    assert len(service.suite_names()) == 18



def test_x_sl2_ladder_total_follows_weight(monkeypatch):
    module = sys.modules[VerificationService.__module__]
    seen = {}

    def recorder(name):
        def check(ring, bound):
            seen[name] = bound
            return CheckResult(name, checked=1)
        return check

    for name in ("sl2_verify", "x_ladder_check", "fourier_involution_check", "ad_ladder_check"):
        monkeypatch.setattr(module, name, recorder(name))
    report = VerificationService().run_suite(
        CommandRequest(verb="verify", target="x-sl2", max_genus=1, max_index=2, weight=6))
    assert report.passed
    assert seen == {"sl2_verify": 2, "x_ladder_check": 6, "fourier_involution_check": 6, "ad_ladder_check": 6}
    assert report.parameters["max_index"] == 2
    assert report.parameters["max_total"] == 6

def test_compute_service_gamma():
    service = ComputeService()
    payload = service.compute(CommandRequest(verb="compute", target="gamma", k=2, ring="curve-chow"))
    assert payload["result"]["k"] == 2
    assert payload["ring_fingerprint"]


def test_internal_error_exit_code(runner, monkeypatch):
    class BrokenService:
        def compute(self, request):
            raise RuntimeError("boom")

    monkeypatch.setattr(commands, "get_compute_service", lambda: BrokenService())
    result = runner.invoke(cli, ["compute", "gamma"])
    assert result.exit_code == 3
    assert orjson.loads(result.stderr)["error"] == "INTERNAL_ERROR"


@pytest.mark.parametrize("module", ["src.opcalc.dependencies", "src.opcalc.service", "src.opcalc.cli.commands"])
def test_service_layer_imports_on_its_own(module):
    root = Path(__file__).resolve().parents[1]
    completed = subprocess.run([sys.executable, "-c", f"import {module}"], cwd=root, capture_output=True, text=True)
    assert completed.returncode == 0, completed.stderr
