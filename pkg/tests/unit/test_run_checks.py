import importlib.util
from pathlib import Path

import pytest

SCRIPT = Path(__file__).resolve().parents[2] / "scripts" / "run_checks.py"


@pytest.fixture(scope="module")
def run_checks():
    spec = importlib.util.spec_from_file_location("run_checks", SCRIPT)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


@pytest.mark.unit
class TestRunChecks:
    def test_default_sequence(self, run_checks):
        steps = run_checks.build_steps()
        assert [s.name for s in steps] == ["isort", "black", "flake8", "pytest", "verify --grid tiny"]
        assert steps[3].argv[-2:] == ["-m", "not slow"]
        assert steps[4].argv[-4:] == ["--grid", "tiny", "--workers", "1"]
        assert "--check-only" in steps[0].argv and "--check" in steps[1].argv

    def test_options(self, run_checks):
        steps = run_checks.build_steps(grid="small", slow=True, fix=True, workers=3)
        assert "not slow" not in steps[3].argv
        assert "--check-only" not in steps[0].argv and "--check" not in steps[1].argv
        assert steps[4].name == "verify --grid small"
        assert steps[4].argv[-1] == "3"

    def test_verify_exit_codes_are_explained(self, run_checks):
        verify = run_checks.build_steps()[4]
        assert run_checks.describe(verify, 1) == "an identity failed"
        assert run_checks.describe(verify, 2) == "invalid grid or guard"
        assert run_checks.describe(run_checks.build_steps()[0], 1) == "exit 1"

    def test_summary_fails_when_a_step_fails(self, run_checks, monkeypatch, capsys):
        codes = {"flake8": 1}
        monkeypatch.setattr(run_checks, "run_step", lambda step: codes.get(step.name, 0))
        assert run_checks.main([]) == 1
        out = capsys.readouterr().out
        assert "1 of 5 checks failed" in out
        monkeypatch.setattr(run_checks, "run_step", lambda step: 0)
        assert run_checks.main(["--grid", "small"]) == 0
