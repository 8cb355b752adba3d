import json
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "clusterlab_cli.tools.clusterlab"]


def run_cli(args, env, cwd=None):
    return subprocess.run(CLI + args, env=env, cwd=cwd, capture_output=True, text=True, timeout=600)


@pytest.mark.integration
def test_moments_exact(cli_env, tmp_path):
    proc = run_cli(["moments", "--n", "5", "--r", "3", "--p", "1/2"], cli_env, cwd=tmp_path)
    assert proc.returncode == 0, proc.stderr
    record = json.loads(proc.stdout)
    assert record["lambda"] == "15/32"
    assert record["mode"] == "exact"
    assert record["N"] == "10"
    assert all(isinstance(v, str) for k, v in record.items() if k not in {"n", "r", "nu", "nu0"})


@pytest.mark.integration
def test_moments_float_mode(cli_env, tmp_path):
    proc = run_cli(["moments", "--n", "10", "--r", "3", "--p", "0.1"], cli_env, cwd=tmp_path)
    assert proc.returncode == 0, proc.stderr
    record = json.loads(proc.stdout)
    assert record["mode"] == "float"
    assert record["xi"] == "0.11"
    assert "decimal" in proc.stderr


@pytest.mark.integration
def test_invalid_instance_exits_2(cli_env, tmp_path):
    proc = run_cli(["moments", "--n", "4", "--r", "5"], cli_env, cwd=tmp_path)
    assert proc.returncode == 2
    assert "ERROR" in proc.stderr
    assert proc.stdout == ""


@pytest.mark.integration
def test_exactdist_lines(cli_env, tmp_path):
    proc = run_cli(["exactdist", "--n", "3", "--r", "3", "--p", "1/2"], cli_env, cwd=tmp_path)
    assert proc.returncode == 0, proc.stderr
    lines = [json.loads(line) for line in proc.stdout.splitlines()]
    assert lines == [{"edges": [], "prob": "7/8"}, {"edges": [[0, 1, 2]], "prob": "1/8"}]


@pytest.mark.integration
def test_shamir_csv_with_summary(cli_env, tmp_path):
    outputs = {}
    for workers in ("1", "2"):
        out = tmp_path / f"w{workers}" / "trace.csv"
        proc = run_cli(
            ["shamir", "--n", "6", "--r", "3", "--runs", "8", "--seed", "11", "--stop-m", "5", "--format", "csv"]
            + ["--workers", workers, "--out", str(out)],
            cli_env,
            cwd=tmp_path,
        )
        assert proc.returncode == 0, proc.stderr
        summary = json.loads((out.parent / "trace.summary.json").read_text(encoding="utf-8"))
        assert summary["gamma_1"] == "0.1"
        assert summary["phi0"] == "10"
        assert summary["recursion_ok"] is True
        outputs[workers] = out.read_text(encoding="utf-8")
    assert outputs["1"] == outputs["2"]
    header, *rows = outputs["1"].splitlines()
    assert header.split(",") == ["run", "t", "removed_edge", "Phi", "xi", "gamma", "alpha"]
    assert len(rows) == 8 * 15
    assert rows[0].split(",")[4:6] == ["1/10", "1/10"]


@pytest.mark.integration
def test_simulate_is_worker_independent(cli_env, tmp_path):
    args = ["simulate", "--n", "7", "--r", "3", "--p", "1/2", "--samples", "300", "--seed", "5"]
    one = run_cli(args + ["--workers", "1"], cli_env, cwd=tmp_path)
    three = run_cli(args + ["--workers", "3"], cli_env, cwd=tmp_path)
    assert one.returncode == 0, one.stderr
    assert one.stdout == three.stdout
    record = json.loads(one.stdout)
    assert record["samples"] == 300
    assert {row["statistic"] for row in record["stats"]} >= {"e", "W2"}


@pytest.mark.integration
def test_yaml_config_and_flags(cli_env, tmp_path):
    config = tmp_path / "moments.yaml"
    config.write_text("n: 5\nr: 3\np: '1/4'\n", encoding="utf-8")
    proc = run_cli(["moments", "--config", str(config), "--p", "1/2"], cli_env, cwd=tmp_path)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["lambda"] == "15/32"

    config.write_text("n: 5\nr: 3\nsamples: 10\n", encoding="utf-8")
    proc = run_cli(["moments", "--config", str(config)], cli_env, cwd=tmp_path)
    assert proc.returncode == 2


@pytest.mark.integration
def test_factors_on_graph_file(cli_env, tmp_path):
    graph = tmp_path / "k6.txt"
    graph.write_text("6 0\n" + "".join(f"{u} {v}\n" for u in range(6) for v in range(u + 1, 6)), encoding="utf-8")
    proc = run_cli(["factors", "--graph", str(graph), "--r", "3"], cli_env, cwd=tmp_path)
    assert proc.returncode == 0, proc.stderr
    record = json.loads(proc.stdout)
    assert record["factors"] == "10"
    assert record["matchings"] == "10"
    # each of the 15 edges lies in 4 triangles
    assert record["clusters"]["W2"] == "90"
    assert record["clusters"]["t_s"]["2"] == "90"


@pytest.mark.slow
@pytest.mark.integration
def test_verify_tiny(cli_env, tmp_path):
    out = tmp_path / "verify.json"
    proc = run_cli(["verify", "--grid", "tiny", "--workers", "1", "--out", str(out)], cli_env, cwd=tmp_path)
    assert proc.returncode == 0, proc.stderr
    record = json.loads(out.read_text(encoding="utf-8"))
    assert record["ok"] is True
    assert record["issues"] == []
    assert int(record["checks"]) > 0


@pytest.mark.integration
def test_simulate_with_largest_seed(cli_env, tmp_path):
    # n = 8 is past the exact-expectation guard, so expectations are sampled too
    args = ["simulate", "--n", "8", "--r", "3", "--p", "1/2", "--samples", "6", "--expectation-samples", "6"]
    proc = run_cli(args + ["--seed", str(2**64 - 1), "--statistics", "e", "good", "--workers", "1"], cli_env, cwd=tmp_path)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["seed"] == 2**64 - 1


@pytest.mark.integration
def test_factors_default_m_is_at_least_n_over_r(cli_env, tmp_path):
    proc = run_cli(["factors", "--n", "6", "--r", "3", "--p", "1/4", "--workers", "1"], cli_env, cwd=tmp_path)
    assert proc.returncode == 0, proc.stderr
    record = json.loads(proc.stdout)
    # pi N = 20/64 rounds to 0; m is raised to n/r = 2
    assert record["sigma_nm"] == "1/19"
    proc = run_cli(["factors", "--n", "6", "--r", "3", "--p", "1/4", "--m", "1"], cli_env, cwd=tmp_path)
    assert proc.returncode == 2
    assert "ERROR" in proc.stderr
