# tests/test_cli.py
import json

import numpy as np
import pandas as pd
import pytest

from linescan.experiments import plant_instance
from linescan.models import DistributionSpec, Interval
from linescan_api.run_cli import main

P = DistributionSpec.gaussian(0.0, 0.5)
FAR = DistributionSpec.gaussian(5.0, 0.5)

PLAN = """
name = "cli"
seed = 5
trials = 4
n_values = [24, 32]

[p]
kind = "gaussian"
mean = 0.0
variance = 0.5

[q]
kind = "gaussian"
mean = 5.0
variance = 0.5

[kernel]
kind = "gaussian"
sigma = 1.0

[i_min]
values = [6, 8, 12]

[threshold]
t = 0.5
"""


def write_column(path, values):
    path.write_text("\n".join(repr(float(v)) for v in values) + "\n", encoding="utf-8")
    return str(path)


@pytest.fixture
def planted_files(tmp_path):
    series = plant_instance(P, FAR, 48, Interval(10, 20), 3)
    return (
        write_column(tmp_path / "ref.csv", series.reference),
        write_column(tmp_path / "obs.csv", series.observed),
    )


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("LINESCAN_THREADS", raising=False)
    monkeypatch.delenv("LINESCAN_DENSE_LIMIT", raising=False)


# --- mmd ---

def test_mmd_of_identical_constants(tmp_path, capsys):
    a = write_column(tmp_path / "a.csv", [1.0] * 6)
    assert main(["mmd", "--x", a, "--y", a, "--kernel", "gaussian", "--sigma", "1"]) == 0
    assert capsys.readouterr().out.strip() == "0.0"


# --- scan ---

def test_scan_alarm_exit_code_and_json(planted_files, capsys):
    ref, obs = planted_files
    code = main(["scan", "--reference", ref, "--observed", obs, "--imin", "5", "--threshold", "0.5"])
    assert code == 3
    out = json.loads(capsys.readouterr().out)
    assert out["decision"] == "H1"
    assert out["trigger"] == "exhaustive_max"
    assert set(out["best_interval"]) == {"start", "length"}


def test_scan_unreachable_threshold_is_h0(planted_files, capsys):
    ref, obs = planted_files
    assert main(["scan", "--reference", ref, "--observed", obs, "--imin", "2", "--threshold", "1e9"]) == 0
    assert json.loads(capsys.readouterr().out)["decision"] == "H0"


def test_scan_multiscale_and_known_mmd(planted_files, capsys):
    ref, obs = planted_files
    code = main([
        "scan", "--reference", ref, "--observed", obs, "--imin", "8",
        "--known-mmd", "1.4", "--delta", "0.5", "--algorithm", "multiscale",
        "--extension-min-length", "0", "--mode", "streaming",
    ])
    out = json.loads(capsys.readouterr().out)
    assert code == 3
    assert out["threshold"] == pytest.approx(0.7)
    assert out["diagnostics"]["algorithm"] == "multiscale"


def test_scan_output_file_matches_stdout(planted_files, tmp_path, capsys):
    ref, obs = planted_files
    args = ["scan", "--reference", ref, "--observed", obs, "--imin", "4", "--threshold", "0.5"]
    main(args)
    printed = capsys.readouterr().out
    target = tmp_path / "outcome.json"
    main(args + ["--threads", "0", "--out", str(target)])
    assert target.read_text(encoding="utf-8") == printed


def test_scan_usage_errors(planted_files, tmp_path, capsys):
    ref, obs = planted_files
    base = ["scan", "--reference", ref, "--observed", obs, "--imin", "4"]
    assert main(base) == 2
    assert main(base + ["--threshold", "0.5", "--decaying"]) == 2
    assert main(base + ["--known-mmd", "0.5"]) == 2
    assert main(base + ["--threshold", "0.5", "--delta", "0.1"]) == 2
    assert main(base + ["--threshold", "0.5", "--threads", "-2"]) == 2
    capsys.readouterr()


def test_scan_runtime_error_is_structured(planted_files, tmp_path, capsys):
    ref, _ = planted_files
    short = write_column(tmp_path / "short.csv", [0.0, 1.0, 2.0])
    assert main(["scan", "--reference", ref, "--observed", short, "--imin", "2", "--threshold", "0.5"]) == 1
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert err["code"] == "invalid-argument"
    assert "same length" in err["message"]


def test_scan_imin_above_n(planted_files, capsys):
    ref, obs = planted_files
    assert main(["scan", "--reference", ref, "--observed", obs, "--imin", "49", "--threshold", "0.5"]) == 1
    assert json.loads(capsys.readouterr().err.strip())["code"] == "invalid-argument"


# --- experiment ---

def test_experiment_csv_rows_follow_plan(tmp_path):
    plan = tmp_path / "plan.toml"
    plan.write_text(PLAN, encoding="utf-8")
    out = tmp_path / "results.csv"
    assert main(["experiment", "--plan", str(plan), "--out", str(out)]) == 0
    frame = pd.read_csv(out)
    assert len(frame) == 2 * 3
    assert list(frame.columns) == ["n", "i_min", "t", "p_e", "p_h0_err", "p_h1_err", "std_err", "trials"]
    assert (frame["trials"] == 4).all()


def test_experiment_is_byte_identical_across_threads(tmp_path):
    plan = tmp_path / "plan.toml"
    plan.write_text(PLAN, encoding="utf-8")
    one, many = tmp_path / "one.json", tmp_path / "many.json"
    assert main(["experiment", "--plan", str(plan), "--out", str(one), "--threads", "1"]) == 0
    assert main(["experiment", "--plan", str(plan), "--out", str(many), "--threads", "0"]) == 0
    assert one.read_bytes() == many.read_bytes()
    payload = json.loads(one.read_text(encoding="utf-8"))
    assert payload["seed"] == 5
    assert len(payload["estimates"]) == 6


def test_experiment_overrides_and_seed_echo(tmp_path, capsys):
    plan = tmp_path / "plan.toml"
    plan.write_text(PLAN.replace("seed = 5\n", ""), encoding="utf-8")
    assert main(["experiment", "--plan", str(plan), "--trials", "2", "--format", "json"]) == 0
    captured = capsys.readouterr()
    payload = json.loads(captured.out)
    assert payload["trials"] == 2
    assert f"seed={payload['seed']}" in captured.err

    assert main(["experiment", "--plan", str(plan), "--trials", "2", "--seed", "9", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["seed"] == 9


def test_experiment_bad_plan_leaves_no_file(tmp_path, capsys):
    plan = tmp_path / "plan.toml"
    plan.write_text(PLAN.replace("[threshold]\nt = 0.5", "[threshold]\nmode = \"known_mmd\""), encoding="utf-8")
    out = tmp_path / "results.csv"
    assert main(["experiment", "--plan", str(plan), "--out", str(out)]) == 1
    assert not out.exists()
    assert json.loads(capsys.readouterr().err.strip())["code"] == "plan"
    assert main(["experiment", "--preset", "test1", "--plan", str(plan)]) == 2


def test_experiment_prescan_threshold_above_t_is_a_plan_error(tmp_path, capsys):
    plan = tmp_path / "plan.toml"
    plan.write_text(PLAN.replace('n_values = [24, 32]\n', 'n_values = [24, 32]\nalgorithm = "multiscale"\nt_prime = 0.9\n'), encoding="utf-8")
    out = tmp_path / "results.csv"
    assert main(["experiment", "--plan", str(plan), "--out", str(out)]) == 1
    assert not out.exists()
    err = json.loads(capsys.readouterr().err.strip())
    assert err["code"] == "plan"
    assert "t_prime" in err["message"]


# --- intervals ---

def test_intervals_grid_csv(capsys):
    assert main(["intervals", "--n", "8"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "level,start,length"
    assert len(lines) == 1 + 15
    assert lines[-1] == "3,0,8"


def test_intervals_extension_family(capsys):
    assert main(["intervals", "--n", "16", "--base-start", "8", "--base-length", "4", "--levels", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1:] == ["2,8,4", "2,6,6", "2,8,6", "2,6,8"]
    assert main(["intervals", "--n", "16", "--base-start", "8"]) == 2


# --- top level ---

def test_version_and_help(capsys):
    assert main(["--version"]) == 0
    assert "linescan" in capsys.readouterr().out
    assert main(["scan", "--help"]) == 0
    assert main([]) == 2
