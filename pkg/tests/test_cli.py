import json
import os
import subprocess
import sys
from fractions import Fraction

import pytest

from finitude import cli
from finitude.errors import VerificationError

from conftest import SAMPLES
from oracles import scipy_ell1


def run(argv, capsys):
    cwd = os.getcwd()
    os.chdir(SAMPLES)
    try:
        code = cli.main(argv)
    finally:
        os.chdir(cwd)
    out = capsys.readouterr()
    return code, json.loads(out.out), out.err


OK_COMMANDS = [
    ["semigroup", "analyze", "t3.json"],
    ["semigroup", "analyze", "i2.json"],
    ["semigroup", "groupoid", "i2.json"],
    ["semigroup", "verify-iso", "b2.json"],
    ["algebra", "verify-iso", "b2.json"],
    ["graph", "analyze", "rose.json"],
    ["graph", "cohn", "loop_exit.json"],
    ["graph", "groupoid", "edge.json"],
    ["graph", "verify-iso", "loop.json"],
    ["trace", "build", "pair2.json"],
    ["trace", "verify", "pair2.json", "pair2_weights.json"],
    ["norm", "ell1", "element.json"],
    ["schutz", "t3.json", "--idempotent", "012"],
    ["algebra", "witness", "rose_witness.json"],
]


@pytest.mark.parametrize("argv", OK_COMMANDS, ids=lambda a: " ".join(a))
def test_commands_succeed(argv, capsys):
    code, report, err = run(argv + ["--samples", "40"], capsys)
    assert code == 0, err
    assert report["status"] == "ok"
    assert report["seed"] == 0
    assert len(report["input_sha256"]) == 64
    assert "timing_seconds" not in report


@pytest.mark.parametrize("argv", [
    ["graph", "groupoid", "loop_exit.json"],
    ["semigroup", "groupoid", "t3.json"],
    ["semigroup", "analyze", "missing.json"],
], ids=lambda a: " ".join(a))
def test_input_errors_exit_2(argv, capsys):
    code, report, err = run(argv, capsys)
    assert code == 2
    assert report["status"] == "input_rejected"
    assert err.startswith("finitude: ")


def test_malformed_json_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, report, _ = run(["semigroup", "analyze", str(bad)], capsys)
    assert code == 2 and "malformed JSON" in report["error"]


def test_verification_failure_exits_1(monkeypatch, capsys):
    def boom(E):
        raise VerificationError("forced")
    monkeypatch.setattr(cli, "graph_verdict", boom)
    code, report, err = run(["graph", "analyze", "rose.json"], capsys)
    assert code == 1
    assert report["status"] == "verification_failed" and report["error"] == "forced"


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    cwd = os.getcwd()
    os.chdir(SAMPLES)
    try:
        code = cli.main(["graph", "analyze", "loop.json", "-o", str(target)])
    finally:
        os.chdir(cwd)
    assert code == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["result"]["stably_finite"] is True


def test_timing_is_opt_in(capsys):
    _, report, _ = run(["graph", "analyze", "loop.json", "--timing"], capsys)
    assert report["timing_seconds"] >= 0


def test_verdicts_in_reports(capsys):
    _, rose, _ = run(["graph", "analyze", "rose.json"], capsys)
    assert rose["result"]["stably_finite"] is False
    _, t3, _ = run(["schutz", "t3.json"], capsys)
    assert sorted(t3["result"]["maximal_subgroup_orders"]) == [1, 2, 6]
    _, w, _ = run(["algebra", "witness", "rose_witness.json"], capsys)
    assert w["result"]["verdict"] == "valid infiniteness witness"


def test_bad_weights_reported_not_invariant(capsys):
    code, report, _ = run(["trace", "verify", "pair2.json", "bad_weights.json", "--samples", "20"], capsys)
    assert code == 0
    res = report["result"]
    assert res["invariant"] is False and "invariance_certificate" in res


def test_ell1_matches_lp_oracle(capsys):
    _, report, _ = run(["norm", "ell1", "element.json"], capsys)
    num, den = report["result"]["ell1"]
    # pair groupoid on two objects, arrows (i,j) in row order
    dom = [0, 1, 0, 1]
    ran = [0, 0, 1, 1]
    coeffs = {0: Fraction(1), 1: Fraction(-2), 3: Fraction(1, 2)}
    assert abs(Fraction(num, den) - Fraction(scipy_ell1(dom, ran, coeffs)).limit_denominator(1000)) == 0


def test_seed_is_recorded_and_deterministic(capsys):
    argv = ["trace", "build", "pair2.json", "--samples", "30", "--seed", "7"]
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert a == b and a["seed"] == 7


def test_console_script_subprocess():
    env = dict(os.environ)
    proc = subprocess.run([sys.executable, "-m", "finitude.cli", "graph", "analyze", "edge.json"],
                          cwd=SAMPLES, capture_output=True, text=True, env=env)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["no_exit"] is True


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0
    assert "finitude" in capsys.readouterr().out
