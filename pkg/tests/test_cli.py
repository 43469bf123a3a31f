import json
import subprocess
import sys

import numpy as np
import pytest

from hcizkit.cli import main
from hcizkit.hciz import format_tensor, random_hermitian


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def record(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    rec = json.loads(out)
    assert set(rec) == {"command", "inputs", "value", "value_kind", "elapsed_ms"}
    return rec


def test_pc_all_routes(capsys):
    rec = record(capsys, "pc", "--sigma", "(1 2)", "--tau", "()", "--l", "1", "--route", "all")
    assert rec["value"] == 1 and rec["value_kind"] == "integer"
    assert set(rec["inputs"]["routes"].values()) == {1}
    assert set(rec["inputs"]["routes"]) == {"alternating", "monotone", "partition", "folding"}


def test_pc_two_colors(capsys):
    rec = record(capsys, "pc", "--sigma", "(12)", "--tau", "()", "--sigma2", "()", "--tau2", "(12)",
                 "--l", "2", "--route", "all")
    assert rec["inputs"]["ell"] == 2 and rec["value"] > 0


def test_hurwitz_single(capsys):
    assert record(capsys, "hurwitz", "single", "--alpha", "2", "--genus", "0")["value"] == 1
    assert record(capsys, "hurwitz", "double", "--alpha", "2,1", "--beta", "3", "--genus", "1")["value"] == 30
    assert record(capsys, "hurwitz", "double", "--alpha", "2,1", "--beta", "3", "--l", "3",
                  "--from-single")["value"] == 30
    rec = record(capsys, "hurwitz", "higher", "--alpha", "2;2", "--beta", "2;2", "--genus", "1")
    assert rec["value"] == 1


def test_weingarten_forms(capsys):
    rec = record(capsys, "weingarten", "--perm", "()", "--exact", "5")
    assert rec["value"] == "1/5" and rec["value_kind"] == "rational"
    rec = record(capsys, "weingarten", "--perm", "(1 2)", "--series", "4")
    assert rec["value_kind"] == "laurent_series"
    assert rec["value"]["leading_exponent"] == 3 and rec["value"]["coefficients"][0] == "-1"
    rec = record(capsys, "weingarten", "--perm", "(123)", "--asymptotic")
    assert rec["value"]["coefficients"] == ["2"]


def test_bms(capsys):
    assert record(capsys, "bms", "--alpha", "2", "--beta", "2", "--l", "0", "--k", "0")["value"] == 1


def test_global_flags_anywhere(capsys):
    code, out, _ = run(capsys, "--format", "table", "hurwitz", "single", "--alpha", "2", "--genus", "0")
    assert code == 0 and out.splitlines()[0].startswith("command")
    code, out, _ = run(capsys, "hurwitz", "single", "--alpha", "2", "--genus", "0", "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("command,inputs,value")


def _err(err):
    return json.loads(err.strip().splitlines()[-1])


def test_exit_codes(capsys):
    code, _, err = run(capsys, "pc", "--sigma", "(12")
    assert code == 2 and _err(err)["error"] == "parse"
    code, _, err = run(capsys, "hurwitz", "single", "--alpha", "2", "--genus", "0", "--l", "1")
    assert code == 2
    code, _, err = run(capsys, "hurwitz", "single", "--alpha", "2,1", "--l", "4")
    assert code == 2
    code, _, err = run(capsys, "weingarten", "--perm", "(123456)", "--exact", "7")
    assert code == 3 and _err(err)["error"] == "budget"
    code, _, err = run(capsys, "pc", "--sigma", "(12)", "--tau", "()", "--l", "9")
    assert code == 3
    code, _, _ = run(capsys, "--unsafe-budget", "pc", "--sigma", "(12)", "--tau", "()", "--l", "9")
    assert code == 0


def test_verify(capsys):
    rec = record(capsys, "verify", "--suite", "hurwitz", "--max-n", "2")
    assert all(c["passed"] for c in rec["value"])


def test_verify_failure_exit_code(capsys, monkeypatch):
    from hcizkit import verify
    from hcizkit.verify import Check
    monkeypatch.setitem(verify.SUITES, "hciz", lambda max_n: [Check("broken", False, [1, 2], 1)])
    code, out, _ = run(capsys, "verify", "--suite", "hciz")
    assert code == 1 and json.loads(out)["value"][0]["counterexample"] == [1, 2]


def test_moments_from_files(capsys, tmp_path):
    rng = np.random.default_rng(2)
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    a.write_text(format_tensor(random_hermitian(2, 1, rng, rational=True)))
    b.write_text(format_tensor(random_hermitian(2, 1, rng, rational=True)))
    rec = record(capsys, "moments", "--tensor-a", str(a), "--tensor-b", str(b), "--n", "2", "--dim", "2")
    assert rec["value_kind"] in ("integer", "rational")
    rec = record(capsys, "cumulants", "--tensor-a", str(a), "--tensor-b", str(b), "--n", "2")
    assert rec["value_kind"] in ("integer", "rational")
    rec = record(capsys, "moments", "--tensor-a", str(a), "--tensor-b", str(b), "--n", "1",
                 "--montecarlo", "2000", "--seed", "4")
    assert rec["value_kind"] == "float±err" and rec["value"]["standard_error"] > 0
    code, _, _ = run(capsys, "moments", "--tensor-a", str(a), "--tensor-b", str(b), "--n", "1", "--dim", "3")
    assert code == 2
    f = tmp_path / "f.txt"
    f.write_text(format_tensor(random_hermitian(2, 1, rng)))
    rec = record(capsys, "moments", "--tensor-a", str(f), "--tensor-b", str(f), "--n", "1")
    assert rec["value_kind"] == "float±err" and rec["value"]["standard_error"] == 0.0


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "hcizkit", "hurwitz", "single", "--alpha", "2", "--genus", "0"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["value"] == 1
