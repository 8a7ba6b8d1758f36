from __future__ import annotations

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from hitkit.cli import main
from hitkit.config import LIMITS
from hitkit.report import VerificationReport

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(autouse=True)
def _restore_limits():
    saved = (LIMITS.max_dim, LIMITS.max_group_order)
    yield
    LIMITS.max_dim, LIMITS.max_group_order = saved


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_quot_example(capsys):
    code, out, _ = run(capsys, "quot", "--q", "2", "--n", "3", "--deg-from", "0", "--deg-to", "4", "--json")
    assert code == 0
    rows = json.loads(out)["tables"][0]["rows"]
    assert rows == [[0, 1], [1, 3], [2, 3], [3, 7], [4, 8]]


def test_quot_q3(capsys):
    code, out, _ = run(capsys, "quot", "--q", "3", "--n", "2", "--deg-from", "2", "--deg-to", "2", "--json")
    assert code == 0 and json.loads(out)["tables"][0]["rows"] == [[2, 3]]


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "main1", "--q", "2", "--n", "2", "--k", "2"],
        ["verify", "cuspidal", "--q", "2", "--n", "4"],
        ["verify", "decomposition", "--n", "2"],
        ["verify", "lemma-vn", "--q", "3", "--s", "0", "--r", "2", "--n", "2"],
        ["verify", "ideal-rel", "--q", "2", "--n", "2", "--k", "1", "--y", "1,1"],
        ["verify", "dickson", "--q", "3", "--m", "2"],
        ["verify", "matroid", "--q", "3", "--n", "2", "--complex", "affine"],
        ["verify", "hvector", "--q", "2", "--n", "3", "--k", "1"],
        ["verify", "chi-trick", "--cases", "20", "--seed", "3"],
        ["verify", "spike", "--q", "3", "--m", "2", "--r", "2"],
    ],
)
def test_verify_commands_pass(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0, out
    assert "[FAIL]" not in out and "checks passed" in out


def test_cuspidal_21(capsys):
    code, out, _ = run(capsys, "verify", "cuspidal", "--q", "2", "--n", "4", "--json")
    rep = VerificationReport.from_json(out)
    assert code == 0 and rep.tables[0].rows == [[4, 21, 21, 21]]


def test_literal_sign_fails(capsys):
    code, out, _ = run(capsys, "verify", "lemma-vn", "--q", "3", "--s", "0", "--r", "2", "--n", "2", "--sign", "literal")
    assert code == 1 and "[FAIL]" in out


@pytest.mark.parametrize(
    "argv, code",
    [
        (["suite", "--profile", "nope"], 2),
        (["suite", "--only", "c99"], 2),
        (["quot", "--q", "6", "--n", "2", "--deg-from", "0", "--deg-to", "1"], 2),
        (["quot", "--q", "2", "--n", "0", "--deg-from", "0", "--deg-to", "1"], 2),
        (["quot", "--q", "2", "--n", "2", "--deg-from", "3", "--deg-to", "1"], 2),
        (["verify", "spike", "--q", "2", "--m", "1", "--r", "2"], 2),
        (["verify", "ideal-rel", "--q", "2", "--n", "2", "--y", "0,0"], 2),
        (["verify", "ideal-rel", "--q", "2", "--n", "2", "--y", "a,b"], 2),
        (["--json", "--format", "csv", "verify", "dickson", "--q", "2", "--m", "2"], 2),
        (["--threads", "0", "suite"], 2),
        (["--max-dim", "100", "quot", "--q", "2", "--n", "4", "--deg-from", "11", "--deg-to", "11"], 3),
        (["--max-group-order", "20", "verify", "decomposition", "--n", "3"], 3),
    ],
)
def test_exit_codes(capsys, argv, code):
    try:
        got = main(argv)
    except SystemExit as exc:
        got = exc.code
    assert got == code


def test_flags_after_subcommand(capsys):
    a, out_a, _ = run(capsys, "--json", "--no-timing", "verify", "spike", "--q", "2", "--m", "2")
    b, out_b, _ = run(capsys, "verify", "spike", "--q", "2", "--m", "2", "--json", "--no-timing")
    assert a == b == 0 and out_a == out_b


def test_json_round_trip(capsys):
    _, out, _ = run(capsys, "verify", "hvector", "--q", "3", "--n", "2", "--k", "2", "--json", "--no-timing")
    rep = VerificationReport.from_json(out)
    assert rep.to_json() == out
    assert rep.passed and rep.elapsed_ms == 0
    with pytest.raises(ValueError):
        VerificationReport.from_dict(json.loads(out) | {"schema": 9})


def test_csv_layout(capsys):
    _, out, _ = run(capsys, "verify", "matroid", "--q", "2", "--n", "2", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "table,vertices,dim,f,h"
    assert lines[1].startswith("complex,")


def test_suite_threads_deterministic(capsys):
    _, one, _ = run(capsys, "suite", "--only", "c01", "--only", "c09", "--only", "c13", "--json", "--no-timing")
    _, four, _ = run(capsys, "suite", "--only", "c01", "--only", "c09", "--only", "c13", "--json", "--no-timing", "--threads", "3")
    assert one == four
    rows = json.loads(one)["tables"][0]["rows"]
    assert [r[0] for r in rows] == ["c01", "c09", "c13"]
    assert json.loads(one)["tables"][0]["columns"][-1] == "status"


def test_suite_timing_column(capsys):
    _, out, _ = run(capsys, "suite", "--only", "c02", "--json")
    assert json.loads(out)["tables"][0]["columns"][-1] == "ms"


@pytest.mark.parametrize(
    "name, argv",
    [
        ("suite_fast.json", ["suite", "--profile", "fast", "--no-timing", "--json"]),
        ("main1_2_2_2.json", ["verify", "main1", "--q", "2", "--n", "2", "--k", "2", "--no-timing", "--json"]),
        ("decomposition_2.txt", ["verify", "decomposition", "--n", "2", "--no-timing"]),
        ("quot_2_3.csv", ["quot", "--q", "2", "--n", "3", "--deg-from", "0", "--deg-to", "4", "--format", "csv", "--no-timing"]),
    ],
)
def test_golden(capsys, name, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == (GOLDEN / name).read_text()


def test_numpy_fallback_subprocess():
    env = dict(os.environ, HITKIT_NO_NUMBA="1")
    argv = [sys.executable, "-m", "hitkit.cli", "verify", "main1", "--q", "3", "--n", "2", "--k", "1", "--no-timing", "--json"]
    res = subprocess.run(argv, env=env, capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    probe = subprocess.run(
        [sys.executable, "-c", "from hitkit import _accel; print(_accel.HAVE_NUMBA)"], env=env, capture_output=True, text=True
    )
    assert probe.stdout.strip() == "False"
    plain = subprocess.run(argv, capture_output=True, text=True)
    assert plain.stdout == res.stdout
