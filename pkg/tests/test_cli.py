import io
import subprocess
import sys
from pathlib import Path

import pytest

import oracles
from elgotkit.cli import main

SPECS = Path(__file__).parent.parent / "demos" / "specs"
EXAMPLE = str(SPECS / "example1.proc")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_traces_example():
    code, out, _ = run("traces", EXAMPLE, "--var", "x3", "--maxlen", "3")
    assert code == 0
    assert out.splitlines() == ["<eps>", "aa", "aab"]


@pytest.mark.parametrize("maxlen", [0, 1, 5, 7])
def test_traces_match_oracle(maxlen):
    text = Path(EXAMPLE).read_text()
    _, out, _ = run("traces", EXAMPLE, "--var", "x3", "--maxlen", str(maxlen))
    want = [w or "<eps>" for w in oracles.bfs_traces(text, "x3", maxlen)]
    assert out.splitlines() == want


def test_traces_multi_letter_actions(tmp_path):
    f = tmp_path / "long.proc"
    f.write_text("sig actions go stop\nx = go.x + stop.tick")
    _, out, _ = run("traces", str(f), "--var", "x", "--maxlen", "2")
    assert out.splitlines() == ["stop", "go.stop"]


def test_solve_prints_every_variable():
    code, out, _ = run("solve", EXAMPLE, "--depth", "2")
    assert code == 0
    text = Path(EXAMPLE).read_text()
    assert out.splitlines() == [f"{v} = {oracles.unfold(text, v, 2)}" for v in ("x3", "x1", "x2")]
    assert out.splitlines()[0] == "x3 = T{ leaf ✓ | a(T{ a(@cut) }) }"


def test_solve_unguarded_fails_with_path():
    code, out, err = run("solve", str(SPECS / "unguarded.proc"))
    assert code == 1 and out == ""
    assert "x = [x] + tick  (unguarded x at left)" in err
    code, out, _ = run("solve", str(SPECS / "unguarded.proc"), "--least")
    assert code == 0 and out == "x = T{ leaf ✓ }\n"


def test_traces_unguarded_needs_least():
    assert run("traces", str(SPECS / "unguarded.proc"), "--var", "x", "--maxlen", "2")[0] == 1
    code, out, _ = run("traces", str(SPECS / "unguarded.proc"), "--var", "x", "--maxlen", "2",
                       "--least")
    assert code == 0 and out == "<eps>\n"


def test_unfold():
    assert run("unfold", str(SPECS / "delay.proc"), "--var", "x", "--depth", "0")[1] == "@cut\n"
    assert run("unfold", str(SPECS / "delay.proc"), "--var", "x", "--depth", "2")[1] == \
        "T{ delay(T{ delay(@cut) }) }\n"


def test_laws_pass_and_summary():
    code, out, _ = run("laws", "--monad", "maybe", "--law", "fixpoint", "--size", "1")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "FIXPOINT 1x1x1:0 PASS"
    assert lines[-1] == "# fixpoint: pass=3 (vacuous=0) fail=0 nonconv=0"


def test_laws_all_quiet():
    code, out, _ = run("laws", "--monad", "powerset", "--law", "all", "--size", "1", "--quiet")
    assert code == 0
    assert all(line.startswith("# ") for line in out.splitlines())
    assert len(out.splitlines()) == 8


def test_laws_traces_sampled():
    code, out, _ = run("laws", "--monad", "traces", "--law", "weak", "--size", "1",
                       "--samples", "5", "--depth", "3")
    assert code == 0 and out.splitlines()[-1].startswith("# weak: pass=5")


def test_laws_budget():
    code, out, err = run("laws", "--monad", "powerset", "--law", "bekic", "--size", "2",
                         "--budget", "1000")
    assert code == 1 and out == ""
    assert "raise --budget" in err


@pytest.mark.parametrize("argv", [[], ["solve"], ["traces", EXAMPLE, "--maxlen", "3"],
                                  ["unfold", EXAMPLE, "--var", "x3", "--depth", "-1"],
                                  ["laws", "--monad", "list", "--law", "all", "--size", "1"],
                                  ["frobnicate"]])
def test_usage_errors(argv, capsys):
    assert run(*argv)[0] == 2


def test_spec_errors(tmp_path):
    code, _, err = run("solve", str(tmp_path / "missing.proc"))
    assert code == 1 and "cannot read" in err
    bad = tmp_path / "bad.proc"
    bad.write_text("x = a.(x\n")
    code, _, err = run("solve", str(bad))
    assert code == 1 and "line 1, column 9" in err
    assert run("traces", EXAMPLE, "--var", "nope", "--maxlen", "2")[0] == 1


COMMANDS = [
    ["solve", EXAMPLE, "--depth", "4"],
    ["traces", EXAMPLE, "--var", "x3", "--maxlen", "6"],
    ["unfold", EXAMPLE, "--var", "x2", "--depth", "3"],
    ["laws", "--monad", "traces", "--law", "fixpoint", "--size", "2", "--samples", "10"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0])
def test_module_entry_point_is_deterministic(argv):
    cmd = [sys.executable, "-m", "elgotkit", *argv]
    a = subprocess.run(cmd, capture_output=True, check=True)
    b = subprocess.run(cmd, capture_output=True, check=True)
    assert a.stdout == b.stdout and a.stdout
