import json
import subprocess
import sys

import pytest

from rrlab.harness.cli import main

TRIVIAL = "ring S = poly(Q; x, y);\nrho S --expect 0;\n"


@pytest.fixture
def script(tmp_path):
    def write(text, name="s.rr"):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)
    return write


def test_passing_script_exits_zero(script, capsys):
    assert main(["run", script(TRIVIAL)]) == 0
    out = capsys.readouterr().out
    assert "1/1 checks passed: PASS" in out


def test_failing_check_exits_one(script, capsys):
    assert main(["run", script("ring S = poly(Q; x, y);\nrho S --expect 3;\n")]) == 1


def test_parse_error_exits_two_with_position(script, capsys):
    path = script("ring S = poly(Q; x, y);\nmodule M = ideal(x^2 + y);\n")
    assert main(["run", path]) == 2
    assert capsys.readouterr().err.strip() == f"{path}:2:18: inhomogeneous generator"


@pytest.mark.parametrize("argv", [
    ["run"], ["bogus"], ["run", "x.rr", "--field", "fp:10"], ["run", "x.rr", "--seed", "-1"],
    ["corpus", "no_such_entry"],
])
def test_usage_errors_exit_two(argv, capsys):
    assert main(argv) == 2


def test_missing_file_exits_two(tmp_path, capsys):
    assert main(["run", str(tmp_path / "absent.rr")]) == 2


def test_json_and_output_file(script, tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["run", script(TRIVIAL), "--json", "-o", str(out)]) == 0
    printed = capsys.readouterr().out
    assert printed == out.read_text(encoding="utf-8")
    data = json.loads(printed)
    assert data["schema"] == 1 and data["passed"] and data["config"]["seed"] == 0


def test_format_prints_canonical_script(script, capsys):
    assert main(["format", script("ring S=poly(Q;x,y);rho S;")]) == 0
    assert capsys.readouterr().out == "ring S = poly(Q; x, y);\nrho S;\n"


def test_corpus_list(capsys):
    assert main(["corpus", "--list"]) == 0
    assert "trivial" in capsys.readouterr().out.split()


def test_single_entry_corpus_is_fast_and_passes(capsys):
    import time
    t0 = time.perf_counter()
    assert main(["corpus", "trivial", "--jobs", "1"]) == 0
    assert time.perf_counter() - t0 < 1.0


def test_stdin_and_console_script(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "rrlab.harness.cli", "run", "-", "--json"],
                          input=TRIVIAL, capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["passed"]


def test_json_is_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "rrlab.harness.cli", "corpus", "monomial_rho2", "node", "--json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
