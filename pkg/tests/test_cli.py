import json
import subprocess
import sys

import pytest

from orthoposet.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, OUT_DIR_ENV, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_poset_dot_d5(capsys):
    code, out, _ = run(capsys, "poset", "--type", "D5", "--roots", "e3+e4,e1+e2")
    assert code == EXIT_OK
    assert out.startswith('digraph "D5" {')
    code, out, _ = run(capsys, "poset", "--type", "D5", "--roots", "e3+e4,e1+e2", "--format", "text")
    assert "B0       {e2+e3, e1+e4}" in out
    assert "C        [2] (A1)" in out


def test_poset_check(capsys):
    code, _, err = run(capsys, "poset", "--type", "E6", "--size", "2", "--format", "json", "--check")
    assert code == EXIT_OK
    assert "comparable" in err and "FAIL" not in err


def test_admissible_counterexample(capsys):
    code, out, _ = run(capsys, "admissible", "--type", "D5", "--roots", "a1+a2+a3,a2+a3+a4,a1+a2+a3+a4+a5")
    # a negative verdict is a result, not a failure
    assert code == EXIT_OK
    assert "admissible (definition): no" in out and "admissible (moved roots): no" in out
    assert "witness:" in out
    code, out, _ = run(capsys, "admissible", "--type", "E7", "--size", "7")
    assert code == EXIT_OK and "definition): yes" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["poset", "--type", "E6", "--size", "3"],
        ["orbits", "--type", "X9", "--size", "1"],
        ["orbits", "--type", "D3", "--size", "1"],
        ["orbits", "--type", "E6"],
        ["orbits", "--type", "E6", "--size", "5"],
        ["orbits", "--type", "A3", "--roots", "a1,a2"],
        ["orbits", "--type", "A3", "--roots", "a1+a3"],
        ["orbits", "--type", "A3", "--roots", "garbage"],
        ["frobnicate"],
        ["orbits", "--type", "A3", "--size", "one"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == EXIT_USAGE


def test_orbits_json_and_determinism(capsys):
    argv = ["orbits", "--type", "E6", "--size", "2", "--format", "json"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    out = json.loads(first)
    assert out["size"] == 270 and out["admissible"] is True
    _, text, _ = run(capsys, "orbits", "--type", "E7", "--size", "7")
    assert "stabilizer  21504" in text


def test_out_dir_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(OUT_DIR_ENV, str(tmp_path))
    code, out, _ = run(capsys, "h-table", "--type", "A5", "--size", "1", "--out", "sub/h.json", "--check")
    assert code == EXIT_OK and out == ""
    data = json.loads((tmp_path / "sub" / "h.json").read_text())
    assert data and set(data[0]) == {"member", "i", "h", "chain"}
    code, _, _ = run(capsys, "h-table", "--type", "A5", "--size", "1", "--format", "text", "--out", "h.txt")
    assert (tmp_path / "h.txt").read_text().startswith("# chain policy: lowest raising node first")


def test_h_table_check_sampled(capsys):
    code, _, err = run(capsys, "h-table", "--type", "D5", "--size", "2", "--check", "--exhaustive-limit", "5", "--budget", "10")
    assert code == EXIT_OK
    assert "literal-chains-exhaustive" in err


def test_verify_braid_and_matrices(capsys, tmp_path):
    path = tmp_path / "m.json"
    code, out, _ = run(capsys, "verify-braid", "--type", "D4", "--size", "2", "--jobs", "1", "--emit-matrices", str(path))
    assert code == EXIT_OK
    assert "braid relations: PASS" in out
    data = json.loads(path.read_text())
    assert set(data["matrices"]) == {"1", "2", "3", "4"}
    assert data["members"] == int(out.split()[0])


def test_tables_command(capsys):
    code, out, _ = run(capsys, "tables", "--type", "E6")
    assert code == EXIT_OK
    assert "0 mismatches" in out
    code, out, _ = run(capsys, "tables", "--type", "D4", "--format", "json")
    assert code == EXIT_FAIL
    diff = json.loads(out)["diff"]
    assert [(d["label"], d["column"]) for d in diff] == [("D4 |B|=4 variant=0 k=2", "normalizer")]


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "orthoposet.cli", "orbits", "--type", "A3", "--size", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "size        6" in proc.stdout
