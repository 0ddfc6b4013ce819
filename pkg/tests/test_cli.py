from __future__ import annotations

import json
import subprocess
import sys

import pytest

from hochex.cli import main


def run(capsys, *argv: str):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_homology_top_row(capsys) -> None:
    code, out, _ = run(capsys, "homology", "--vertices", "3", "--truncation", "4", "--char", "0", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert [(r["q"], r["dim"]) for r in data["rows"] if r["dim"]] == [(6, 1)]
    assert data["schema"] == 1 and data["command"] == "homology"


def test_homology_loop_char_two(capsys) -> None:
    code, out, _ = run(capsys, "homology", "-s", "1", "-n", "2", "--char", "2", "--format", "json")
    rows = {r["q"]: r["dim"] for r in json.loads(out)["rows"] if r["dim"]}
    assert code == 0 and rows == {2: 1, 3: 1}


def test_homology_text(capsys) -> None:
    code, out, _ = run(capsys, "homology", "-s", "3", "-n", "4")
    assert code == 0 and "all rows match" in out


def test_extend_base(capsys) -> None:
    code, out, _ = run(capsys, "extend", "-s", "3", "-n", "2", "--degree", "3", "--coeffs", "1", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "BASE" and data["lemma42"] is False


def test_extend_trivial(capsys) -> None:
    code, out, _ = run(capsys, "extend", "-s", "3", "-n", "3", "--degree", "3", "--coeffs", "1,0")
    assert code == 0 and "verdict: TRIVIAL_EXT" in out


def test_extend_zero_class_warns(capsys) -> None:
    code, out, err = run(capsys, "extend", "-s", "3", "-n", "4", "--degree", "6", "--coeffs", "0")
    assert code == 0 and "zero class" in err and "TRIVIAL_EXT" in out


def test_extend_mixed(capsys) -> None:
    code, out, _ = run(
        capsys, "extend", "-s", "1", "-n", "3", "-q", "4", "--coeffs", "1", "-q", "5", "--coeffs", "1", "--format", "json"
    )
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "BASE" and data["top_class_nonzero"] is True


@pytest.mark.parametrize(
    "argv",
    [
        ["extend", "-s", "3", "-n", "4", "--degree", "5"],
        ["extend", "-s", "3", "-n", "3", "--degree", "3", "--coeffs", "1"],
        ["extend", "-s", "3", "-n", "2"],
        ["homology", "-s", "0", "-n", "2"],
        ["homology", "-s", "2", "-n", "1"],
        ["homology", "-s", "2", "-n", "3", "--char", "4"],
        ["extend", "-s", "3", "-n", "2", "-q", "3", "--coeffs", "1/3", "--char", "3"],
        ["oracle", "-s", "4", "-n", "4"],
        ["frobnicate"],
    ],
)
def test_usage_errors(capsys, argv) -> None:
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_oracle(capsys) -> None:
    code, out, _ = run(capsys, "oracle", "-s", "3", "-n", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["h2_bar"] == data["hh2_bar"] == data["hh2_skoldberg_sum"] == 1
    code, out, _ = run(capsys, "oracle", "-s", "1", "-n", "2", "--char", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["h2_bar"] == data["hh2_bar"] == data["hh2_skoldberg_sum"] == 2


def test_oracle_refusal_explains(capsys) -> None:
    code, _, err = run(capsys, "oracle", "-s", "4", "-n", "4")
    assert code == 2 and "16" in err and "12" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["-s", "3", "-n", "4", "--char", "0"],
        ["-s", "3", "-n", "2", "--char", "3"],
        ["-s", "2", "-n", "5", "--char", "0"],
        ["-s", "3", "-n", "3", "--char", "2"],
    ],
)
def test_verify_passes(capsys, argv) -> None:
    code, out, _ = run(capsys, "verify", *argv)
    assert code == 0 and out.rstrip().endswith("PASS")


def test_verify_reports_symmetry(capsys) -> None:
    code, out, _ = run(capsys, "verify", "-s", "3", "-n", "2", "--char", "3", "--format", "json")
    checks = {c["name"]: c for c in json.loads(out)["checks"]}
    sym = checks["T_alpha symmetric (top degree)"]
    assert code == 0 and sym["ok"] and sym["detail"] == "SYMMETRIC"


def test_json_is_byte_identical(capsys) -> None:
    argv = ["verify", "-s", "3", "-n", "2", "--char", "5", "--seed", "3", "--format", "json"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_worker_processes_match(capsys, monkeypatch) -> None:
    argv = ["verify", "-s", "1", "-n", "3", "--format", "json"]
    _, serial, _ = run(capsys, *argv)
    monkeypatch.setenv("HOCHEX_THREADS", "2")
    _, parallel, _ = run(capsys, *argv)
    assert serial == parallel


def test_module_entry_point() -> None:
    proc = subprocess.run(
        [sys.executable, "-m", "hochex", "homology", "-s", "2", "-n", "2", "--format", "json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["all_match"] is True


def test_failed_check_exits_one(capsys, monkeypatch) -> None:
    import hochex.cli as cli
    from hochex.homology import HomologyRow

    monkeypatch.setattr(cli, "homology_report", lambda A: [HomologyRow(2, 1, 0)])
    code, out, _ = run(capsys, "verify", "-s", "2", "-n", "2")
    assert code == 1 and "FAIL: homology formula" in out
    code, out, _ = run(capsys, "homology", "-s", "2", "-n", "2")
    assert code == 1 and "MISMATCH" in out
