"""Tests for the console interface."""

import json
from pathlib import Path

import pytest

from lcd_certify.__main__ import EXIT_BUDGET, EXIT_USAGE, main

TEST_FILES: Path = Path(__file__).parent.parent / "test_files"
SIMPLEX = "1" * 31


def exit_code(argv: list[str]) -> int:
    with pytest.raises(SystemExit) as info:
        main(argv)
    return info.value.code


def test_analyze_simplex(capsys: pytest.CaptureFixture[str]):
    main(["analyze", SIMPLEX])
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("| defining_vector | n | k | d | h |")
    assert f"| {SIMPLEX} | 31 | 5 | 16 | 5 | False | True | 1+31y^16 |" in out


def test_analyze_file_as_csv(capsys: pytest.CaptureFixture[str]):
    main(["analyze", "--input", str(TEST_FILES / "vectors.txt"), "--format", "csv"])
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 4
    assert lines[0] == "defining_vector,n,k,d,h,lcd,so,weight_enumerator"
    assert [line.split(",")[4] for line in lines[1:]] == ["5", "3", "5"]


def test_analyze_json(capsys: pytest.CaptureFixture[str]):
    main(["analyze", SIMPLEX, "--format", "json"])
    (data,) = json.loads(capsys.readouterr().out)
    assert data["h"] == 5
    assert data["so"] is True
    assert data["degenerate"] is False


def test_bad_vector():
    assert exit_code(["analyze", "1x1"]) == EXIT_USAGE


def test_usage_errors():
    assert exit_code(["certify", "--n", "4"]) == EXIT_USAGE
    assert exit_code(["table", "--id", "9"]) == EXIT_USAGE
    assert exit_code(["table", "--id", "3", "--verify"]) == EXIT_USAGE
    assert exit_code(["enumerate", "--n", "31"]) == EXIT_USAGE
    assert exit_code(["analyze", SIMPLEX, "--workers", "0"]) == EXIT_USAGE


def test_bad_config(tmp_path: Path):
    config = tmp_path / "bad.cfg"
    config.write_text("seed 3\n")
    assert exit_code(["analyze", SIMPLEX, "--config", str(config)]) == EXIT_USAGE


def test_table_one(capsys: pytest.CaptureFixture[str]):
    main(["table", "--id", "1", "--s", "1", "--format", "csv"])
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,s,t,d_a,d_l,status"
    assert "45,1,14,22,21,cited" in lines


def test_enumerate_simplex(capsys: pytest.CaptureFixture[str]):
    main(["enumerate", "--n", "31", "--d", "16", "--format", "json"])
    data = json.loads(capsys.readouterr().out)
    assert data["total"] == 1
    assert data["vectors"] == [SIMPLEX]
    assert data["by_type"] == {"]](1)_31]]": 1}


def test_enumerate_budget():
    argv = [
        "enumerate",
        "--n",
        "44",
        "--d",
        "22",
        "--max-entry",
        "2",
        "--require-zero",
        "--labeled",
        "--node-budget",
        "10",
    ]
    assert exit_code(argv) == EXIT_BUDGET


def test_classify_file(capsys: pytest.CaptureFixture[str]):
    path = TEST_FILES / "table2_row1.txt"
    main(["classify", "--input", str(path), "--format", "csv"])
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2
    assert lines[0].startswith("class_id,type,representative,h,")
    fields = lines[1].split(",")
    assert fields[0] == "1"
    assert fields[1] == "]](0)_1|(1)_19|(2)_11]]"
    assert fields[3] == "3"


def test_witness_none(capsys: pytest.CaptureFixture[str]):
    main(["witness", "--n", "6", "--d", "2"])
    assert capsys.readouterr().out.strip() == "null"


def test_output_file(tmp_path: Path, capsys: pytest.CaptureFixture[str]):
    target = tmp_path / "simplex.json"
    main(["analyze", SIMPLEX, "-o", str(target)])
    assert capsys.readouterr().out == ""
    (data,) = json.loads(target.read_text())
    assert data["weight_enumerator"] == "1+31y^16"


@pytest.mark.slow
def test_table_three_shows_errata(capsys: pytest.CaptureFixture[str]):
    main(["table", "--id", "3", "--format", "csv"])
    _, diffs = capsys.readouterr().out.split("\n\n")
    flagged = {
        line.split(",")[1] for line in diffs.splitlines() if line.endswith(",True")
    }
    assert {"2", "3"} <= flagged
