from __future__ import annotations

import json

import pytest


def test_cli_json_output(run_cli):
    result = run_cli("ext", "--p", "3", "--lambda", "1", "--mu", "7", "--format", "json")
    payload = json.loads(result.stdout)
    assert payload["dims"] == [0, 1, 1]
    assert payload["cutoff"] == 3
    assert payload["block"] == "linked"
    assert payload["key"] == "weyl-weyl(1, 7; p=3)"


def test_cli_text_output(run_cli):
    result = run_cli("ext", "--p", "3", "--lambda", "1", "--mu", "7")
    assert "Ext^0: 0" in result.stdout
    assert "Ext^1: 1" in result.stdout
    assert "Ext^2: 1" in result.stdout
    assert "cutoff=3" in result.stdout


def test_cli_csv_output(run_cli):
    result = run_cli("ext", "--p", "3", "--family", "delta-simple", "--lambda", "1", "--mu", "3", "--format", "csv")
    assert result.stdout.splitlines() == ["lambda,mu,q,dim", "1,3,0,0", "1,3,1,1"]


def test_cli_zero_vector_csv(run_cli):
    result = run_cli("ext", "--p", "3", "--lambda", "0", "--mu", "1", "--format", "csv")
    assert result.stdout.splitlines() == ["lambda,mu,q,dim", "0,1,0,0"]


def test_cli_max_degree_truncates(run_cli):
    result = run_cli("ext", "--p", "3", "--lambda", "1", "--mu", "7", "--max-degree", "1", "--format", "json")
    assert json.loads(result.stdout)["dims"] == [0, 1]


def test_cli_twist_closed_form(run_cli):
    result = run_cli(
        "ext",
        "--p",
        "5",
        "--family",
        "twist-closed-form",
        "--lambda",
        "1",
        "--r1",
        "0",
        "--mu",
        "0",
        "--r2",
        "3",
        "--format",
        "json",
    )
    payload = json.loads(result.stdout)
    assert payload["dims"] == [0, 1]
    assert payload["key"] == "twist-twist(1, 0, 0, 3; p=5)"


def test_cli_unsupported_family_exit_code(run_cli):
    result = run_cli("ext", "--p", "3", "--family", "simple-simple", "--lambda", "100", "--mu", "103", check=False)
    assert result.returncode == 2
    assert "tensor product decomposition" in result.stderr
    assert result.stdout == ""


def test_cli_rejects_composite_p(run_cli):
    result = run_cli("ext", "--p", "4", "--lambda", "1", "--mu", "7", check=False)
    assert result.returncode == 1
    assert "error" in result.stderr


def test_cli_requires_p(run_cli):
    result = run_cli("ext", "--lambda", "1", "--mu", "7", check=False)
    assert result.returncode == 1
    assert "--p is required" in result.stderr


def test_cli_bad_range(run_cli):
    result = run_cli("table", "--p", "3", "--lambda", "5..1", "--mu", "3", check=False)
    assert result.returncode == 1


def test_cli_table_sparse_csv(run_cli):
    result = run_cli("table", "--p", "3", "--lambda", "1", "--mu", "3,7", "--format", "csv", "--sparse")
    assert result.stdout.splitlines() == [
        "lambda,mu,q,dim",
        "1,3,0,1",
        "1,3,1,1",
        "1,7,1,1",
        "1,7,2,1",
    ]
    assert "computing" in result.stderr


def test_cli_table_sparse_json_drops_zero_records(run_cli):
    result = run_cli("table", "--p", "3", "--lambda", "0..1", "--mu", "7", "--format", "json", "--sparse")
    records = json.loads(result.stdout)
    assert [(record["lambda"], record["mu"]) for record in records] == [(1, 7)]


def test_cli_quantum_json(run_cli):
    result = run_cli("ext", "--quantum-l", "3", "--lambda", "4,3", "--mu", "7", "--format", "json")
    payload = json.loads(result.stdout)
    assert payload["dims"] == [0, 1, 1]
    assert payload["lambda"] == [4, 3]
    assert payload["mu"] == [7, 0]
    assert payload["quantum"] == {"l": 3, "p": 0}


def test_cli_quantum_csv_joins_gl2_weights(run_cli):
    result = run_cli("ext", "--quantum-l", "3", "--lambda", "2,1", "--mu", "3", "--format", "csv")
    assert result.stdout.splitlines() == ["lambda,mu,q,dim", "2;1,3;0,0,1", "2;1,3;0,1,1"]


def test_cli_format_from_environment(run_cli):
    result = run_cli("ext", "--p", "3", "--lambda", "1", "--mu", "3", env_extra={"SL2EXT_FORMAT": "json"})
    assert json.loads(result.stdout)["dims"] == [1, 1]


def test_cli_verify_route(run_cli):
    result = run_cli("verify", "--suite", "route", "--p", "3", "--max-weight", "10")
    assert "PASS" in result.stdout
    assert "failures: 0" in result.stdout


def test_cli_cache_round_trip(run_cli, workspace):
    run_cli("ext", "--p", "3", "--lambda", "1", "--mu", "7")
    assert (workspace / ".sl2ext" / "cache.jsonl").is_file()

    exported = workspace / "export.jsonl"
    result = run_cli("cache", "export", str(exported))
    assert exported.read_text(encoding="utf-8").strip()
    assert "exported" in result.stderr

    other = workspace / "other.jsonl"
    result = run_cli("--cache", str(other), "cache", "import", str(exported), "--paranoid")
    assert "rejected 0" in result.stderr
    assert other.read_text(encoding="utf-8") == exported.read_text(encoding="utf-8")


def test_cli_cache_import_missing_file(run_cli, workspace):
    result = run_cli("cache", "import", str(workspace / "absent.jsonl"), check=False)
    assert result.returncode == 1
    assert "not found" in result.stderr


@pytest.mark.parametrize("argv", [(), ("cache",)])
def test_cli_incomplete_commands_exit_one(run_cli, argv):
    result = run_cli(*argv, check=False)
    assert result.returncode == 1


def test_cli_version(run_cli):
    result = run_cli("--version")
    assert result.stdout.startswith("sl2ext ")
