from __future__ import annotations

import json


def test_golden_ext_record(run_cli, golden):
    result = run_cli("ext", "--p", "3", "--lambda", "1", "--mu", "7", "--format", "json")
    expected = (golden / "ext_delta_delta.json").read_text(encoding="utf-8").strip()
    assert result.stdout.strip() == expected
    assert json.loads(result.stdout) == json.loads(expected)


def test_golden_witness_text(witness_text, golden):
    assert witness_text == (golden / "witness.specseq").read_text(encoding="utf-8")
