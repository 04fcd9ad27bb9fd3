from __future__ import annotations

import pytest

from sl2ext.verify import SUITES, SuiteReport, SuiteSettings, run_suite

SMALL = SuiteSettings(
    primes=(2, 3, 5),
    max_weight=12,
    trials=5,
    seed=11,
    pages=3,
    shape=(4, 4),
    max_cell_dim=3,
)


@pytest.mark.parametrize("name", sorted(SUITES))
def test_each_suite_passes_on_a_small_grid(name: str):
    report = run_suite(name, SMALL)
    assert report.passed, report.first_failure
    assert report.checked > 0


def test_all_merges_every_suite():
    combined = run_suite("all", SMALL)
    assert combined.name == "all"
    assert combined.passed, combined.first_failure
    assert combined.checked == sum(SUITES[name](SMALL).checked for name in SUITES)
    assert any(note.startswith("[collapse]") for note in combined.notes)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("spectral", SMALL)


def test_report_records_first_failure_lazily():
    report = SuiteReport("demo")
    calls = []

    def message() -> str:
        calls.append(1)
        return "broken"

    report.check(True, message)
    report.check(False, message)
    report.check(False, lambda: "also broken")
    assert calls == [1]
    assert not report.passed
    assert report.first_failure == "broken"
    assert report.lines()[:3] == ["checks: 3", "failures: 2", "first failure: broken"]

    parent = SuiteReport("all")
    parent.merge(report)
    assert parent.failures == ["[demo] broken", "[demo] also broken"]
