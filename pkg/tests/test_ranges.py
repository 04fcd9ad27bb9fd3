from __future__ import annotations

import pytest

from sl2ext.utils.ranges import (
    RangeResolutionError,
    parse_weight_range,
    resolve_table_request,
    summarize_table_request,
)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("7", [7]),
        ("0..3", [0, 1, 2, 3]),
        ("1,4..6", [1, 4, 5, 6]),
        ("5, 2..3, 5", [2, 3, 5]),
    ],
)
def test_parse_weight_range(text, expected):
    assert parse_weight_range(text) == expected


@pytest.mark.parametrize("text", ["", "a", "3..1", "-2", "1..", "1...3"])
def test_malformed_ranges(text):
    with pytest.raises(RangeResolutionError):
        parse_weight_range(text)


def test_table_request_respects_the_cell_limit():
    request = resolve_table_request({"lambda_range": "0..9", "mu_range": "0..9"}, {"table": {"max_cells": 100}})
    assert request.cells == 100
    with pytest.raises(RangeResolutionError):
        resolve_table_request({"lambda_range": "0..10", "mu_range": "0..9"}, {"table": {"max_cells": 100}})


def test_default_limit_is_ten_thousand():
    with pytest.raises(RangeResolutionError):
        resolve_table_request({"lambda_range": "0..100", "mu_range": "0..99"}, {})


def test_summary_text():
    request = resolve_table_request({"lambda_range": "0..2", "mu_range": "1,5"}, {})
    assert summarize_table_request(request) == "λ ∈ 0..2, μ ∈ 1,5 (6 cells)"
