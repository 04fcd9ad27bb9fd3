from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sl2ext.specseq import (
    Bicomplex,
    BicomplexFormatError,
    GenerationMode,
    Hypothesis,
    check_collapse,
    check_exactness,
    couple_at,
    derive,
    dumps,
    exact_couple,
    infinity_page,
    k2_is_zero,
    loads,
    page,
    pages,
    random_bicomplex,
    square,
    total_homology,
    validate,
    vertical_hypothesis,
    witness,
)
from sl2ext.specseq import linalg
from sl2ext.specseq.bicomplex import DEFAULT_MODULUS
from sl2ext.specseq.pages import stable_index


def nonzero(page_) -> dict:
    return {cell: dim for cell, dim in page_.dims.items() if dim}


# -- linear algebra over F_r ------------------------------------------------------


def test_rank_nullspace_and_solve():
    mat = linalg.as_matrix([[1, 2], [2, 4]], 2, 2, 7)
    assert linalg.rank(mat, 7) == 1
    kernel = linalg.nullspace(mat, 7)
    assert kernel.shape == (2, 1)
    assert linalg.is_zero(linalg.matmul(mat, kernel, 7))
    rhs = linalg.as_matrix([[3], [6]], 2, 1, 7)
    solution = linalg.solve(mat, rhs, 7)
    assert solution is not None
    assert np.array_equal(linalg.matmul(mat, solution, 7), rhs)
    assert linalg.solve(mat, linalg.as_matrix([[1], [0]], 2, 1, 7), 7) is None


def test_inverse():
    mat = linalg.as_matrix([[1, 1], [0, 1]], 2, 2, 7)
    assert linalg.inverse(mat, 7).tolist() == [[1, 6], [0, 1]]
    with pytest.raises(ValueError):
        linalg.inverse(linalg.as_matrix([[1, 2], [2, 4]], 2, 2, 7), 7)


# -- bicomplexes ------------------------------------------------------------------


def test_square_is_valid_and_acyclic():
    grid = square()
    assert validate(grid).ok
    assert total_homology(grid) == [0, 0, 0]
    assert vertical_hypothesis(grid) is Hypothesis.ALL_INJECTIVE


def test_flipped_square_violates_anticommutation():
    report = validate(square(flip=True))
    assert not report.ok
    assert "d0d1 + d1d0" in report.first


def test_from_commuting_applies_column_signs():
    built = Bicomplex.from_commuting(
        2,
        2,
        {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1},
        d0={(0, 0): [[1]], (1, 0): [[1]]},
        d1={(0, 0): [[1]], (0, 1): [[1]]},
    )
    assert dumps(built) == dumps(square())


def test_text_format_round_trip(witness_text):
    assert dumps(loads(witness_text)) == witness_text


@pytest.mark.parametrize(
    "text",
    [
        "",
        "specseq v2 7 1 1\n",
        "specseq v1 7 1 1\ncell 0 0 x\n",
        "specseq v1 7 2 1\ncell 0 0 1\ncell 1 0 1\nd1 0 0 1 1\n",
        "specseq v1 7 1 1\ncell 3 0 1\n",
    ],
)
def test_malformed_text_is_rejected(text):
    with pytest.raises(BicomplexFormatError):
        loads(text)


# -- the witness --------------------------------------------------------------------


def test_witness_pages():
    grid = witness()
    assert validate(grid).ok
    e0, e1, e2, e3 = pages(grid, 3)
    assert sum(e0.dims.values()) == 4
    assert nonzero(e1) == {(0, 1): 1, (2, 0): 1}
    assert nonzero(e2) == {(0, 1): 1, (2, 0): 1}
    assert not linalg.is_zero(e2.differential(0, 1))
    assert nonzero(e3) == {}
    assert nonzero(infinity_page(grid)) == {}
    assert total_homology(grid) == [0, 0, 0, 0]


def test_witness_fails_to_collapse_but_converges():
    report = check_collapse(witness())
    assert report.hypothesis is Hypothesis.NONE
    assert not report.collapsed
    assert report.converges
    assert report.passed
    assert report.first_discrepancy.startswith("E_2")


def test_witness_second_connecting_map_is_nonzero():
    grid = witness()
    assert not k2_is_zero(couple_at(grid, 2), 0, 1)
    assert not k2_is_zero(exact_couple(grid), 0, 1)
    with pytest.raises(ValueError):
        couple_at(grid, 0)


def test_witness_couples_are_exact():
    couple = exact_couple(witness())
    for _ in range(3):
        assert check_exactness(couple) == []
        couple = derive(couple)


# -- generated bicomplexes --------------------------------------------------------------


def test_generation_is_deterministic():
    first = random_bicomplex(11, (4, 3), GenerationMode.GENERIC, max_cell_dim=4)
    second = random_bicomplex(11, (4, 3), GenerationMode.GENERIC, max_cell_dim=4)
    assert dumps(first) == dumps(second)
    assert validate(first).ok


def test_generation_limits():
    with pytest.raises(ValueError):
        random_bicomplex(1, (9, 2))
    with pytest.raises(ValueError):
        random_bicomplex(1, (3, 3), max_cell_dim=7)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_zero_verticals_collapse(seed):
    grid = random_bicomplex(seed, (4, 4), GenerationMode.ALL_ZERO, max_cell_dim=3)
    report = check_collapse(grid)
    assert report.hypothesis is Hypothesis.ALL_ZERO
    assert report.collapsed and report.converges


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_injective_verticals_collapse(seed):
    grid = random_bicomplex(seed, (4, 4), GenerationMode.ALL_INJECTIVE, max_cell_dim=3)
    report = check_collapse(grid)
    assert report.hypothesis is not Hypothesis.NONE
    assert report.passed


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10_000))
def test_exact_couple_pages_match_filtration_pages(seed):
    grid = random_bicomplex(seed, (4, 3), GenerationMode.GENERIC, max_cell_dim=4)
    couple = exact_couple(grid)
    for r in range(1, 5):
        assert check_exactness(couple) == []
        assert couple.page_dims() == page(grid, r).dims
        couple = derive(couple)
    assert check_collapse(grid).converges


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(list(GenerationMode)))
def test_pages_shrink_and_stabilise(seed, mode):
    grid = random_bicomplex(seed, (4, 3), mode, max_cell_dim=3)
    last = stable_index(grid)
    sequence = pages(grid, last + 2)
    for earlier, later in zip(sequence, sequence[1:]):
        assert all(later.dim(*cell) <= earlier.dim(*cell) for cell in grid.cells())
    assert sequence[last].dims == sequence[last + 1].dims == sequence[last + 2].dims
    for k, expected in enumerate(total_homology(grid)):
        assert sequence[last].diagonal_total(k) == expected


def test_witness_third_page_agrees_with_derived_couple():
    grid = witness()
    assert couple_at(grid, 3).page_dims() == page(grid, 3).dims
    assert nonzero(page(grid, 3)) == {}


def test_modulus_is_carried_through():
    grid = random_bicomplex(5, (3, 3), GenerationMode.ALL_ZERO, max_cell_dim=2, modulus=101)
    assert grid.modulus == 101
    assert witness().modulus == DEFAULT_MODULUS
