from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from sl2ext.grothendieck import (
    euler_weyl_simple,
    good_filtration_factors,
    simple_dimension,
    simple_in_weyls,
    tilting_dimension,
    tilting_weyl_multiplicities,
    weyl_filtration_factors,
    weyl_in_simples,
)
from sl2ext.weights import WeightContext, WeightError


def test_clebsch_gordan_factors():
    assert good_filtration_factors(2, 3) == [(5, 1), (3, 1), (1, 1)]
    assert weyl_filtration_factors(1, 0) == [(1, 1)]


def test_good_filtration_needs_large_enough_second_factor():
    with pytest.raises(WeightError):
        good_filtration_factors(4, 1)


def test_weyl_rows_and_inverse():
    assert weyl_in_simples(3, WeightContext(3)).entries == {3: 1, 1: 1}
    assert weyl_in_simples(2, WeightContext(2)).entries == {2: 1, 0: 1}
    assert simple_in_weyls(3, WeightContext(3)).entries == {3: 1, 1: -1}


def test_tilting_multiplicities():
    assert dict(tilting_weyl_multiplicities(6, WeightContext(5))) == {6: 1, 2: 1}
    assert dict(tilting_weyl_multiplicities(5, WeightContext(3))) == {5: 1}


def test_euler_against_simple_reads_the_inverse_row():
    ctx = WeightContext(3)
    assert euler_weyl_simple(1, 3, ctx) == -1
    assert euler_weyl_simple(3, 3, ctx) == 1
    assert euler_weyl_simple(0, 3, ctx) == 0


@given(st.sampled_from([2, 3, 5]), st.integers(0, 120))
def test_weyl_dimension_is_sum_of_simple_dimensions(p, lam):
    ctx = WeightContext(p)
    row = weyl_in_simples(lam, ctx)
    assert sum(mult * simple_dimension(mu, ctx) for mu, mult in row.entries.items()) == lam + 1


@given(st.sampled_from([2, 3, 5, 7]), st.integers(0, 150))
def test_tilting_dimension_matches_weyl_filtration(p, lam):
    ctx = WeightContext(p)
    total = sum(mult * (c + 1) for c, mult in tilting_weyl_multiplicities(lam, ctx))
    assert total == tilting_dimension(lam, ctx)


@given(st.sampled_from([2, 3, 5]), st.integers(0, 60))
def test_inverse_row_inverts_weyl_row(p, lam):
    ctx = WeightContext(p)
    composed: dict[int, int] = {}
    for mu, mult in weyl_in_simples(lam, ctx).entries.items():
        for nu, coeff in simple_in_weyls(mu, ctx).entries.items():
            composed[nu] = composed.get(nu, 0) + mult * coeff
    assert {nu: value for nu, value in composed.items() if value} == {lam: 1}
