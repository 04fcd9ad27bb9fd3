from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from sl2ext.weights import (
    WeightContext,
    WeightError,
    bar,
    bar_residue,
    barred,
    decompose,
    is_prime,
    is_steinberg,
    linked,
    weyl_dimension,
)


def test_decompose_splits_p_adically():
    ctx = WeightContext(3)
    parts = decompose(7, ctx)
    assert (parts.a, parts.i) == (2, 1)
    assert parts.recompose(3) == 7


def test_bar_is_an_involution_on_restricted_residues():
    ctx = WeightContext(5)
    assert [bar(i, ctx) for i in range(4)] == [3, 2, 1, 0]
    assert all(bar(bar(i, ctx), ctx) == i for i in range(4))


def test_bar_of_steinberg_residue_is_rejected():
    with pytest.raises(WeightError):
        bar_residue(4, 5)


@pytest.mark.parametrize("p", [0, 1, 4, 9])
def test_non_prime_characteristic_is_rejected(p):
    with pytest.raises(WeightError):
        WeightContext(p)


def test_zero_characteristic_only_when_allowed():
    assert WeightContext(0, allow_zero=True).p == 0


def test_negative_weight_is_rejected():
    with pytest.raises(WeightError):
        decompose(-1, WeightContext(3))
    with pytest.raises(WeightError):
        weyl_dimension(-2)


def test_linkage_examples():
    ctx = WeightContext(3)
    assert linked(1, 7, ctx)
    assert linked(1, 3, ctx)
    assert not linked(1, 2, ctx)
    assert not linked(2, 4, ctx)  # 2 is Steinberg, 4 is not
    assert is_steinberg(8, 3)


@given(st.sampled_from([2, 3, 5, 7]), st.integers(0, 80), st.integers(0, 80))
def test_linkage_is_symmetric(p, lam, mu):
    ctx = WeightContext(p)
    assert linked(lam, mu, ctx) == linked(mu, lam, ctx)


@given(st.sampled_from([3, 5, 7]), st.integers(0, 200))
def test_linkage_is_reflexive(p, lam):
    assert linked(lam, lam, WeightContext(p))


def test_is_prime_small_values():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_barred_residue_pairs_residue_with_its_bar():
    residue = barred(1, WeightContext(7))
    assert (residue.i, residue.bar) == (1, 4)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_linkage_is_transitive(p):
    ctx = WeightContext(p)
    weights = range(31)
    classes = {lam: {mu for mu in weights if linked(lam, mu, ctx)} for lam in weights}
    for lam in weights:
        for mu in classes[lam]:
            assert classes[mu] <= classes[lam]
