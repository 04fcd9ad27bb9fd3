from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from sl2ext.engine import (
    ExtEngine,
    UnsupportedFamily,
    dual,
    induced,
    simple,
    tilting,
    trivial,
    twist,
    weyl,
)
from sl2ext.engine.normalize import TWIST_TWIST, WEYL_WEYL, ZERO
from sl2ext.grothendieck import euler_weyl_simple, tilting_weyl_multiplicities
from sl2ext.weights import WeightError, linked


def test_weyl_weyl_examples():
    engine = ExtEngine(3)
    vector = engine.ext_weyl_weyl(1, 7)
    assert vector.dims == (0, 1, 1)
    assert vector.cutoff == 3
    assert engine.ext_weyl_weyl(1, 3).dims == (1, 1)
    assert engine.ext_weyl_weyl(0, 6).dims == (0, 1, 1)
    assert engine.ext_weyl_weyl(7, 7).dims == (1,)


def test_weyl_weyl_vanishes_downwards_and_across_blocks():
    engine = ExtEngine(3)
    assert engine.ext_weyl_weyl(7, 1).is_zero
    assert engine.ext_weyl_weyl(1, 2).is_zero


def test_weyl_against_induced_is_delta():
    engine = ExtEngine(5)
    assert engine.query(weyl(12), induced(12)).dims == (1,)
    assert engine.query(weyl(12), induced(14)).is_zero


def test_simple_families():
    engine = ExtEngine(3)
    assert engine.ext_weyl_simple(1, 3).dims == (0, 1)
    assert engine.ext_simple_vs_weyl(3, 1).dims == (0, 1)
    assert engine.ext_simple_vs_weyl(4, 6).dims == (1, 0, 0, 1)
    assert ExtEngine(2).ext_weyl_simple(0, 4).dims == (0, 1, 1)


def test_twist_closed_form():
    engine = ExtEngine(5)
    assert engine.ext_twist_vs_twist(1, 0, 0, 3).dims == (0, 1)
    assert engine.ext_twist_vs_twist(2, 1, 0, 1).dims == (0, 0, 1)
    with pytest.raises(WeightError):
        engine.ext_twist_vs_twist(1, 4, 1, 0)


def test_tilting_against_induced_counts_weyl_factors():
    engine = ExtEngine(5)
    assert engine.ext_tilting_vs_induced(6, 2).dims == (1,)
    assert engine.ext_tilting_vs_induced(6, 6).dims == (1,)
    assert engine.ext_tilting_vs_induced(6, 4).is_zero


def test_normalize_records_rewrites():
    engine = ExtEngine(3)
    key = engine.normalize(weyl(1), weyl(7)).key
    assert key.family == WEYL_WEYL
    assert str(key) == "weyl-weyl(1, 7; p=3)"
    zero = engine.normalize(weyl(0), weyl(1))
    assert zero.key.family == ZERO
    assert zero.rewrites == ["unlinked"]


def test_steinberg_target_against_regular_source_is_zero():
    normalized = ExtEngine(3).normalize(weyl(1), weyl(2))
    assert normalized.key.family == ZERO
    assert normalized.rewrites == ["St on one side only"]


def test_steinberg_on_one_side_is_zero():
    engine = ExtEngine(3)
    normalized = engine.normalize(weyl(5), weyl(4))
    assert normalized.key.family == ZERO


def test_jantzen_simples_reach_the_twist_family():
    engine = ExtEngine(5)
    key = engine.normalize(simple(6), simple(12)).key
    assert key.family == TWIST_TWIST


def test_simple_simple_outside_jantzen_region_is_unsupported():
    engine = ExtEngine(3)
    with pytest.raises(UnsupportedFamily) as excinfo:
        engine.query(simple(100), simple(103))
    assert "tensor product decomposition" in excinfo.value.obstruction


def test_induced_inside_twist_is_unsupported():
    engine = ExtEngine(3)
    with pytest.raises(UnsupportedFamily):
        engine.query(twist(induced(4), 0), weyl(13))


def test_trivial_module_is_weyl_zero():
    engine = ExtEngine(3)
    assert engine.query(trivial(), weyl(6)).dims == engine.ext_weyl_weyl(0, 6).dims


def test_max_degree_truncates():
    engine = ExtEngine(3)
    assert engine.query(weyl(1), weyl(7), max_degree=1).dims == (0, 1)
    assert engine.query(weyl(1), weyl(7), max_degree=0).dims == ()


def test_memo_export_and_preload():
    engine = ExtEngine(3)
    engine.ext_weyl_weyl(1, 7)
    items = engine.memo_items()
    assert items
    fresh = ExtEngine(3)
    assert fresh.preload(items) == len(items)
    assert fresh.preload([(key.__class__(key.family, key.weights, 5), dims) for key, dims in items]) == 0
    assert fresh.ext_weyl_weyl(1, 7).dims == (0, 1, 1)


def test_memo_disabled_stays_empty():
    engine = ExtEngine(3, memoize=False)
    engine.ext_weyl_weyl(1, 7)
    assert engine.memo_items() == []


PRIMES = st.sampled_from([2, 3, 5, 7])
WEIGHTS = st.integers(0, 60)


@settings(max_examples=150, deadline=None)
@given(PRIMES, WEIGHTS, WEIGHTS)
def test_weyl_weyl_euler_characteristic_is_delta(p, lam, mu):
    engine = ExtEngine(p)
    vector = engine.ext_weyl_weyl(lam, mu)
    assert vector.euler() == (1 if lam == mu else 0)
    bound = engine.vanishing_bound(weyl(lam), weyl(mu))
    assert not any(engine.compute(weyl(lam), weyl(mu))[bound + 1 :])
    assert vector.cutoff == bound + 1


@settings(max_examples=150, deadline=None)
@given(PRIMES, WEIGHTS, WEIGHTS)
def test_closed_form_and_route_agree(p, lam, mu):
    engine = ExtEngine(p)
    assert engine.compute(weyl(lam), weyl(mu)) == engine.weyl_weyl_route(lam, mu)


@settings(max_examples=150, deadline=None)
@given(PRIMES, WEIGHTS, WEIGHTS)
def test_weyl_simple_euler_matches_grothendieck(p, lam, mu):
    engine = ExtEngine(p)
    assert engine.ext_weyl_simple(lam, mu).euler() == euler_weyl_simple(lam, mu, engine.ctx)


@settings(max_examples=150, deadline=None)
@given(PRIMES, WEIGHTS, WEIGHTS)
def test_unlinked_pairs_vanish(p, lam, mu):
    engine = ExtEngine(p)
    if not linked(lam, mu, engine.ctx):
        assert engine.ext_weyl_weyl(lam, mu).is_zero
        assert engine.ext_weyl_simple(lam, mu).is_zero


@settings(max_examples=100, deadline=None)
@given(PRIMES, st.integers(0, 40), st.integers(0, 40))
def test_tilting_against_induced_matches_multiplicities(p, lam, mu):
    engine = ExtEngine(p)
    expected = dict(tilting_weyl_multiplicities(lam, engine.ctx)).get(mu, 0)
    assert engine.ext_tilting_vs_induced(lam, mu).dims == ((expected,) if expected else ())


@settings(max_examples=100, deadline=None)
@given(PRIMES, st.integers(0, 40), st.integers(0, 40))
def test_duality_swaps_weyl_and_induced(p, lam, mu):
    engine = ExtEngine(p)
    forward = engine.query(weyl(lam), simple(mu))
    backward = engine.query(dual(simple(mu)), dual(weyl(lam)))
    assert forward.dims == backward.dims


@settings(max_examples=100, deadline=None)
@given(PRIMES, st.integers(0, 40), st.integers(0, 40))
def test_memoized_and_plain_engines_agree(p, lam, mu):
    cached, plain = ExtEngine(p), ExtEngine(p, memoize=False)
    for make_source, make_target in ((weyl, weyl), (weyl, simple), (tilting, induced)):
        source, target = make_source(lam), make_target(mu)
        assert cached.query(source, target) == plain.query(source, target)
        assert cached.compute(source, target) == plain.compute(source, target)
