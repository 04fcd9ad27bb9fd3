from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from sl2ext.engine import UnsupportedFamily, induced, weyl
from sl2ext.quantum import GL2Weight, QuantumContext, QuantumEngine, classical_gl2_ext
from sl2ext.weights import WeightError


def quantum(l: int, p: int = 0) -> QuantumEngine:
    return QuantumEngine(QuantumContext(l=l, p=p))


def test_gl2_weight_parsing():
    assert GL2Weight.parse("5") == GL2Weight(5, 0)
    assert GL2Weight.parse("4,3") == GL2Weight(4, 3)
    assert str(GL2Weight(4, 3)) == "(4,3)"
    with pytest.raises(WeightError):
        GL2Weight.parse("1,2")
    with pytest.raises(WeightError):
        GL2Weight.parse("a")


def test_context_validation():
    with pytest.raises(WeightError):
        QuantumContext(l=1)
    with pytest.raises(WeightError):
        QuantumContext(l=3, p=4)


def test_weyl_weyl_routes():
    engine = quantum(3)
    assert engine.qext_weyl_weyl(GL2Weight(2, 1), GL2Weight(3, 0)).dims == (1, 1)
    assert engine.qext_weyl_weyl(GL2Weight(4, 3), GL2Weight(7, 0)).dims == (0, 1, 1)


def test_different_central_characters_vanish():
    engine = quantum(3)
    assert engine.qext_weyl_weyl(GL2Weight(1, 0), GL2Weight(3, 0)).is_zero


def test_twisted_shapes():
    engine = quantum(3)
    assert engine.qext_twist_vs_weyl(weyl(1), 1, GL2Weight(6, 0)).dims == (1, 0, 0, 1)
    assert engine.qext_weyl_vs_twistsimple(GL2Weight(1, 0), weyl(2), 1).dims == (0, 0, 1)


def test_twisted_shapes_reject_unsupported_inner_modules():
    engine = quantum(3)
    with pytest.raises(UnsupportedFamily):
        engine.qext_twist_vs_weyl(induced(1), 0, GL2Weight(3, 0))
    with pytest.raises(WeightError):
        engine.qext_weyl_vs_twistsimple(GL2Weight(1, 0), weyl(2), 3)


def test_even_case_shift():
    engine = quantum(3)
    lhs, rhs = GL2Weight(4, 3), GL2Weight(7, 0)
    shifted = engine.even_case_shift(lhs, rhs)
    assert shifted == (GL2Weight(4, 3), GL2Weight(5, 2))
    lower = engine.qext_weyl_weyl(*shifted).dims
    assert engine.qext_weyl_weyl(lhs, rhs).dims == (0, *lower)
    assert engine.even_case_shift(GL2Weight(2, 1), GL2Weight(3, 0)) is None


def test_classical_layer_in_positive_characteristic():
    vector = classical_gl2_ext("delta-delta", GL2Weight(4, 3), GL2Weight(7, 0), 3)
    assert vector.dims == (0, 1, 1)
    assert classical_gl2_ext("delta-delta", GL2Weight(1, 0), GL2Weight(3, 0), 3).is_zero
    with pytest.raises(UnsupportedFamily):
        classical_gl2_ext("twist-closed-form", GL2Weight(1, 0), GL2Weight(1, 0), 3)


def test_quantum_over_positive_characteristic_runs():
    engine = quantum(3, 2)
    vector = engine.qext_weyl_weyl(GL2Weight(4, 3), GL2Weight(7, 0))
    assert vector.euler() == 0


def _pair(lam: int, mu: int) -> tuple[GL2Weight, GL2Weight]:
    if mu >= lam:
        shift = (mu - lam) // 2
        return GL2Weight(lam + shift, shift), GL2Weight(mu, 0)
    shift = (lam - mu) // 2
    return GL2Weight(lam, 0), GL2Weight(mu + shift, shift)


@settings(max_examples=120, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(0, 40), st.integers(0, 40))
def test_quantum_closed_form_matches_recursion(l, lam, mu):
    if (lam - mu) % 2:
        mu += 1
    engine = quantum(l)
    lhs, rhs = _pair(lam, mu)
    routed = engine.qext_weyl_weyl(lhs, rhs)
    assert engine.weyl_weyl_closed(lhs, rhs).dims == routed.dims
    assert routed.euler() == (1 if lam == mu else 0)


@pytest.mark.parametrize("l", [2, 3, 5])
def test_restricted_quantum_weights_are_orthogonal(l):
    engine = quantum(l)
    for lam in range(l):
        for mu in range(l):
            if (lam - mu) % 2:
                continue
            expected = (1,) if lam == mu else ()
            assert engine.qext_weyl_weyl(*_pair(lam, mu)).dims == expected
