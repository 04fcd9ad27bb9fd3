from __future__ import annotations

import pytest

from sl2ext.frobenius import (
    ResolutionVariant,
    g1_ext1_weyl_ind,
    g1_ext1_weyl_weyl,
    g1_ext_higher_weyl_weyl,
    g1_hom_weyl_Q,
    g1_hom_weyl_ind,
    g1_hom_weyl_weyl,
    resolution_term,
)
from sl2ext.weights import WeightContext, WeightError

CTX5 = WeightContext(5)


def test_hom_into_injective_hull():
    assert str(g1_hom_weyl_Q(2, 1, 1, "M", CTX5)) == "∇(2)^[1]⊗M^[1]"
    assert str(g1_hom_weyl_Q(2, 1, 2, None, CTX5)) == "∇(1)^[1]"
    assert g1_hom_weyl_Q(0, 1, 2, None, CTX5).is_zero


def test_ext1_weyl_weyl_cases():
    assert str(g1_ext1_weyl_weyl(1, 2, 1, 1, CTX5)) == "∇(1)^[1]"
    assert str(g1_ext1_weyl_weyl(0, 1, 3, 1, CTX5)) == "Δ(1)^[1]"
    assert g1_ext1_weyl_weyl(0, 1, 1, 1, CTX5).is_zero


def test_ext1_weyl_induced():
    assert str(g1_ext1_weyl_ind(1, 1, 2, 2, CTX5)) == "∇(4)^[1]"
    assert g1_ext1_weyl_ind(1, 1, 2, 1, CTX5).is_zero


def test_hom_shapes():
    assert str(g1_hom_weyl_ind(1, 2, 3, 2, CTX5)) == "∇(1)^[1]⊗∇(3)^[1]"
    hom = g1_hom_weyl_weyl(2, 1, 1, 1, CTX5)
    assert str(hom) == "∇(1)^[1]"
    assert hom.dimension() == 2


def test_steinberg_residue_is_rejected():
    with pytest.raises(WeightError):
        g1_ext1_weyl_weyl(0, 4, 1, 1, CTX5)


def test_higher_ext_starts_in_degree_one():
    with pytest.raises(WeightError):
        g1_ext_higher_weyl_weyl(0, 0, 1, 1, 1, CTX5)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_higher_ext_in_degree_one_matches_ext1(p):
    ctx = WeightContext(p)
    for a in range(8):
        for b in range(8):
            for i in range(p - 1):
                for j in range(p - 1):
                    assert str(g1_ext_higher_weyl_weyl(1, b, j, a, i, ctx)) == str(
                        g1_ext1_weyl_weyl(b, j, a, i, ctx)
                    )


@pytest.mark.parametrize("variant", list(ResolutionVariant))
@pytest.mark.parametrize("p", [2, 3, 5])
def test_resolution_is_exact_dimensionwise(p, variant):
    ctx = WeightContext(p)
    for a in range(6):
        for i in range(p - 1):
            for m in range(12):
                term = resolution_term(a, i, m, variant, ctx)
                following = resolution_term(a, i, m + 1, variant, ctx)
                assert term.kernel_dimension() + following.kernel_dimension() == term.injective_dimension()


def test_resolution_starts_at_the_module():
    term = resolution_term(2, 1, 0, ResolutionVariant.WEYL, CTX5)
    assert term.kernel_weight == 11
    assert term.kernel is ResolutionVariant.WEYL
    tail = resolution_term(2, 1, 3, ResolutionVariant.WEYL, CTX5)
    assert tail.kernel is ResolutionVariant.INDUCED
