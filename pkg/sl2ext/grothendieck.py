"""Character-level oracles that never touch the Ext engine.

Everything here is computed in the Grothendieck group: Clebsch-Gordan factors of
``Δ(a)⊗∇(b)``, decomposition rows of Weyl modules, their inverses, Euler forms and
Δ-multiplicities of tilting modules. The Steinberg tensor product theorem
``L(pc+j) = L(c)^[1]⊗L(j)`` is taken as an input.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Tuple

from .weights import WeightContext, WeightError, bar_residue

logger = logging.getLogger(__name__)

FactorList = List[Tuple[int, int]]


@dataclass(slots=True)
class DecompRow:
    """Signed Grothendieck row of weight ``lam``; zero entries are never stored."""

    lam: int
    entries: Dict[int, int] = field(default_factory=dict)

    def get(self, weight: int, default: int = 0) -> int:
        return self.entries.get(weight, default)

    def support(self) -> list[int]:
        return sorted(self.entries, reverse=True)


def good_filtration_factors(a: int, b: int) -> FactorList:
    """∇-factors of ``Δ(a)⊗∇(b)`` from the top; requires ``b >= a - 1``."""
    if a < 0 or b < 0:
        raise WeightError("tensor factors need natural weights")
    if b < a - 1:
        raise WeightError(f"Δ({a})⊗∇({b}) has no good filtration (need b >= a-1)")
    return [(weight, 1) for weight in range(a + b, b - a - 1, -2) if weight >= 0]


def weyl_filtration_factors(a: int, b: int) -> FactorList:
    """Δ-factors of ``∇(a)⊗Δ(b)``; the contravariant dual of the good filtration."""
    return good_filtration_factors(a, b)


@lru_cache(maxsize=None)
def _weyl_row(lam: int, p: int) -> tuple[tuple[int, int], ...]:
    if lam <= p - 1:
        return ((lam, 1),)
    a, i = divmod(lam, p)
    counts: Counter[int] = Counter()
    if i == p - 1:
        for mu, mult in _weyl_row(a, p):
            counts[p * mu + p - 1] += mult
    else:
        for mu, mult in _weyl_row(a, p):
            counts[p * mu + i] += mult
        if a >= 1:
            ibar = bar_residue(i, p)
            for nu, mult in _weyl_row(a - 1, p):
                counts[p * nu + ibar] += mult
    return tuple(sorted(counts.items(), reverse=True))


def weyl_in_simples(lam: int, ctx: WeightContext) -> DecompRow:
    """Composition factors ``[Δ(lam)] = Σ [L(μ)]``."""
    if lam < 0:
        raise WeightError(f"weights are natural numbers, got {lam}")
    return DecompRow(lam=lam, entries=dict(_weyl_row(lam, ctx.p)))


_INVERSE_ROWS: dict[int, dict[int, dict[int, int]]] = {}


def _inverse_rows(p: int, upto: int) -> dict[int, dict[int, int]]:
    rows = _INVERSE_ROWS.setdefault(p, {})
    for lam in range(len(rows), upto + 1):
        row: Counter[int] = Counter({lam: 1})
        for mu, mult in _weyl_row(lam, p):
            if mu == lam:
                continue
            for nu, coeff in rows[mu].items():
                row[nu] -= mult * coeff
        rows[lam] = {weight: value for weight, value in row.items() if value}
    return rows


def simple_in_weyls(lam: int, ctx: WeightContext) -> DecompRow:
    """``[L(lam)]`` expanded in the Weyl basis; inverse of :func:`weyl_in_simples`."""
    if lam < 0:
        raise WeightError(f"weights are natural numbers, got {lam}")
    rows = _inverse_rows(ctx.p, lam)
    return DecompRow(lam=lam, entries=dict(rows[lam]))


@lru_cache(maxsize=None)
def _simple_dimension(lam: int, p: int) -> int:
    if lam <= p - 1:
        return lam + 1
    c, j = divmod(lam, p)
    return (j + 1) * _simple_dimension(c, p)


def simple_dimension(lam: int, ctx: WeightContext) -> int:
    if lam < 0:
        raise WeightError(f"weights are natural numbers, got {lam}")
    return _simple_dimension(lam, ctx.p)


def euler_weyl_weyl(lam: int, mu: int) -> int:
    return 1 if lam == mu else 0


def euler_weyl_simple(lam: int, mu: int, ctx: WeightContext) -> int:
    """Alternating Ext sum of ``Δ(lam)`` against ``L(mu)``."""
    return simple_in_weyls(mu, ctx).get(lam)


@lru_cache(maxsize=None)
def _tilting_row(lam: int, p: int) -> tuple[tuple[int, int], ...]:
    if lam <= p - 1:
        return ((lam, 1),)
    a, i = divmod(lam, p)
    counts: Counter[int] = Counter()
    if i == p - 1:
        for c, mult in _tilting_row(a, p):
            counts[p * c + p - 1] += mult
    else:
        ibar = bar_residue(i, p)
        for c, mult in _tilting_row(a - 1, p):
            counts[p * (c + 1) + i] += mult
            counts[p * c + ibar] += mult
    return tuple(sorted(counts.items(), reverse=True))


def tilting_weyl_multiplicities(lam: int, ctx: WeightContext) -> FactorList:
    """Δ-filtration multiplicities ``[T(lam):Δ(c)]``, highest weight first."""
    if lam < 0:
        raise WeightError(f"weights are natural numbers, got {lam}")
    return list(_tilting_row(lam, ctx.p))


@lru_cache(maxsize=None)
def _tilting_dimension(lam: int, p: int) -> int:
    if lam <= p - 1:
        return lam + 1
    a, i = divmod(lam, p)
    if i == p - 1:
        return p * _tilting_dimension(a, p)
    return 2 * p * _tilting_dimension(a - 1, p)


def tilting_dimension(lam: int, ctx: WeightContext) -> int:
    """``dim T(lam)`` from the tensor factorization, not from Δ-multiplicities."""
    if lam < 0:
        raise WeightError(f"weights are natural numbers, got {lam}")
    return _tilting_dimension(lam, ctx.p)
