"""Canonical keys for Ext queries.

A query is rewritten until it reaches a fixed point: restricted modules collapse
to Weyl modules, matching ``⊗St`` structure is stripped from both sides, the
contravariant dual swaps the arguments when that lands in a supported family,
and unlinked highest weights send the key to ``zero``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from ..weights import WeightContext, linked
from .modules import (
    FormalModule,
    ModuleKind,
    QueryKey,
    UnsupportedFamily,
    dual,
    induced,
    simple,
    tilting,
    twist,
    weyl,
)

logger = logging.getLogger(__name__)

WEYL_WEYL = "weyl-weyl"
WEYL_INDUCED = "weyl-induced"
WEYL_SIMPLE = "weyl-simple"
WEYL_TWIST = "weyl-twist"
SIMPLE_WEYL = "simple-weyl"
TWIST_WEYL = "twist-weyl"
TWIST_TWIST = "twist-twist"
TILTING_WEYL = "tilting-weyl"
TILTING_INDUCED = "tilting-induced"
ZERO = "zero"

_PLAIN = {ModuleKind.WEYL, ModuleKind.INDUCED, ModuleKind.SIMPLE, ModuleKind.TILTING}
_REBUILD = {
    ModuleKind.WEYL: weyl,
    ModuleKind.INDUCED: induced,
    ModuleKind.SIMPLE: simple,
    ModuleKind.TILTING: tilting,
}


@dataclass(slots=True)
class NormalizedQuery:
    key: QueryKey
    source: FormalModule
    target: FormalModule
    rewrites: list[str] = field(default_factory=list)


def canonical(module: FormalModule, p: int) -> FormalModule:
    """Collapse restricted modules to ``Δ`` and absorb twists that are themselves simple."""
    kind = module.kind
    if kind is ModuleKind.TRIVIAL:
        return weyl(0)
    if kind in _PLAIN:
        if module.weight <= p - 1:
            return weyl(module.weight)
        return module
    assert module.inner is not None
    if not 0 <= module.residue <= p - 1:
        raise UnsupportedFamily(f"twist residue {module.residue} is not restricted for p={p}")
    inner = canonical(module.inner, p)
    if inner.kind is ModuleKind.TWIST:
        raise UnsupportedFamily(
            f"{module} nests Frobenius twists", obstruction="nested Frobenius twists"
        )
    if inner.kind is ModuleKind.SIMPLE or inner.weight <= p - 1:
        # L(c)^[1]⊗L(r) = L(pc+r), and restricted Δ(c) = L(c).
        return canonical(simple(p * inner.weight + module.residue), p)
    if module.residue == p - 1:
        return _REBUILD[inner.kind](p * inner.weight + p - 1)
    return twist(inner, module.residue)


def _steinberg_inner(module: FormalModule, p: int) -> FormalModule | None:
    if module.kind is ModuleKind.TWIST:
        assert module.inner is not None
        return module.inner if module.residue == p - 1 else None
    if module.weight % p == p - 1:
        return _REBUILD[module.kind](module.weight // p)
    return None


def strip_steinberg(
    source: FormalModule, target: FormalModule, p: int, rewrites: list[str]
) -> tuple[FormalModule, FormalModule] | None:
    """Strip ``⊗St`` from both sides; ``None`` means exactly one side carries it."""
    while True:
        left = _steinberg_inner(source, p)
        right = _steinberg_inner(target, p)
        if left is None and right is None:
            return source, target
        if left is None or right is None:
            return None
        rewrites.append(f"strip St: ({source}, {target}) -> ({left}, {right})")
        source, target = canonical(left, p), canonical(right, p)


def _jantzen_pair(module: FormalModule, p: int) -> tuple[int, int] | None:
    """``(a, r)`` with ``L(pa+r) = Δ(a)^[1]⊗L(r) = ∇(a)^[1]⊗L(r)`` when ``a <= p-1``."""
    a, r = divmod(module.weight, p)
    if a <= p - 1 and r <= p - 2:
        return a, r
    return None


def _twist_parts(module: FormalModule) -> tuple[FormalModule, int]:
    assert module.inner is not None
    return module.inner, module.residue


def _direct_family(source: FormalModule, target: FormalModule, p: int) -> QueryKey | None:
    s, t = source.kind, target.kind
    W, I, S, T, X = (
        ModuleKind.WEYL,
        ModuleKind.INDUCED,
        ModuleKind.SIMPLE,
        ModuleKind.TILTING,
        ModuleKind.TWIST,
    )
    pair = (source.weight, target.weight)
    direct = {
        (W, W): WEYL_WEYL,
        (W, I): WEYL_INDUCED,
        (W, S): WEYL_SIMPLE,
        (S, W): SIMPLE_WEYL,
        (T, W): TILTING_WEYL,
        (T, I): TILTING_INDUCED,
    }
    if (s, t) in direct:
        return QueryKey(direct[(s, t)], pair, p)
    if s is W and t is X:
        inner, r = _twist_parts(target)
        if inner.kind in (W, I):
            return QueryKey(WEYL_TWIST, (source.weight, inner.kind.value, inner.weight, r), p)
        return None
    if s is X and t is W:
        inner, r = _twist_parts(source)
        if inner.kind in (W, T):
            return QueryKey(TWIST_WEYL, (inner.kind.value, inner.weight, r, target.weight), p)
        return None
    twist_pair = _twist_twist(source, target, p)
    if twist_pair is not None:
        return QueryKey(TWIST_TWIST, twist_pair, p)
    return None


def _family(source: FormalModule, target: FormalModule, p: int) -> tuple[QueryKey, bool]:
    """Key of the pair, trying the contravariant dual once; the flag says whether it was used."""
    key = _direct_family(source, target, p)
    if key is not None:
        return key, False
    if source.kind is ModuleKind.SIMPLE and target.kind is ModuleKind.SIMPLE:
        raise UnsupportedFamily(
            f"Ext({source}, {target}) lies outside the Jantzen region and needs the "
            "L(a)⊗L(b) tensor product decomposition",
            obstruction="L(a)⊗L(b) tensor product decomposition",
        )
    key = _direct_family(canonical(dual(target), p), canonical(dual(source), p), p)
    if key is not None:
        return key, True
    raise UnsupportedFamily(
        f"Ext({source}, {target}) is not in a supported family",
        obstruction=f"no rule for ({source.kind.value}, {target.kind.value}) or its dual",
    )


def _side(module: FormalModule, p: int) -> tuple[int, int] | None:
    if module.kind is ModuleKind.SIMPLE:
        return _jantzen_pair(module, p)
    return None


def _twist_twist(source: FormalModule, target: FormalModule, p: int) -> tuple[int, int, int, int] | None:
    """``Δ(a)^[1]⊗L(r1)`` against ``∇(b)^[1]⊗L(r2)``; either side may be a Jantzen simple."""
    if source.kind is ModuleKind.TWIST:
        inner, r1 = _twist_parts(source)
        left = (inner.weight, r1) if inner.kind is ModuleKind.WEYL else None
    else:
        left = _side(source, p)
    if target.kind is ModuleKind.TWIST:
        inner, r2 = _twist_parts(target)
        right = (inner.weight, r2) if inner.kind is ModuleKind.INDUCED else None
    else:
        right = _side(target, p)
    if left is None or right is None:
        return None
    return (left[0], left[1], right[0], right[1])


def normalize(source: FormalModule, target: FormalModule, ctx: WeightContext) -> NormalizedQuery:
    """Bring ``Ext(source, target)`` to its canonical key."""
    p = ctx.p
    rewrites: list[str] = []
    left, right = canonical(source, p), canonical(target, p)
    stripped = strip_steinberg(left, right, p, rewrites)
    if stripped is None:
        rewrites.append("St on one side only")
        logger.debug("Ext(%s, %s) vanishes: %s", source, target, rewrites)
        return NormalizedQuery(QueryKey(ZERO, (), p), left, right, rewrites)
    left, right = stripped
    key, dualized = _family(left, right, p)
    if dualized:
        rewrites.append(f"dual: ({left}, {right}) -> ({dual(right)}, {dual(left)})")
        left, right = canonical(dual(right), p), canonical(dual(left), p)
    if not linked(left.highest_weight(p), right.highest_weight(p), ctx):
        rewrites.append("unlinked")
        key = QueryKey(ZERO, (), p)
    logger.debug("normalize Ext(%s, %s) -> %s via %s", source, target, key, rewrites)
    return NormalizedQuery(key, left, right, rewrites)
