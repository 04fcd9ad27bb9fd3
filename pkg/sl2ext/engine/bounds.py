"""Vanishing degrees from Weyl-filtration dimensions."""

from __future__ import annotations

from ..weights import WeightContext
from .modules import FormalModule, ModuleKind
from .normalize import canonical

_WEYL_FILTERED = (ModuleKind.WEYL, ModuleKind.TILTING)
_GOOD_FILTERED = (ModuleKind.INDUCED, ModuleKind.TILTING)


def vanishing_bound(source: FormalModule, target: FormalModule, ctx: WeightContext) -> int:
    """Largest degree in which ``Ext(source, target)`` can be nonzero.

    With ``m1``, ``n1`` the twist quotients of the two highest weights: a source
    with a Weyl filtration contributes nothing (bound ``n1``, or 0 against an
    induced target), a target with a good filtration bounds by ``m1``, and
    anything else by ``m1 + n1``.
    """
    p = ctx.p
    left, right = canonical(source, p), canonical(target, p)
    m1 = left.highest_weight(p) // p
    n1 = right.highest_weight(p) // p
    if left.kind in _WEYL_FILTERED:
        return 0 if right.kind is ModuleKind.INDUCED else n1
    if right.kind in _GOOD_FILTERED:
        return m1
    return m1 + n1
