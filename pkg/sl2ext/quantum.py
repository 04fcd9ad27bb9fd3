"""Ext for quantum GL2 at an ``l``-th root of unity over characteristic ``p``.

The quantum recursions are the classical ones with ``l`` in place of ``p``; one
Frobenius untwist lands in classical GL2, which is answered by an injected
oracle: the semisimple δ pairing when ``p = 0`` and :class:`ExtEngine` otherwise.
GL2 weights only matter through their central character (``w1 + w2``) and their
SL2 difference ``w1 - w2``; determinant twists on classical terms are fixed by
the central-character match and do not change dimensions.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Tuple

from .engine import families
from .engine.core import ExtEngine
from .engine.modules import (
    ExtVector,
    FormalModule,
    ModuleKind,
    UnsupportedFamily,
    Vector,
    induced,
    simple,
    tilting,
    weyl,
)
from .weights import WeightError, bar_residue, is_prime, linked_mod

logger = logging.getLogger(__name__)

CLASSICAL_FAMILIES: Dict[str, Tuple[Callable[[int], FormalModule], Callable[[int], FormalModule]]] = {
    "delta-delta": (weyl, weyl),
    "delta-simple": (weyl, simple),
    "simple-delta": (simple, weyl),
    "simple-simple": (simple, simple),
    "tilting-delta": (tilting, weyl),
    "nabla-nabla": (induced, induced),
}


@dataclass(frozen=True, slots=True)
class GL2Weight:
    w1: int
    w2: int = 0

    def __post_init__(self) -> None:
        if self.w1 < self.w2:
            raise WeightError(f"({self.w1}, {self.w2}) is not dominant")

    @property
    def degree(self) -> int:
        return self.w1 + self.w2

    @property
    def difference(self) -> int:
        return self.w1 - self.w2

    @classmethod
    def parse(cls, text: str) -> "GL2Weight":
        """``"n"`` means ``(n, 0)``; ``"w1,w2"`` is a pair."""
        parts = [part.strip() for part in text.split(",")]
        try:
            values = [int(part) for part in parts]
        except ValueError as exc:
            raise WeightError(f"not a GL2 weight: {text!r}") from exc
        if len(values) == 1:
            return cls(values[0], 0)
        if len(values) == 2:
            return cls(values[0], values[1])
        raise WeightError(f"not a GL2 weight: {text!r}")

    def __str__(self) -> str:
        return f"({self.w1},{self.w2})"


@dataclass(frozen=True, slots=True)
class QuantumContext:
    l: int
    p: int = 0

    def __post_init__(self) -> None:
        if self.l < 2:
            raise WeightError(f"quantization order must be at least 2, got {self.l}")
        if self.p != 0 and not is_prime(self.p):
            raise WeightError(f"base characteristic must be 0 or prime, got {self.p}")


@lru_cache(maxsize=None)
def classical_engine(p: int) -> ExtEngine:
    return ExtEngine(p)


def _classical_sl2(source: FormalModule, target: FormalModule, p: int) -> Vector:
    """Classical SL2 Ext, with the δ pairing standing in for characteristic 0."""
    if p == 0:
        if source.kind is ModuleKind.TWIST or target.kind is ModuleKind.TWIST:
            raise UnsupportedFamily("Frobenius twists do not exist in characteristic 0")
        return families.DELTA if source.highest_weight(1) == target.highest_weight(1) else ()
    return classical_engine(p).compute(source, target)


def classical_gl2_ext(family: str, lhs: GL2Weight, rhs: GL2Weight, p: int) -> ExtVector:
    """GL2 Ext between the modules of ``family`` at ``lhs`` and ``rhs``."""
    if family not in CLASSICAL_FAMILIES:
        raise UnsupportedFamily(f"no classical GL2 family {family!r}")
    if lhs.degree != rhs.degree:
        return ExtVector((), cutoff=1)
    make_source, make_target = CLASSICAL_FAMILIES[family]
    source, target = make_source(lhs.difference), make_target(rhs.difference)
    if p == 0:
        return ExtVector(_classical_sl2(source, target, 0), cutoff=1)
    return classical_engine(p).query(source, target)


class QuantumEngine:
    """The classical recursions instantiated with modulus ``l`` over a classical oracle."""

    def __init__(self, qctx: QuantumContext) -> None:
        self.qctx = qctx
        self.l = qctx.l
        self.p = qctx.p
        self._memo: Dict[tuple, Vector] = {}

    def _cached(self, key: tuple, producer: Callable[[], Vector]) -> Vector:
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        return self._memo.setdefault(key, producer())

    # -- classical layer --------------------------------------------------------

    def _classical(self, source: FormalModule, target: FormalModule) -> Vector:
        """Classical GL2 term; unequal parities of highest weights mean unequal central characters."""
        if (source.highest_weight(max(self.p, 1)) - target.highest_weight(max(self.p, 1))) % 2:
            return ()
        return _classical_sl2(source, target, self.p)

    def _classical_weyl(self, x: int, y: int) -> Vector:
        return self._classical(weyl(x), weyl(y))

    # -- Weyl against Weyl ------------------------------------------------------

    def qext_weyl_weyl(self, lhs: GL2Weight, rhs: GL2Weight) -> ExtVector:
        cutoff = rhs.difference // self.l + 1
        if lhs.degree != rhs.degree:
            return ExtVector((), cutoff=cutoff)
        return ExtVector(self._weyl_weyl(lhs.difference, rhs.difference), cutoff=cutoff)

    def weyl_weyl_closed(self, lhs: GL2Weight, rhs: GL2Weight) -> ExtVector:
        """Closed-form tower over the classical oracle; cross-checks the recursion."""
        cutoff = rhs.difference // self.l + 1
        if lhs.degree != rhs.degree:
            return ExtVector((), cutoff=cutoff)
        dims = families.weyl_weyl_closed_form(
            lhs.difference, rhs.difference, self.l, self._classical_weyl
        )
        return ExtVector(dims, cutoff=cutoff)

    def even_case_shift(self, lhs: GL2Weight, rhs: GL2Weight) -> tuple[GL2Weight, GL2Weight] | None:
        """The pair one degree lower in the even case, or ``None`` outside it.

        ``(Δ(l·b+i+d', d'), Δ(l·a+i, 0))`` translates to ``b = 0`` with
        ``d = l(a-b)/2`` and continues with ``(Δ(i+d, d), Δ(l(a-b)-1, i+1))``.
        """
        if lhs.degree != rhs.degree:
            return None
        lam, mu = lhs.difference, rhs.difference
        b, j = divmod(lam, self.l)
        a, i = divmod(mu, self.l)
        gap = a - b
        if lam >= mu or gap <= 0 or gap % 2 or i == self.l - 1 or j != i:
            return None
        d = self.l * gap // 2
        return GL2Weight(i + d, d), GL2Weight(self.l * gap - 1, i + 1)

    def _weyl_weyl(self, lam: int, mu: int) -> Vector:
        return self._cached(("weyl-weyl", lam, mu), lambda: self._weyl_weyl_step(lam, mu))

    def _weyl_weyl_step(self, lam: int, mu: int) -> Vector:
        l = self.l
        if lam == mu:
            return families.DELTA
        if lam > mu:
            return ()
        b, j = divmod(lam, l)
        a, i = divmod(mu, l)
        if j == l - 1 or i == l - 1:
            return self._classical_weyl(b, a) if j == i == l - 1 else ()
        if not linked_mod(lam, mu, l):
            return ()
        gap = a - b
        ibar = bar_residue(i, l)
        if gap % 2 == 1:
            f = (gap - 1) // 2
            lifted = self._weyl_weyl(lam, l * (a - 1) + ibar)
            classical = classical_gl2_ext("delta-delta", GL2Weight(b + f, f), GL2Weight(a - 1, 0), self.p)
            return families.add(families.shift(lifted, 1), classical.dims)
        # Translated source (i+d, d) against target (l(a-b)-1, i+1).
        return families.shift(self._weyl_weyl(i, l * (gap - 1) + ibar), 1)

    # -- twisted shapes ---------------------------------------------------------

    def qext_twist_vs_weyl(self, inner: FormalModule, r: int, rhs: GL2Weight) -> ExtVector:
        """Quantum ``Ext(N^[1]⊗L(r), Δ(rhs))`` for a classical module ``N``."""
        if inner.kind not in (ModuleKind.TRIVIAL, ModuleKind.WEYL, ModuleKind.SIMPLE, ModuleKind.TILTING):
            raise UnsupportedFamily(
                f"quantum Ext({inner}^[1]⊗L({r}), Δ) needs N to be Δ, L, T or k",
                obstruction="untwisted module outside the Weyl, simple and tilting families",
            )
        self._check_residue(r)
        top = inner.highest_weight(1)
        a = rhs.difference // self.l
        cutoff = a + top + (top // self.p if self.p else 0) + 1
        return ExtVector(self._twist_weyl(inner, r, rhs.difference), cutoff=cutoff)

    def _twist_weyl(self, inner: FormalModule, r: int, mu: int) -> Vector:
        key = ("twist-weyl", inner, r, mu)
        return self._cached(key, lambda: self._twist_weyl_step(inner, r, mu))

    def _twist_weyl_step(self, inner: FormalModule, r: int, mu: int) -> Vector:
        l = self.l
        a, i = divmod(mu, l)
        if i == l - 1:
            return self._classical(inner, weyl(a)) if r == l - 1 else ()
        if r == l - 1:
            return ()
        ibar = bar_residue(i, l)
        if r not in (i, ibar):
            return ()
        top = inner.highest_weight(1)
        if a == 0:
            parity = 0 if r == i else 1
            return families.add(
                *(
                    families.shift(self._classical(inner, induced(n)), n)
                    for n in range(0, top + 1)
                    if l == 2 or n % 2 == parity
                )
            )
        tail = families.shift(self._twist_weyl(inner, r, l * (a - 1) + ibar), 1)
        if l == 2 or r == ibar:
            return families.add(tail, self._classical(inner, weyl(a - 1)))
        return tail

    def qext_weyl_vs_twistsimple(self, lhs: GL2Weight, inner: FormalModule, r: int) -> ExtVector:
        """Quantum ``Ext(Δ(lhs), M^[1]⊗L(r))`` for a classical module ``M``."""
        if inner.kind not in (ModuleKind.TRIVIAL, ModuleKind.WEYL, ModuleKind.INDUCED, ModuleKind.SIMPLE):
            raise UnsupportedFamily(
                f"quantum Ext(Δ, {inner}^[1]⊗L({r})) needs M to be Δ, ∇, L or k",
                obstruction="untwisted module outside the Weyl, induced and simple families",
            )
        self._check_residue(r)
        top = inner.highest_weight(1)
        b = lhs.difference // self.l
        cutoff = max(top - b, 0) + (top // self.p if self.p else 0) + 1
        return ExtVector(self._weyl_twist(lhs.difference, inner, r), cutoff=cutoff)

    def _weyl_twist(self, lam: int, inner: FormalModule, r: int) -> Vector:
        key = ("weyl-twist", lam, inner, r)
        return self._cached(key, lambda: self._weyl_twist_step(lam, inner, r))

    def _weyl_twist_step(self, lam: int, inner: FormalModule, r: int) -> Vector:
        l = self.l
        b, j = divmod(lam, l)
        if j == l - 1:
            return self._classical(weyl(b), inner) if r == l - 1 else ()
        if r == l - 1:
            return ()
        jbar = bar_residue(j, l)
        if r not in (j, jbar):
            return ()
        if b > inner.highest_weight(1):
            return ()
        tail = families.shift(self._weyl_twist(l * (b + 1) + jbar, inner, r), 1)
        if l == 2 or r == j:
            return families.add(tail, self._classical(weyl(b), inner))
        return tail

    def _check_residue(self, r: int) -> None:
        if not 0 <= r <= self.l - 1:
            raise WeightError(f"residue {r} must lie in [0, {self.l - 1}]")
