"""Frobenius-kernel (G1) formulas returned as formal twisted G/G1-modules.

Only the shapes of the answers are modelled: ``∇(c)^[1]``, ``Δ(c)^[1]`` and the two
tensor shapes ``Δ(c)^[1]⊗∇(d)^[1]`` and ``∇(c)^[1]⊗∇(d)^[1]``. A negative
argument means the zero module, so such terms are simply never stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .weights import WeightContext, WeightError, bar

Q_LABEL = "Q"


class TermKind(str, Enum):
    TWIST_NABLA = "nabla"
    TWIST_DELTA = "delta"
    TWIST_TENSOR = "tensor"


class ResolutionVariant(str, Enum):
    WEYL = "delta"
    INDUCED = "nabla"


@dataclass(frozen=True, slots=True)
class TwistTerm:
    kind: TermKind
    c: int
    d: int | None = None
    # TWIST_TENSOR only: False stores Δ(c)⊗∇(d), True stores ∇(c)⊗∇(d).
    nabla_pair: bool = False
    carrier: str | None = None

    def dimension(self) -> int:
        if self.kind is TermKind.TWIST_TENSOR:
            return (self.c + 1) * ((self.d or 0) + 1)
        return self.c + 1

    def __str__(self) -> str:
        if self.kind is TermKind.TWIST_NABLA:
            text = f"∇({self.c})^[1]"
        elif self.kind is TermKind.TWIST_DELTA:
            text = f"Δ({self.c})^[1]"
        else:
            left = "∇" if self.nabla_pair else "Δ"
            text = f"{left}({self.c})^[1]⊗∇({self.d})^[1]"
        if self.carrier:
            text = f"{text}⊗{self.carrier}^[1]"
        return text


@dataclass(frozen=True, slots=True)
class FormalGModule:
    """Formal direct sum of twisted terms; the empty sum is the zero module."""

    terms: tuple[TwistTerm, ...] = ()

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def dimension(self) -> int:
        return sum(term.dimension() for term in self.terms)

    def __add__(self, other: "FormalGModule") -> "FormalGModule":
        return FormalGModule(self.terms + other.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " ⊕ ".join(str(term) for term in self.terms)


ZERO = FormalGModule()


def twist_nabla(c: int, carrier: str | None = None) -> FormalGModule:
    if c < 0:
        return ZERO
    return FormalGModule((TwistTerm(TermKind.TWIST_NABLA, c, carrier=carrier),))


def twist_delta(c: int) -> FormalGModule:
    if c < 0:
        return ZERO
    return FormalGModule((TwistTerm(TermKind.TWIST_DELTA, c),))


def twist_tensor(c: int, d: int, *, nabla_pair: bool = False) -> FormalGModule:
    if c < 0 or d < 0:
        return ZERO
    return FormalGModule((TwistTerm(TermKind.TWIST_TENSOR, c, d, nabla_pair=nabla_pair),))


def _restricted(ctx: WeightContext, *residues: int) -> None:
    for residue in residues:
        if not 0 <= residue <= ctx.p - 2:
            raise WeightError(f"residue {residue} must lie in [0, {ctx.p - 2}]")


def g1_hom_weyl_Q(b: int, j: int, i: int, carrier: str | None, ctx: WeightContext) -> FormalGModule:
    """``Hom_G1(Δ(pb+j), M^[1]⊗Q(i))`` with the ``M^[1]`` factor kept as a label."""
    _restricted(ctx, i, j)
    result = ZERO
    if i == j:
        result = result + twist_nabla(b, carrier)
    if i == bar(j, ctx):
        result = result + twist_nabla(b - 1, carrier)
    return result


def g1_ext1_weyl_weyl(b: int, j: int, a: int, i: int, ctx: WeightContext) -> FormalGModule:
    """``Ext^1_G1(Δ(pb+j), Δ(pa+i))``, source first."""
    _restricted(ctx, i, j)
    result = ZERO
    if a - b >= 2 and i == j:
        result = result + twist_delta(a - b - 2)
    if a - b <= 1 and i == bar(j, ctx):
        result = result + twist_nabla(b - a + 1)
    return result


def g1_ext1_weyl_ind(b: int, i: int, a: int, j: int, ctx: WeightContext) -> FormalGModule:
    """``Ext^1_G1(Δ(pb+i), ∇(pa+j))``."""
    _restricted(ctx, i, j)
    if i == bar(j, ctx):
        return twist_nabla(a + b + 1)
    return ZERO


def g1_hom_weyl_weyl(b: int, j: int, a: int, i: int, ctx: WeightContext) -> FormalGModule:
    """``Hom_G1(Δ(pb+j), Δ(pa+i))``."""
    _restricted(ctx, i, j)
    result = ZERO
    if j == bar(i, ctx):
        result = result + twist_tensor(a - 1, b)
    if j == i and b >= a:
        result = result + twist_nabla(b - a)
    return result


def g1_hom_weyl_ind(b: int, i: int, a: int, j: int, ctx: WeightContext) -> FormalGModule:
    """``Hom_G1(Δ(pb+i), ∇(pa+j))``."""
    _restricted(ctx, i, j)
    if i == j:
        return twist_tensor(b, a, nabla_pair=True)
    return ZERO


def g1_ext_higher_weyl_weyl(m: int, b: int, j: int, a: int, i: int, ctx: WeightContext) -> FormalGModule:
    """``Ext^m_G1(Δ(pb+j), Δ(pa+i))`` for ``m >= 1``."""
    if m < 1:
        raise WeightError("higher G1-Ext starts in degree 1")
    _restricted(ctx, i, j)
    gap = a - b
    merged = ctx.p == 2
    result = ZERO
    if j == i:
        if m <= gap - 1 and (merged or m % 2 == 1):
            result = result + twist_delta(gap - m - 1)
        if m >= gap and (merged or m % 2 == 0):
            result = result + twist_nabla(m - gap)
    if j == bar(i, ctx) and not (merged and j == i):
        if m <= gap - 1 and m % 2 == 0:
            result = result + twist_delta(gap - m - 1)
        if m >= gap and m % 2 == 1:
            result = result + twist_nabla(m - gap)
    return result


@dataclass(frozen=True, slots=True)
class ResolutionTerm:
    """Degree ``m`` of the G1-injective resolution: ``I_m = twist⊗Q(q_residue)`` and kernel ``M_m``."""

    m: int
    twist: FormalGModule
    q_residue: int
    kernel: ResolutionVariant
    kernel_weight: int
    p: int

    def injective_dimension(self) -> int:
        return 2 * self.p * self.twist.dimension()

    def kernel_dimension(self) -> int:
        return self.kernel_weight + 1

    def __str__(self) -> str:
        symbol = "Δ" if self.kernel is ResolutionVariant.WEYL else "∇"
        return (
            f"I_{self.m} = {self.twist}⊗{Q_LABEL}({self.q_residue}), "
            f"M_{self.m} = {symbol}({self.kernel_weight})"
        )


def resolution_term(a: int, i: int, m: int, variant: ResolutionVariant, ctx: WeightContext) -> ResolutionTerm:
    """Term ``m`` of the resolution of ``Δ(pa+i)`` (WEYL) or ``∇(pa+i)`` (INDUCED)."""
    if m < 0 or a < 0:
        raise WeightError("resolution degrees and quotients are natural numbers")
    _restricted(ctx, i)
    p = ctx.p
    ibar = bar(i, ctx)
    variant = ResolutionVariant(variant)
    if variant is ResolutionVariant.INDUCED:
        residue = i if m % 2 == 0 else ibar
        return ResolutionTerm(m, twist_nabla(m + a), residue, variant, p * (m + a) + residue, p)
    if m <= a - 1:
        kernel_residue = ibar if m % 2 == 1 else i
        q_residue = i if m % 2 == 1 else ibar
        return ResolutionTerm(
            m, twist_delta(a - m - 1), q_residue, ResolutionVariant.WEYL, p * (a - m) + kernel_residue, p
        )
    residue = ibar if m % 2 == 1 else i
    return ResolutionTerm(m, twist_nabla(m - a), residue, ResolutionVariant.INDUCED, p * (m - a) + residue, p)
