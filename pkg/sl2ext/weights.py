"""Weight arithmetic for SL2: p-adic splitting, the bar involution and linkage."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class WeightError(ValueError):
    """Raised when a weight, residue or characteristic is out of range."""


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    factor = 3
    while factor * factor <= n:
        if n % factor == 0:
            return False
        factor += 2
    return True


@dataclass(frozen=True, slots=True)
class WeightContext:
    """Characteristic of the ground field.

    ``p = 0`` is only meaningful for the classical layer underneath the quantum
    engine; every block computation in this module requires a prime.
    """

    p: int
    allow_zero: bool = False

    def __post_init__(self) -> None:
        if self.p == 0 and self.allow_zero:
            return
        if not is_prime(self.p):
            raise WeightError(f"characteristic must be prime, got {self.p}")

    @property
    def steinberg(self) -> int:
        return self.p - 1


@dataclass(frozen=True, slots=True)
class PDecomp:
    lam: int
    a: int
    i: int

    def recompose(self, p: int) -> int:
        return p * self.a + self.i


@dataclass(frozen=True, slots=True)
class BarredResidue:
    i: int
    bar: int


def _require_prime(ctx: WeightContext) -> int:
    if ctx.p < 2:
        raise WeightError("block arithmetic needs a prime characteristic")
    return ctx.p


def decompose(lam: int, ctx: WeightContext) -> PDecomp:
    """Split ``lam = p*a + i`` with ``0 <= i <= p-1``."""
    p = _require_prime(ctx)
    if lam < 0:
        raise WeightError(f"weights are natural numbers, got {lam}")
    a, i = divmod(lam, p)
    return PDecomp(lam=lam, a=a, i=i)


def bar_residue(i: int, modulus: int) -> int:
    """``modulus - 2 - i``; shared by the classical (p) and quantum (l) layers."""
    if not 0 <= i <= modulus - 2:
        raise WeightError(f"residue {i} has no bar for modulus {modulus}")
    return modulus - 2 - i


def bar(i: int, ctx: WeightContext) -> int:
    return bar_residue(i, _require_prime(ctx))


def barred(i: int, ctx: WeightContext) -> BarredResidue:
    return BarredResidue(i=i, bar=bar(i, ctx))


def is_steinberg(lam: int, modulus: int) -> bool:
    return lam % modulus == modulus - 1


def linked_mod(lam: int, mu: int, modulus: int) -> bool:
    """Block test for a modulus (a prime p, or the quantum order l)."""
    if lam < 0 or mu < 0:
        return False
    while True:
        a, i = divmod(lam, modulus)
        b, j = divmod(mu, modulus)
        top = modulus - 1
        if i == top and j == top:
            lam, mu = a, b
            continue
        if i == top or j == top:
            return False
        if (a - b) % 2 == 0:
            return i == j
        return j == modulus - 2 - i


def linked(lam: int, mu: int, ctx: WeightContext) -> bool:
    return linked_mod(lam, mu, _require_prime(ctx))


def weyl_dimension(lam: int) -> int:
    if lam < 0:
        raise WeightError(f"weights are natural numbers, got {lam}")
    return lam + 1
