"""Family formulas as pure functions of integers.

Every function here takes the recursion it needs as a callable, so the same code
serves the characteristic-p engine (modulus ``p``) and the quantum tower (modulus
``l`` over a classical inner oracle). Vectors are tuples with trailing zeros
trimmed; ``()`` is the zero vector.
"""

from __future__ import annotations

from typing import Callable

from ..weights import bar_residue, linked_mod
from .modules import Vector, trim

PairFn = Callable[[int, int], Vector]
TermFn = Callable[[int], Vector]

DELTA: Vector = (1,)


def add(*vectors: Vector) -> Vector:
    length = max((len(vector) for vector in vectors), default=0)
    total = [0] * length
    for vector in vectors:
        for q, value in enumerate(vector):
            total[q] += value
    return trim(total)


def shift(vector: Vector, degrees: int) -> Vector:
    if not vector:
        return ()
    return (0,) * degrees + vector


def top_degree(vector: Vector) -> int:
    return len(vector) - 1


def _guard(lam: int, mu: int, modulus: int, inner: PairFn) -> Vector | None:
    """Quasi-hereditary and block guards shared by both family A routes."""
    if lam == mu:
        return DELTA
    if lam > mu:
        return ()
    b, j = divmod(lam, modulus)
    a, i = divmod(mu, modulus)
    top = modulus - 1
    if j == top or i == top:
        return inner(b, a) if j == top and i == top else ()
    if not linked_mod(lam, mu, modulus):
        return ()
    return None


def weyl_weyl_closed_form(lam: int, mu: int, modulus: int, inner: PairFn) -> Vector:
    """``Ext^*(Δ(lam), Δ(mu))`` as one closed sum over untwisted Weyl pairs.

    ``inner(x, y)`` is ``Ext^*(Δ(x), Δ(y))`` one Frobenius level down.
    """
    guarded = _guard(lam, mu, modulus, inner)
    if guarded is not None:
        return guarded
    b, j = divmod(lam, modulus)
    a, i = divmod(mu, modulus)
    gap = a - b
    parts = [shift(DELTA, gap)]
    if modulus == 2:
        parts.append(inner(b, a - 1))
        steps = range(1, gap)
    elif j == i:
        steps = range(1, gap, 2)
    else:
        parts.append(inner(b, a - 1))
        steps = range(2, gap, 2)
    for n in steps:
        parts.append(shift(inner(0, gap - n - 1), n))
    return add(*parts)


def weyl_weyl_route(lam: int, mu: int, modulus: int, inner: PairFn, route: PairFn) -> Vector:
    """The same groups by peeling one degree at a time (``route`` is this function, memoized)."""
    guarded = _guard(lam, mu, modulus, inner)
    if guarded is not None:
        return guarded
    b, j = divmod(lam, modulus)
    a, i = divmod(mu, modulus)
    gap = a - b
    if modulus == 2:
        return add(inner(b, a - 1), shift(route(0, 2 * (gap - 1)), 1))
    ibar = bar_residue(i, modulus)
    if j == i:
        return shift(route(i, modulus * (gap - 1) + ibar), 1)
    return add(shift(route(lam, modulus * (a - 1) + ibar), 1), inner(b, a - 1))


def twist_vs_weyl(
    inner_top: int,
    r: int,
    mu: int,
    modulus: int,
    to_weyl: TermFn,
    to_induced: TermFn,
) -> Vector:
    """``Ext^*(N^[1]⊗L(r), Δ(p·a+i))`` for regular ``i``.

    ``to_weyl(c)`` and ``to_induced(c)`` are ``Ext^*(N, Δ(c))`` and ``Ext^*(N, ∇(c))``;
    ``inner_top`` is the highest weight of ``N``.
    """
    a, i = divmod(mu, modulus)
    ibar = bar_residue(i, modulus)
    if r not in (i, ibar):
        return ()
    merged = modulus == 2
    weyl_parity = 1 if r == i else 0
    parts: list[Vector] = []
    for n in range(0, a):
        if merged or n % 2 == weyl_parity:
            parts.append(shift(to_weyl(a - n - 1), n))
    for n in range(a, a + inner_top + 1):
        if merged or n % 2 != weyl_parity:
            parts.append(shift(to_induced(n - a), n))
    return add(*parts)


def weyl_vs_twist(lam: int, inner_top: int, r: int, modulus: int, term: TermFn) -> Vector:
    """``Ext^*(Δ(p·b+j), M^[1]⊗L(r))`` for regular ``j``; ``term(c)`` is ``Ext^*(Δ(c), M)``."""
    b, j = divmod(lam, modulus)
    jbar = bar_residue(j, modulus)
    if r not in (j, jbar):
        return ()
    merged = modulus == 2
    parity = 0 if r == j else 1
    parts = [
        shift(term(n + b), n)
        for n in range(0, inner_top - b + 1)
        if merged or n % 2 == parity
    ]
    return add(*parts)


def twist_closed_form(a: int, r1: int, b: int, r2: int, modulus: int) -> Vector:
    """``Ext^*(Δ(a)^[1]⊗L(r1), ∇(b)^[1]⊗L(r2))``: each degree is 0 or 1."""
    r2bar = bar_residue(r2, modulus)
    dims = []
    for q in range(0, a + b + 1):
        if not q + b >= a >= max(q - b, b - q):
            dims.append(0)
            continue
        if modulus == 2:
            hit = (a + b + q) % 2 == 0
        else:
            hit = (q % 2 == 0 and (a + b) % 2 == 0 and r1 == r2) or (
                q % 2 == 1 and (a + b) % 2 == 1 and r1 == r2bar
            )
        dims.append(1 if hit else 0)
    return trim(dims)


def tilting_vs_weyl(lam: int, mu: int, modulus: int, recurse: PairFn) -> Vector:
    """``Ext^*(T(p·b+j), Δ(p·a+i))`` for regular residues, one twist level down."""
    b, j = divmod(lam, modulus)
    a, i = divmod(mu, modulus)
    jbar = bar_residue(j, modulus)
    parts: list[Vector] = []
    if i == j and a >= 1:
        parts.append(recurse(b - 1, a - 1))
    if i == jbar:
        parts.append(recurse(b - 1, a))
    return add(*parts)
