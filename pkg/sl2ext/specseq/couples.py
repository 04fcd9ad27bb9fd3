"""Exact couples of the column filtration and their derived couples.

At level ``l`` the couple has ``D^{m,n} = H^{m+n}(F^m Tot)`` (after ``l - 1``
derivations, the image of ``i``) and ``E^{m,n}`` the ``l``-th page. Maps are
stored as matrices on chosen bases:

* ``i[(m, n)]``: ``D^{m+1,n-1} -> D^{m,n}`` (keyed by target),
* ``j[(m, n)]``: ``D^{m,n} -> E^{m+l-1,n-l+1}`` (keyed by source),
* ``k[(m, n)]``: ``E^{m,n} -> D^{m+1,n}`` (keyed by source).

``D`` is tracked for ``m`` down to ``-reach``; below that nodes are missing.
For ``m <= 0`` the filtration piece is the whole total complex.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List

from . import linalg
from .bicomplex import Bicomplex, Cell
from .linalg import Matrix, Subquotient
from .pages import Filtration

logger = logging.getLogger(__name__)


@dataclass
class ExactCouple:
    level: int
    width: int
    height: int
    reach: int
    modulus: int
    d_dims: Dict[Cell, int]
    e_dims: Dict[Cell, int]
    i: Dict[Cell, Matrix]
    j: Dict[Cell, Matrix]
    k: Dict[Cell, Matrix]
    # Subspace data relative to the previous level (or to Tot / cell coordinates at level 1).
    d_parts: Dict[Cell, Matrix] = field(default_factory=dict)
    e_parts: Dict[Cell, Subquotient] = field(default_factory=dict)

    @property
    def degrees(self) -> int:
        return self.width + self.height - 1

    def tracks(self, m: int, n: int) -> bool:
        return m >= -self.reach

    def d_dim(self, m: int, n: int) -> int:
        return self.d_dims.get((m, n), 0)

    def e_dim(self, m: int, n: int) -> int:
        return self.e_dims.get((m, n), 0)

    def j_target(self, m: int, n: int) -> Cell:
        return (m + self.level - 1, n - self.level + 1)

    def i_map(self, m: int, n: int) -> Matrix:
        stored = self.i.get((m, n))
        if stored is not None:
            return stored
        return linalg.zeros(self.d_dim(m, n), self.d_dim(m + 1, n - 1))

    def j_map(self, m: int, n: int) -> Matrix:
        stored = self.j.get((m, n))
        if stored is not None:
            return stored
        return linalg.zeros(self.e_dim(*self.j_target(m, n)), self.d_dim(m, n))

    def k_map(self, m: int, n: int) -> Matrix:
        stored = self.k.get((m, n))
        if stored is not None:
            return stored
        return linalg.zeros(self.d_dim(m + 1, n), self.e_dim(m, n))

    def d_nodes(self) -> List[Cell]:
        return sorted(self.d_dims)

    def e_nodes(self) -> List[Cell]:
        return [(m, n) for m in range(self.width) for n in range(self.height)]

    def page_dims(self) -> Dict[Cell, int]:
        return {cell: self.e_dim(*cell) for cell in self.e_nodes()}


def exact_couple(bicomplex: Bicomplex) -> ExactCouple:
    """The level-1 couple from ``0 -> F^{m+1} -> F^m -> F^m / F^{m+1} -> 0``."""
    r = bicomplex.modulus
    filtration = Filtration(bicomplex)
    reach = bicomplex.width + bicomplex.height + 2
    top = bicomplex.top_degree

    homology: Dict[Cell, Subquotient] = {}
    for k in range(top + 1):
        for m in range(-reach, bicomplex.width):
            # H^k(F^m): cycles of F^m modulo D(F^m) in degree k - 1.
            homology[(m, k - m)] = Subquotient.build(
                filtration.closed(m, k),
                linalg.matmul(
                    filtration.differential(k - 1),
                    filtration.cycles(m, k - 1, 0),
                    r,
                ),
                r,
            )

    columns: Dict[Cell, Subquotient] = {}
    for m, n in bicomplex.cells():
        columns[(m, n)] = Subquotient.build(
            linalg.nullspace(bicomplex.vertical(m, n), r),
            bicomplex.vertical(m, n - 1) if n > 0 else linalg.zeros(bicomplex.dim(m, n), 0),
            r,
        )

    i_maps: Dict[Cell, Matrix] = {}
    j_maps: Dict[Cell, Matrix] = {}
    k_maps: Dict[Cell, Matrix] = {}
    for (m, n), target in homology.items():
        source = homology.get((m + 1, n - 1))
        if source is not None and source.dimension and target.dimension:
            i_maps[(m, n)] = target.coordinates(source.lifts)
        if (m, n) in columns and target.dimension and columns[(m, n)].dimension:
            projected = bicomplex.component(m, n, target.lifts)
            j_maps[(m, n)] = columns[(m, n)].coordinates(projected)
    for (m, n), part in columns.items():
        target = homology.get((m + 1, n))
        if target is None or not part.dimension or not target.dimension:
            continue
        images = linalg.matmul(
            filtration.differential(m + n), bicomplex.embed(m, n, part.lifts), r
        )
        k_maps[(m, n)] = target.coordinates(images)

    couple = ExactCouple(
        level=1,
        width=bicomplex.width,
        height=bicomplex.height,
        reach=reach,
        modulus=r,
        d_dims={cell: part.dimension for cell, part in homology.items()},
        e_dims={cell: part.dimension for cell, part in columns.items()},
        i=i_maps,
        j=j_maps,
        k=k_maps,
        d_parts={cell: part.lifts for cell, part in homology.items()},
        e_parts=columns,
    )
    logger.debug("level-1 exact couple built over %d D-nodes", len(couple.d_dims))
    return couple


def derive(couple: ExactCouple) -> ExactCouple:
    """One derivation step: ``D' = im i``, ``E' = ker(jk) / im(jk)``."""
    r = couple.modulus
    level = couple.level

    images: Dict[Cell, Matrix] = {}
    for cell in couple.d_nodes():
        images[cell] = linalg.column_basis(couple.i_map(*cell), r)

    def page_differential(m: int, n: int) -> Matrix:
        return linalg.matmul(couple.j_map(m + 1, n), couple.k_map(m, n), r)

    parts: Dict[Cell, Subquotient] = {}
    for m, n in couple.e_nodes():
        outgoing = page_differential(m, n)
        incoming = page_differential(m - level, n + level - 1)
        parts[(m, n)] = Subquotient.build(linalg.nullspace(outgoing, r), incoming, r)

    new_i: Dict[Cell, Matrix] = {}
    new_j: Dict[Cell, Matrix] = {}
    new_k: Dict[Cell, Matrix] = {}
    for (m, n), basis in images.items():
        source = images.get((m + 1, n - 1))
        if source is not None and source.shape[1] and basis.shape[1]:
            pushed = linalg.matmul(couple.i_map(m, n), source, r)
            new_i[(m, n)] = _coordinates(basis, pushed, r)
        if not basis.shape[1]:
            continue
        target_cell = (m + level, n - level)
        target = parts.get(target_cell)
        if target is None or not target.dimension:
            continue
        preimage = linalg.solve(couple.i_map(m, n), basis, r)
        if preimage is None:
            raise ArithmeticError(f"image basis at {(m, n)} is not in the image of i")
        values = linalg.matmul(couple.j_map(m + 1, n - 1), preimage, r)
        new_j[(m, n)] = target.coordinates(values)
    for (m, n), part in parts.items():
        target = images.get((m + 1, n))
        if target is None or not part.dimension or not target.shape[1]:
            continue
        values = linalg.matmul(couple.k_map(m, n), part.lifts, r)
        new_k[(m, n)] = _coordinates(target, values, r)

    return ExactCouple(
        level=level + 1,
        width=couple.width,
        height=couple.height,
        reach=couple.reach,
        modulus=r,
        d_dims={cell: basis.shape[1] for cell, basis in images.items()},
        e_dims={cell: part.dimension for cell, part in parts.items()},
        i=new_i,
        j=new_j,
        k=new_k,
        d_parts=images,
        e_parts=parts,
    )


def _coordinates(basis: Matrix, vectors: Matrix, modulus: int) -> Matrix:
    solution = linalg.solve(basis, vectors, modulus)
    if solution is None:
        raise ArithmeticError("vector outside the expected subspace")
    return solution


def couple_at(bicomplex: Bicomplex, level: int) -> ExactCouple:
    if level < 1:
        raise ValueError("exact couples start at level 1")
    couple = exact_couple(bicomplex)
    while couple.level < level:
        couple = derive(couple)
    return couple


def k2_is_zero(couple: ExactCouple, m: int, n: int) -> bool:
    """Whether ``k_2`` vanishes on ``E_2^{m,n}``; level-1 couples are derived first."""
    if couple.level == 1:
        couple = derive(couple)
    if couple.level != 2:
        raise ValueError(f"k2 needs the level-2 couple, got level {couple.level}")
    return linalg.is_zero(couple.k_map(m, n))


def check_exactness(couple: ExactCouple) -> List[str]:
    """Nodes where the triangle fails to be exact; nodes next to missing ones are skipped."""
    r = couple.modulus
    failures: List[str] = []

    def exact_at(outgoing: Matrix, incoming: Matrix, size: int) -> bool:
        if incoming.shape[1] and outgoing.shape[0]:
            if not linalg.is_zero(linalg.matmul(outgoing, incoming, r)):
                return False
        return linalg.rank(incoming, r) == size - linalg.rank(outgoing, r)

    for m, n in couple.d_nodes():
        if not couple.tracks(m - 1, n + 1):
            continue
        size = couple.d_dim(m, n)
        # ker j = im i at D^{m,n}
        if not exact_at(couple.j_map(m, n), couple.i_map(m, n), size):
            failures.append(f"D{(m, n)}: ker j ≠ im i")
        # ker i = im k at D^{m,n}, with i leaving to D^{m-1,n+1}
        if not exact_at(couple.i_map(m - 1, n + 1), couple.k_map(m - 1, n), size):
            failures.append(f"D{(m, n)}: ker i ≠ im k")
    for m, n in couple.e_nodes():
        source = (m - couple.level + 1, n + couple.level - 1)
        if not couple.tracks(*source):
            continue
        if not exact_at(couple.k_map(m, n), couple.j_map(*source), couple.e_dim(m, n)):
            failures.append(f"E{(m, n)}: ker k ≠ im j")
    return failures
