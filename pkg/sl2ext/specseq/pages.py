"""E_r pages of the column filtration ``F^p Tot = columns >= p``.

``E_r^{p}`` in total degree ``k`` is ``Z_r / (Z_{r-1}^{p+1} + D Z_{r-1}^{p-r+1})``
where ``Z_r^p = {x in F^p : D x in F^{p+r}}``. All subspaces live in full
``Tot^k`` coordinates.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List

import numpy as np

from . import linalg
from .bicomplex import Bicomplex, Cell
from .linalg import Matrix, Subquotient

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Page:
    r: int
    width: int
    height: int
    dims: Dict[Cell, int]
    differentials: Dict[Cell, Matrix]

    def dim(self, m: int, n: int) -> int:
        return self.dims.get((m, n), 0)

    def differential(self, m: int, n: int) -> Matrix:
        """``d_r`` from ``(m, n)`` to ``(m + r, n - r + 1)``."""
        stored = self.differentials.get((m, n))
        if stored is not None:
            return stored
        return linalg.zeros(self.dim(m + self.r, n - self.r + 1), self.dim(m, n))

    def diagonal_total(self, k: int) -> int:
        return sum(self.dim(m, k - m) for m in range(self.width))

    def rows(self) -> List[List[int]]:
        """Dimensions with the top row first, as the grid is usually drawn."""
        return [[self.dim(m, n) for m in range(self.width)] for n in reversed(range(self.height))]


class Filtration:
    """Cycle and boundary spaces of the column filtration, cached per bicomplex."""

    def __init__(self, bicomplex: Bicomplex) -> None:
        self.bicomplex = bicomplex
        self.modulus = bicomplex.modulus
        self._differentials = {
            k: bicomplex.total_differential(k) for k in range(-1, bicomplex.top_degree + 1)
        }
        self.cycles = lru_cache(maxsize=None)(self._cycles)
        self.subquotient = lru_cache(maxsize=None)(self._subquotient)

    def differential(self, k: int) -> Matrix:
        if k in self._differentials:
            return self._differentials[k]
        return linalg.zeros(self.bicomplex.total_dimension(k + 1), self.bicomplex.total_dimension(k))

    def _mask(self, k: int, keep) -> List[int]:
        indices: List[int] = []
        for (m, n), start in self.bicomplex.offsets(k).items():
            if keep(m):
                indices.extend(range(start, start + self.bicomplex.dims[(m, n)]))
        return indices

    def _cycles(self, p: int, k: int, r: int) -> Matrix:
        """``Z_r^{p}`` in degree ``k``; ``F^p`` is all of ``Tot`` for ``p <= 0`` but ``D x in F^{p+r}`` keeps ``p``."""
        size = self.bicomplex.total_dimension(k)
        floor = max(p, 0)
        sources = self._mask(k, lambda m: m >= floor)
        rows = self._mask(k + 1, lambda m: m < p + r)
        restricted = self.differential(k)[np.ix_(rows, sources)]
        kernel = linalg.nullspace(restricted, self.modulus)
        result = linalg.zeros(size, kernel.shape[1])
        result[sources] = kernel
        return result

    def closed(self, p: int, k: int) -> Matrix:
        """Cycles ``ker D`` inside ``F^p`` in degree ``k``."""
        return self.cycles(p, k, self.bicomplex.width + 1 - min(p, 0))

    def denominator(self, p: int, k: int, r: int) -> Matrix:
        """``Z_{r-1}^{p+1} + D Z_{r-1}^{p-r+1}`` in degree ``k``."""
        upper = self.cycles(p + 1, k, r - 1)
        lower = self.cycles(p - r + 1, k - 1, r - 1)
        bounded = linalg.matmul(self.differential(k - 1), lower, self.modulus)
        return np.hstack([upper, bounded])

    def _subquotient(self, p: int, k: int, r: int) -> Subquotient:
        return Subquotient.build(self.cycles(p, k, r), self.denominator(p, k, r), self.modulus)


def page(bicomplex: Bicomplex, r: int, filtration: Filtration | None = None) -> Page:
    """The ``E_r`` page; ``r = 0`` is the grid itself with ``d0`` as differential."""
    if r < 0:
        raise ValueError("page index must be non-negative")
    if r == 0:
        return Page(
            r=0,
            width=bicomplex.width,
            height=bicomplex.height,
            dims=dict(bicomplex.dims),
            differentials=dict(bicomplex.d0),
        )
    filtration = filtration or Filtration(bicomplex)
    dims: Dict[Cell, int] = {}
    differentials: Dict[Cell, Matrix] = {}
    for m, n in bicomplex.cells():
        dims[(m, n)] = filtration.subquotient(m, m + n, r).dimension
    for m, n in bicomplex.cells():
        target = (m + r, n - r + 1)
        if target not in bicomplex.dims or not dims[(m, n)] or not dims[target]:
            continue
        source_part = filtration.subquotient(m, m + n, r)
        target_part = filtration.subquotient(target[0], m + n + 1, r)
        images = linalg.matmul(filtration.differential(m + n), source_part.lifts, bicomplex.modulus)
        differentials[(m, n)] = target_part.coordinates(images)
    logger.debug("E_%d page computed: %s", r, dims)
    return Page(r=r, width=bicomplex.width, height=bicomplex.height, dims=dims, differentials=differentials)


def stable_index(bicomplex: Bicomplex) -> int:
    return bicomplex.width + bicomplex.height + 1


def infinity_page(bicomplex: Bicomplex, filtration: Filtration | None = None) -> Page:
    return page(bicomplex, stable_index(bicomplex), filtration)


def pages(bicomplex: Bicomplex, up_to: int) -> List[Page]:
    """Pages ``E_0 .. E_up_to`` sharing one filtration cache."""
    filtration = Filtration(bicomplex)
    return [page(bicomplex, r, filtration) for r in range(up_to + 1)]
