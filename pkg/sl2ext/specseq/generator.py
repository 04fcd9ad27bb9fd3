"""Seeded random bicomplexes for the collapse and dual-route suites."""

from __future__ import annotations

import logging
from enum import Enum
from typing import Dict, List, Tuple

import numpy as np
from tenacity import RetryError, Retrying, retry_if_exception_type, stop_after_attempt

from . import linalg
from .bicomplex import DEFAULT_MODULUS, Bicomplex, Cell, validate
from .linalg import Matrix

logger = logging.getLogger(__name__)

MAX_SHAPE = 8
MAX_CELL_DIM = 6


class GenerationMode(str, Enum):
    ALL_ZERO = "all-d0-zero"
    ALL_INJECTIVE = "all-d0-injective"
    GENERIC = "generic"


class GenerationError(RuntimeError):
    """Raised when no acceptable bicomplex was produced within the retry budget."""


class _Rejected(Exception):
    pass


def _random_complex(
    rng: np.random.Generator, length: int, max_dim: int, modulus: int
) -> Tuple[List[int], List[Matrix]]:
    """A random cochain complex ``C^0 -> ... -> C^{length-1}`` of dimensions at most ``max_dim``.

    Each space splits as ``B ⊕ H ⊕ C`` with ``C`` mapping isomorphically onto the
    next ``B``; a random basis change hides the splitting.
    """
    carried = 0
    splits: List[Tuple[int, int, int]] = []
    for position in range(length):
        room = max_dim - carried
        if room < 0:
            raise _Rejected()
        outgoing = 0 if position == length - 1 else int(rng.integers(0, room + 1))
        outgoing = min(outgoing, max_dim)
        free = int(rng.integers(0, room - outgoing + 1))
        splits.append((carried, free, outgoing))
        carried = outgoing

    dims = [sum(split) for split in splits]
    maps: List[Matrix] = []
    for position in range(length - 1):
        _, _, outgoing = splits[position]
        next_boundary = splits[position + 1][0]
        mat = linalg.zeros(dims[position + 1], dims[position])
        start = dims[position] - outgoing
        mat[np.arange(next_boundary), start + np.arange(outgoing)] = 1
        maps.append(mat)

    changes = [linalg.random_invertible(rng, size, modulus) for size in dims]
    inverses = [linalg.inverse(change, modulus) for change in changes]
    conjugated = [
        linalg.matmul(linalg.matmul(changes[position + 1], maps[position], modulus), inverses[position], modulus)
        for position in range(length - 1)
    ]
    return dims, conjugated


def _change_basis(bicomplex: Bicomplex, rng: np.random.Generator) -> Bicomplex:
    r = bicomplex.modulus
    changes = {cell: linalg.random_invertible(rng, size, r) for cell, size in bicomplex.dims.items()}
    inverses = {cell: linalg.inverse(change, r) for cell, change in changes.items()}

    def conjugate(maps: Dict[Cell, Matrix], step: Cell) -> Dict[Cell, Matrix]:
        result: Dict[Cell, Matrix] = {}
        for (m, n), mat in maps.items():
            target = (m + step[0], n + step[1])
            result[(m, n)] = linalg.matmul(linalg.matmul(changes[target], mat, r), inverses[(m, n)], r)
        return result

    return Bicomplex(
        width=bicomplex.width,
        height=bicomplex.height,
        dims=dict(bicomplex.dims),
        d0=conjugate(dict(bicomplex.d0), (0, 1)),
        d1=conjugate(dict(bicomplex.d1), (1, 0)),
        modulus=r,
    )


def _all_zero(rng: np.random.Generator, width: int, height: int, max_dim: int, modulus: int) -> Bicomplex:
    dims: Dict[Cell, int] = {}
    d1: Dict[Cell, Matrix] = {}
    for n in range(height):
        row_dims, row_maps = _random_complex(rng, width, max_dim, modulus)
        for m, size in enumerate(row_dims):
            dims[(m, n)] = size
        for m, mat in enumerate(row_maps):
            d1[(m, n)] = mat
    d0 = {(m, n): linalg.zeros(dims[(m, n + 1)], dims[(m, n)]) for m in range(width) for n in range(height - 1)}
    return Bicomplex(width=width, height=height, dims=dims, d0=d0, d1=d1, modulus=modulus)


def _all_injective(rng: np.random.Generator, width: int, height: int, max_dim: int, modulus: int) -> Bicomplex:
    """Top row a random complex ``V``; the row below a ``d1``-stable subcomplex ``U`` of it.

    ``d0`` is ``(-1)^m`` times the inclusion ``U_m -> V_m`` and lower rows are zero,
    which is forced once every vertical map with a target in the grid is injective.
    """
    top_dims, top_maps = _random_complex(rng, width, max_dim, modulus)
    dims: Dict[Cell, int] = {(m, n): 0 for m in range(width) for n in range(height)}
    d0: Dict[Cell, Matrix] = {}
    d1: Dict[Cell, Matrix] = {}
    top = height - 1
    for m, size in enumerate(top_dims):
        dims[(m, top)] = size
    for m, mat in enumerate(top_maps):
        d1[(m, top)] = mat
    if height < 2:
        return Bicomplex(width=width, height=height, dims=dims, d0=d0, d1=d1, modulus=modulus)

    below = top - 1
    sub_bases: List[Matrix] = []
    for m in range(width):
        seeds = linalg.random_matrix(rng, top_dims[m], int(rng.integers(0, top_dims[m] + 1)), modulus)
        if m > 0:
            carried = linalg.matmul(top_maps[m - 1], sub_bases[m - 1], modulus)
            seeds = np.hstack([carried, seeds])
        sub_bases.append(linalg.column_basis(seeds, modulus))
    for m, basis in enumerate(sub_bases):
        dims[(m, below)] = basis.shape[1]
        d0[(m, below)] = (basis * (-1) ** m) % modulus
    for m in range(width - 1):
        images = linalg.matmul(top_maps[m], sub_bases[m], modulus)
        restricted = linalg.solve(sub_bases[m + 1], images, modulus)
        if restricted is None:
            raise _Rejected()
        d1[(m, below)] = restricted
    for m in range(width):
        for n in range(below):
            d0[(m, n)] = linalg.zeros(dims[(m, n + 1)], 0)
    return Bicomplex(width=width, height=height, dims=dims, d0=d0, d1=d1, modulus=modulus)


def _generic(rng: np.random.Generator, width: int, height: int, max_dim: int, modulus: int) -> Bicomplex:
    """Tensor product of a horizontal and a vertical complex, each of dimension at most 2."""
    factor = max(1, min(2, int(np.sqrt(max_dim))))
    across_dims, across = _random_complex(rng, width, factor, modulus)
    up_dims, up = _random_complex(rng, height, factor, modulus)
    dims = {(m, n): across_dims[m] * up_dims[n] for m in range(width) for n in range(height)}
    d1 = {
        (m, n): np.kron(across[m], linalg.identity(up_dims[n])) % modulus
        for m in range(width - 1)
        for n in range(height)
    }
    d0 = {
        (m, n): (np.kron(linalg.identity(across_dims[m]), up[n]) * (-1) ** m) % modulus
        for m in range(width)
        for n in range(height - 1)
    }
    return Bicomplex(width=width, height=height, dims=dims, d0=d0, d1=d1, modulus=modulus)


_BUILDERS = {
    GenerationMode.ALL_ZERO: _all_zero,
    GenerationMode.ALL_INJECTIVE: _all_injective,
    GenerationMode.GENERIC: _generic,
}


def random_bicomplex(
    seed: int,
    shape: Tuple[int, int] = (6, 6),
    mode: GenerationMode | str = GenerationMode.GENERIC,
    *,
    max_cell_dim: int = 5,
    modulus: int = DEFAULT_MODULUS,
    retry_budget: int = 25,
) -> Bicomplex:
    """Deterministic in ``seed``: the same arguments always give the same bicomplex."""
    mode = GenerationMode(mode)
    width, height = shape
    if not (1 <= width <= MAX_SHAPE and 1 <= height <= MAX_SHAPE):
        raise ValueError(f"shape {shape} must lie within 1..{MAX_SHAPE} in both directions")
    if not 0 <= max_cell_dim <= MAX_CELL_DIM:
        raise ValueError(f"cell dimensions are capped at {MAX_CELL_DIM}")

    attempt_counter = {"n": 0}

    def attempt() -> Bicomplex:
        attempt_counter["n"] += 1
        rng = np.random.default_rng([seed, attempt_counter["n"]])
        try:
            candidate = _BUILDERS[mode](rng, width, height, max_cell_dim, modulus)
            candidate = _change_basis(candidate, rng)
        except ArithmeticError as exc:
            logger.debug("generation attempt %d failed: %s", attempt_counter["n"], exc)
            raise _Rejected() from exc
        if any(size > max_cell_dim for size in candidate.dims.values()):
            raise _Rejected()
        report = validate(candidate)
        if not report.ok:
            logger.debug("generation attempt %d invalid: %s", attempt_counter["n"], report.first)
            raise _Rejected()
        return candidate

    retrying = Retrying(
        stop=stop_after_attempt(retry_budget),
        retry=retry_if_exception_type(_Rejected),
    )
    try:
        return retrying(attempt)
    except RetryError as exc:
        raise GenerationError(
            f"no valid {mode.value} bicomplex for seed {seed} within {retry_budget} attempts"
        ) from exc
