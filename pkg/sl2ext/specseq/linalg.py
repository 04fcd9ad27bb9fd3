"""Linear algebra over the prime field GF(r) on int64 numpy arrays.

Matrices act on column vectors. Subspaces are stored as matrices whose columns
span them; a basis is such a matrix with independent columns. Entries stay in
``[0, r)``, and ``r`` is small enough that every product fits in int64.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from numpy.typing import NDArray

from ..weights import is_prime

Matrix = NDArray[np.int64]


def zeros(rows: int, cols: int) -> Matrix:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> Matrix:
    return np.eye(n, dtype=np.int64)


def as_matrix(values, rows: int, cols: int, modulus: int) -> Matrix:
    array = np.array(values, dtype=np.int64).reshape(rows, cols)
    return array % modulus


def matmul(left: Matrix, right: Matrix, modulus: int) -> Matrix:
    return (left @ right) % modulus


def is_zero(mat: Matrix) -> bool:
    return not np.any(mat)


def rref(mat: Matrix, modulus: int) -> Tuple[Matrix, List[int]]:
    """Reduced row-echelon form of ``mat`` over GF(modulus) and its pivot columns."""
    if not is_prime(modulus):
        raise ValueError(f"modulus {modulus} is not prime")
    work = np.array(mat, dtype=np.int64) % modulus
    num_rows, num_cols = work.shape
    pivots: List[int] = []
    row = 0
    for col in range(num_cols):
        if row >= num_rows:
            break
        candidates = np.nonzero(work[row:, col])[0]
        if len(candidates) == 0:
            continue
        pivot_row = int(candidates[0]) + row
        if pivot_row != row:
            work[[row, pivot_row]] = work[[pivot_row, row]]
        inverse = pow(int(work[row, col]), -1, modulus)
        work[row] = (work[row] * inverse) % modulus
        for other in range(num_rows):
            if other != row and work[other, col] != 0:
                work[other] = (work[other] - work[other, col] * work[row]) % modulus
        pivots.append(col)
        row += 1
    return work, pivots


def rank(mat: Matrix, modulus: int) -> int:
    if mat.size == 0:
        return 0
    return len(rref(mat, modulus)[1])


def nullspace(mat: Matrix, modulus: int) -> Matrix:
    """Basis of ``{x : mat @ x = 0}`` as columns."""
    num_cols = mat.shape[1]
    reduced, pivots = rref(mat, modulus)
    free = [col for col in range(num_cols) if col not in set(pivots)]
    basis = zeros(num_cols, len(free))
    for index, col in enumerate(free):
        basis[col, index] = 1
        for row, pivot in enumerate(pivots):
            basis[pivot, index] = (-reduced[row, col]) % modulus
    return basis


def column_basis(mat: Matrix, modulus: int) -> Matrix:
    """Independent columns of ``mat`` spanning its column space."""
    _, pivots = rref(mat, modulus)
    return np.array(mat[:, pivots], dtype=np.int64) % modulus


def extend_basis(base: Matrix, candidates: Matrix, modulus: int) -> Matrix:
    """Columns of ``candidates`` that extend the span of ``base`` to the span of both."""
    offset = base.shape[1]
    _, pivots = rref(np.hstack([base, candidates]), modulus)
    chosen = [col - offset for col in pivots if col >= offset]
    return np.array(candidates[:, chosen], dtype=np.int64) % modulus


def solve(mat: Matrix, rhs: Matrix, modulus: int) -> Matrix | None:
    """Some ``x`` with ``mat @ x = rhs``, or ``None`` when a column of ``rhs`` is out of range."""
    num_cols = mat.shape[1]
    reduced, pivots = rref(np.hstack([mat, rhs]), modulus)
    if any(pivot >= num_cols for pivot in pivots):
        return None
    solution = zeros(num_cols, rhs.shape[1])
    for row, pivot in enumerate(pivots):
        solution[pivot] = reduced[row, num_cols:]
    return solution


def inverse(mat: Matrix, modulus: int) -> Matrix:
    size = mat.shape[0]
    if mat.shape != (size, size):
        raise ValueError("only square matrices can be inverted")
    solution = solve(mat, identity(size), modulus)
    if solution is None or rank(mat, modulus) != size:
        raise ValueError("matrix is not invertible over the prime field")
    return solution


def random_matrix(rng: np.random.Generator, rows: int, cols: int, modulus: int) -> Matrix:
    return rng.integers(0, modulus, size=(rows, cols), dtype=np.int64)


def random_invertible(
    rng: np.random.Generator, size: int, modulus: int, attempts: int = 64
) -> Matrix:
    for _ in range(attempts):
        candidate = random_matrix(rng, size, size, modulus)
        if rank(candidate, modulus) == size:
            return candidate
    raise ArithmeticError(f"no invertible {size}x{size} sample in {attempts} attempts")


@dataclass(frozen=True)
class Subquotient:
    """``cycles / boundaries`` inside an ambient coordinate space.

    ``lifts`` are cycle representatives whose classes form a basis of the
    quotient; classes are always handled through these lifts.
    """

    cycles: Matrix
    boundaries: Matrix
    lifts: Matrix
    modulus: int

    @classmethod
    def build(cls, cycles: Matrix, boundaries: Matrix, modulus: int) -> "Subquotient":
        bounded = column_basis(boundaries, modulus)
        lifts = extend_basis(bounded, cycles, modulus)
        return cls(cycles=cycles, boundaries=bounded, lifts=lifts, modulus=modulus)

    @property
    def ambient(self) -> int:
        return self.cycles.shape[0]

    @property
    def dimension(self) -> int:
        return self.lifts.shape[1]

    def coordinates(self, vectors: Matrix) -> Matrix:
        """Class coordinates of cycle vectors (columns) in the ``lifts`` basis."""
        system = np.hstack([self.lifts, self.boundaries])
        solution = solve(system, vectors, self.modulus)
        if solution is None:
            raise ArithmeticError("vector does not lie in the cycle space")
        return solution[: self.dimension]
