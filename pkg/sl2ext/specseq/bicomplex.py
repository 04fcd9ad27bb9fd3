"""Finite first-quadrant double complexes over GF(r) and their text format.

Cells sit at ``(m, n)`` with ``0 <= m < width`` and ``0 <= n < height``. The
vertical map ``d0[(m, n)]`` goes to ``(m, n + 1)`` and the horizontal map
``d1[(m, n)]`` to ``(m + 1, n)``. Stored maps anticommute, so the total
differential is ``d0 + d1`` with no extra sign. Maps into cells outside the
grid are not stored.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Tuple

import numpy as np

from . import linalg
from .linalg import Matrix

logger = logging.getLogger(__name__)

DEFAULT_MODULUS = 32003
FORMAT_VERSION = "v1"

Cell = Tuple[int, int]


class BicomplexFormatError(ValueError):
    """Raised when a bicomplex text file cannot be parsed."""


@dataclass(slots=True)
class ValidationReport:
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first(self) -> str | None:
        return self.violations[0] if self.violations else None


@dataclass(frozen=True)
class Bicomplex:
    width: int
    height: int
    dims: Mapping[Cell, int]
    d0: Mapping[Cell, Matrix]
    d1: Mapping[Cell, Matrix]
    modulus: int = DEFAULT_MODULUS

    def __post_init__(self) -> None:
        if self.width < 0 or self.height < 0:
            raise ValueError("bicomplex shape must be non-negative")

    @classmethod
    def build(
        cls,
        width: int,
        height: int,
        dims: Mapping[Cell, int],
        d0: Mapping[Cell, Iterable] | None = None,
        d1: Mapping[Cell, Iterable] | None = None,
        modulus: int = DEFAULT_MODULUS,
    ) -> "Bicomplex":
        """Bicomplex from nested lists; cells missing from ``dims`` are zero."""
        cell_dims = {
            (m, n): int(dims.get((m, n), 0)) for m in range(width) for n in range(height)
        }

        def convert(maps: Mapping[Cell, Iterable] | None, step: Cell) -> Dict[Cell, Matrix]:
            converted: Dict[Cell, Matrix] = {}
            for (m, n), rows in (maps or {}).items():
                target = (m + step[0], n + step[1])
                if target not in cell_dims:
                    continue
                shape = (cell_dims[target], cell_dims[(m, n)])
                converted[(m, n)] = linalg.as_matrix(
                    np.array(rows, dtype=np.int64).reshape(shape), shape[0], shape[1], modulus
                )
            return converted

        return cls(
            width=width,
            height=height,
            dims=cell_dims,
            d0=convert(d0, (0, 1)),
            d1=convert(d1, (1, 0)),
            modulus=modulus,
        )

    @classmethod
    def from_commuting(
        cls,
        width: int,
        height: int,
        dims: Mapping[Cell, int],
        d0: Mapping[Cell, Iterable] | None = None,
        d1: Mapping[Cell, Iterable] | None = None,
        modulus: int = DEFAULT_MODULUS,
    ) -> "Bicomplex":
        """Bicomplex from commuting squares; column ``m`` verticals get the sign ``(-1)^m``."""
        signed = {
            (m, n): (np.array(rows, dtype=np.int64) * (-1) ** m)
            for (m, n), rows in (d0 or {}).items()
        }
        return cls.build(width, height, dims, signed, d1, modulus)

    # -- cells and maps -----------------------------------------------------------

    def cells(self) -> List[Cell]:
        return [(m, n) for m in range(self.width) for n in range(self.height)]

    def dim(self, m: int, n: int) -> int:
        return self.dims.get((m, n), 0)

    def vertical(self, m: int, n: int) -> Matrix:
        stored = self.d0.get((m, n))
        if stored is not None:
            return stored
        return linalg.zeros(self.dim(m, n + 1), self.dim(m, n))

    def horizontal(self, m: int, n: int) -> Matrix:
        stored = self.d1.get((m, n))
        if stored is not None:
            return stored
        return linalg.zeros(self.dim(m + 1, n), self.dim(m, n))

    # -- total complex ----------------------------------------------------------

    @property
    def top_degree(self) -> int:
        return self.width + self.height - 2

    def diagonal(self, k: int) -> List[Cell]:
        return [(m, k - m) for m in range(self.width) if 0 <= k - m < self.height]

    def offsets(self, k: int) -> Dict[Cell, int]:
        offsets: Dict[Cell, int] = {}
        position = 0
        for cell in self.diagonal(k):
            offsets[cell] = position
            position += self.dims[cell]
        return offsets

    def total_dimension(self, k: int) -> int:
        return sum(self.dims[cell] for cell in self.diagonal(k))

    def total_differential(self, k: int) -> Matrix:
        """``Tot^k -> Tot^{k+1}``; block rows and columns follow :meth:`diagonal` order."""
        source, target = self.offsets(k), self.offsets(k + 1)
        result = linalg.zeros(self.total_dimension(k + 1), self.total_dimension(k))
        for (m, n), col in source.items():
            width = self.dims[(m, n)]
            for (tm, tn), mat in (((m, n + 1), self.vertical(m, n)), ((m + 1, n), self.horizontal(m, n))):
                if (tm, tn) in target and mat.size:
                    row = target[(tm, tn)]
                    result[row : row + mat.shape[0], col : col + width] = mat
        return result

    def embed(self, m: int, n: int, vectors: Matrix) -> Matrix:
        """Cell vectors placed into ``Tot^{m+n}`` coordinates."""
        k = m + n
        result = linalg.zeros(self.total_dimension(k), vectors.shape[1])
        start = self.offsets(k)[(m, n)]
        result[start : start + self.dims[(m, n)]] = vectors
        return result

    def component(self, m: int, n: int, vectors: Matrix) -> Matrix:
        """The ``(m, n)`` block of ``Tot^{m+n}`` vectors."""
        start = self.offsets(m + n)[(m, n)]
        return vectors[start : start + self.dims[(m, n)]]


def validate(bicomplex: Bicomplex) -> ValidationReport:
    """Shape checks and the three identities; violations are listed, never raised."""
    report = ValidationReport()
    r = bicomplex.modulus
    for label, maps, step in (("d0", bicomplex.d0, (0, 1)), ("d1", bicomplex.d1, (1, 0))):
        for (m, n), mat in sorted(maps.items()):
            target = (m + step[0], n + step[1])
            if (m, n) not in bicomplex.dims or target not in bicomplex.dims:
                report.violations.append(f"{label} at {(m, n)} leaves the grid")
                continue
            expected = (bicomplex.dims[target], bicomplex.dims[(m, n)])
            if mat.shape != expected:
                report.violations.append(f"{label} at {(m, n)} has shape {mat.shape}, expected {expected}")
    if report.violations:
        return report
    for m, n in bicomplex.cells():
        if not linalg.is_zero(linalg.matmul(bicomplex.vertical(m, n + 1), bicomplex.vertical(m, n), r)):
            if (m, n + 2) in bicomplex.dims:
                report.violations.append(f"d0∘d0 ≠ 0 at {(m, n)}")
        if not linalg.is_zero(linalg.matmul(bicomplex.horizontal(m + 1, n), bicomplex.horizontal(m, n), r)):
            if (m + 2, n) in bicomplex.dims:
                report.violations.append(f"d1∘d1 ≠ 0 at {(m, n)}")
        if (m + 1, n + 1) in bicomplex.dims:
            square = linalg.matmul(bicomplex.vertical(m + 1, n), bicomplex.horizontal(m, n), r)
            square = (square + linalg.matmul(bicomplex.horizontal(m, n + 1), bicomplex.vertical(m, n), r)) % r
            if not linalg.is_zero(square):
                report.violations.append(f"d0d1 + d1d0 ≠ 0 on the square at {(m, n)}")
    if report.violations:
        logger.debug("bicomplex invalid: %s", report.first)
    return report


def total_homology(bicomplex: Bicomplex) -> List[int]:
    """``dim H^k(Tot)`` for ``k = 0 .. width + height - 2``."""
    r = bicomplex.modulus
    ranks = [linalg.rank(bicomplex.total_differential(k), r) for k in range(bicomplex.top_degree + 1)]
    dims: List[int] = []
    for k in range(bicomplex.top_degree + 1):
        incoming = ranks[k - 1] if k > 0 else 0
        dims.append(bicomplex.total_dimension(k) - ranks[k] - incoming)
    return dims


# -- text format ----------------------------------------------------------------


def dumps(bicomplex: Bicomplex) -> str:
    r = bicomplex.modulus
    lines = [f"specseq {FORMAT_VERSION} {r} {bicomplex.width} {bicomplex.height}"]
    for m, n in bicomplex.cells():
        lines.append(f"cell {m} {n} {bicomplex.dims[(m, n)]}")
    for label, maps in (("d0", bicomplex.d0), ("d1", bicomplex.d1)):
        for (m, n), mat in sorted(maps.items()):
            rows, cols = mat.shape
            if rows == 0 or cols == 0:
                continue
            lines.append(f"{label} {m} {n} {rows} {cols}")
            lines.extend(" ".join(str(int(value) % r) for value in row) for row in mat)
    return "\n".join(lines) + "\n"


def loads(text: str) -> Bicomplex:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise BicomplexFormatError("empty bicomplex text")
    header = lines[0].split()
    if len(header) != 5 or header[0] != "specseq" or header[1] != FORMAT_VERSION:
        raise BicomplexFormatError(f"bad header: {lines[0]!r}")
    try:
        modulus, width, height = (int(value) for value in header[2:])
    except ValueError as exc:
        raise BicomplexFormatError(f"bad header: {lines[0]!r}") from exc

    dims: Dict[Cell, int] = {}
    maps: Dict[str, Dict[Cell, List[List[int]]]] = {"d0": {}, "d1": {}}
    position = 1
    try:
        while position < len(lines):
            parts = lines[position].split()
            if parts[0] == "cell" and len(parts) == 4:
                dims[(int(parts[1]), int(parts[2]))] = int(parts[3])
                position += 1
            elif parts[0] in maps and len(parts) == 5:
                m, n, rows, cols = (int(value) for value in parts[1:])
                block = [[int(value) for value in line.split()] for line in lines[position + 1 : position + 1 + rows]]
                if len(block) != rows or any(len(row) != cols for row in block):
                    raise BicomplexFormatError(f"matrix block at line {position + 1} is truncated")
                maps[parts[0]][(m, n)] = block
                position += 1 + rows
            else:
                raise BicomplexFormatError(f"unexpected line {position + 1}: {lines[position]!r}")
    except ValueError as exc:
        if isinstance(exc, BicomplexFormatError):
            raise
        raise BicomplexFormatError(f"non-integer entry near line {position + 1}") from exc

    for (m, n), value in dims.items():
        if not (0 <= m < width and 0 <= n < height) or value < 0:
            raise BicomplexFormatError(f"cell {(m, n)} is outside the {width}x{height} grid")
    for label, step in (("d0", (0, 1)), ("d1", (1, 0))):
        for (m, n), block in maps[label].items():
            target = (m + step[0], n + step[1])
            if (len(block), len(block[0]) if block else 0) != (dims.get(target, 0), dims.get((m, n), 0)):
                raise BicomplexFormatError(f"{label} at {(m, n)} does not match the cell dimensions")
    return Bicomplex.build(width, height, dims, maps["d0"], maps["d1"], modulus)
