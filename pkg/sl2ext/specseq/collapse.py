"""Collapse at E_2 when every vertical map is zero or every vertical map is injective."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List

from . import linalg
from .bicomplex import Bicomplex, total_homology
from .pages import Filtration, infinity_page, page

logger = logging.getLogger(__name__)


class Hypothesis(str, Enum):
    ALL_ZERO = "all-d0-zero"
    ALL_INJECTIVE = "all-d0-injective"
    NONE = "none"


def vertical_hypothesis(bicomplex: Bicomplex) -> Hypothesis:
    """Which collapse hypothesis holds; only verticals with a target inside the grid count."""
    r = bicomplex.modulus
    verticals = [
        bicomplex.vertical(m, n) for m, n in bicomplex.cells() if n + 1 < bicomplex.height
    ]
    if all(linalg.is_zero(mat) for mat in verticals):
        return Hypothesis.ALL_ZERO
    if all(linalg.rank(mat, r) == mat.shape[1] for mat in verticals):
        return Hypothesis.ALL_INJECTIVE
    return Hypothesis.NONE


@dataclass(slots=True)
class CollapseReport:
    hypothesis: Hypothesis
    collapsed: bool
    converges: bool
    discrepancies: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Convergence always; E_2 = E_∞ too whenever a hypothesis holds."""
        if self.hypothesis is Hypothesis.NONE:
            return self.converges
        return self.converges and self.collapsed

    @property
    def first_discrepancy(self) -> str | None:
        return self.discrepancies[0] if self.discrepancies else None


def check_collapse(bicomplex: Bicomplex) -> CollapseReport:
    filtration = Filtration(bicomplex)
    second = page(bicomplex, 2, filtration)
    final = infinity_page(bicomplex, filtration)
    hypothesis = vertical_hypothesis(bicomplex)

    discrepancies: List[str] = []
    for cell in bicomplex.cells():
        if second.dim(*cell) != final.dim(*cell):
            discrepancies.append(
                f"E_2{cell} = {second.dim(*cell)} but E_∞{cell} = {final.dim(*cell)}"
            )
    collapsed = not discrepancies

    converges = True
    for k, expected in enumerate(total_homology(bicomplex)):
        if final.diagonal_total(k) != expected:
            converges = False
            discrepancies.append(
                f"degree {k}: E_∞ diagonal sums to {final.diagonal_total(k)}, H^{k}(Tot) = {expected}"
            )
    report = CollapseReport(hypothesis, collapsed, converges, discrepancies)
    logger.debug("collapse check (%s): collapsed=%s converges=%s", hypothesis.value, collapsed, converges)
    return report
