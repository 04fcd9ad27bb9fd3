"""Finite double complexes, their spectral sequences and the E_2 collapse check."""

from .bicomplex import Bicomplex, BicomplexFormatError, ValidationReport, dumps, loads, total_homology, validate
from .collapse import CollapseReport, Hypothesis, check_collapse, vertical_hypothesis
from .couples import ExactCouple, check_exactness, couple_at, derive, exact_couple, k2_is_zero
from .generator import GenerationError, GenerationMode, random_bicomplex
from .pages import Filtration, Page, infinity_page, page, pages
from .witness import square, witness

__all__ = [
    "Bicomplex",
    "BicomplexFormatError",
    "CollapseReport",
    "ExactCouple",
    "Filtration",
    "GenerationError",
    "GenerationMode",
    "Hypothesis",
    "Page",
    "ValidationReport",
    "check_collapse",
    "check_exactness",
    "couple_at",
    "derive",
    "dumps",
    "exact_couple",
    "infinity_page",
    "k2_is_zero",
    "loads",
    "page",
    "pages",
    "random_bicomplex",
    "square",
    "total_homology",
    "validate",
    "vertical_hypothesis",
    "witness",
]
