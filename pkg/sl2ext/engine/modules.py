"""Formal modules, Ext vectors and canonical query keys."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterable, Mapping, Tuple

Vector = Tuple[int, ...]


class UnsupportedFamily(ValueError):
    """Raised for a query that no rewrite brings into a supported family.

    Unsupported never means zero: callers must surface this instead of printing
    an empty vector.
    """

    def __init__(self, message: str, *, obstruction: str | None = None) -> None:
        super().__init__(message)
        self.obstruction = obstruction or message


class ModuleKind(str, Enum):
    TRIVIAL = "trivial"
    WEYL = "weyl"
    INDUCED = "induced"
    SIMPLE = "simple"
    TILTING = "tilting"
    TWIST = "twist"


_SYMBOLS = {
    ModuleKind.WEYL: "Δ",
    ModuleKind.INDUCED: "∇",
    ModuleKind.SIMPLE: "L",
    ModuleKind.TILTING: "T",
}


@dataclass(frozen=True, slots=True)
class FormalModule:
    """``Δ(λ)``, ``∇(λ)``, ``L(λ)``, ``T(λ)``, ``k`` or ``N^[1]⊗L(r)`` (kind TWIST)."""

    kind: ModuleKind
    weight: int = 0
    inner: "FormalModule | None" = None
    residue: int = 0

    def __post_init__(self) -> None:
        if self.weight < 0:
            raise ValueError(f"module weights are natural numbers, got {self.weight}")
        if self.kind is ModuleKind.TWIST and self.inner is None:
            raise ValueError("a twisted module needs an inner module")

    def highest_weight(self, p: int) -> int:
        if self.kind is ModuleKind.TWIST:
            assert self.inner is not None
            return p * self.inner.highest_weight(p) + self.residue
        if self.kind is ModuleKind.TRIVIAL:
            return 0
        return self.weight

    def __str__(self) -> str:
        if self.kind is ModuleKind.TRIVIAL:
            return "k"
        if self.kind is ModuleKind.TWIST:
            return f"{self.inner}^[1]⊗L({self.residue})"
        return f"{_SYMBOLS[self.kind]}({self.weight})"


def trivial() -> FormalModule:
    return FormalModule(ModuleKind.TRIVIAL)


def weyl(lam: int) -> FormalModule:
    return FormalModule(ModuleKind.WEYL, lam)


def induced(lam: int) -> FormalModule:
    return FormalModule(ModuleKind.INDUCED, lam)


def simple(lam: int) -> FormalModule:
    return FormalModule(ModuleKind.SIMPLE, lam)


def tilting(lam: int) -> FormalModule:
    return FormalModule(ModuleKind.TILTING, lam)


def twist(inner: FormalModule, residue: int) -> FormalModule:
    return FormalModule(ModuleKind.TWIST, 0, inner, residue)


def dual(module: FormalModule) -> FormalModule:
    """Contravariant dual: Δ and ∇ swap, L, T and k are self-dual."""
    if module.kind is ModuleKind.WEYL:
        return induced(module.weight)
    if module.kind is ModuleKind.INDUCED:
        return weyl(module.weight)
    if module.kind is ModuleKind.TWIST:
        assert module.inner is not None
        return twist(dual(module.inner), module.residue)
    return module


def trim(values: Iterable[int]) -> Vector:
    items = list(values)
    while items and items[-1] == 0:
        items.pop()
    return tuple(items)


@dataclass(frozen=True, slots=True)
class ExtVector:
    """``dims[q] = dim Ext^q`` with ``dims[q] == 0`` for every ``q >= cutoff``."""

    dims: Vector
    cutoff: int

    def __post_init__(self) -> None:
        if any(value < 0 for value in self.dims):
            raise ValueError("Ext dimensions are natural numbers")

    def __getitem__(self, q: int) -> int:
        if q < 0 or q >= len(self.dims):
            return 0
        return self.dims[q]

    @property
    def is_zero(self) -> bool:
        return not self.dims

    def euler(self) -> int:
        return sum(value if q % 2 == 0 else -value for q, value in enumerate(self.dims))

    def to_dict(self) -> Dict[str, Any]:
        return {"dims": list(self.dims), "cutoff": self.cutoff}


@dataclass(frozen=True, slots=True)
class QueryKey:
    """Canonical family tag plus weights; the unit of memoization and persistence."""

    family: str
    weights: Tuple[Any, ...]
    p: int

    @property
    def is_zero(self) -> bool:
        return self.family == "zero"

    def to_dict(self) -> Dict[str, Any]:
        return {"family": self.family, "weights": list(self.weights), "p": self.p}

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any]) -> "QueryKey":
        weights = payload.get("weights")
        if not isinstance(weights, list):
            raise ValueError("query key weights must be a list")
        return cls(family=str(payload["family"]), weights=tuple(weights), p=int(payload["p"]))

    def __str__(self) -> str:
        inside = ", ".join(str(item) for item in self.weights)
        return f"{self.family}({inside}; p={self.p})"
