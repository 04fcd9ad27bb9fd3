"""Ext dimension vectors between Weyl, induced, simple and tilting modules."""

from .bounds import vanishing_bound
from .core import ExtEngine
from .modules import (
    ExtVector,
    FormalModule,
    ModuleKind,
    QueryKey,
    UnsupportedFamily,
    dual,
    induced,
    simple,
    tilting,
    trivial,
    twist,
    weyl,
)
from .normalize import NormalizedQuery, normalize

__all__ = [
    "ExtEngine",
    "ExtVector",
    "FormalModule",
    "ModuleKind",
    "NormalizedQuery",
    "QueryKey",
    "UnsupportedFamily",
    "dual",
    "induced",
    "normalize",
    "simple",
    "tilting",
    "trivial",
    "twist",
    "vanishing_bound",
    "weyl",
]
