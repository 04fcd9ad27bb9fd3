"""The characteristic-p Ext calculator: dispatch, memoization and query()."""

from __future__ import annotations

import logging
from typing import Callable, Dict, Iterable, List, Tuple

from ..grothendieck import tilting_weyl_multiplicities
from ..weights import WeightContext, WeightError, linked
from . import families
from .bounds import vanishing_bound
from .modules import (
    ExtVector,
    FormalModule,
    ModuleKind,
    QueryKey,
    UnsupportedFamily,
    Vector,
    induced,
    simple,
    tilting,
    trim,
    twist,
    weyl,
)
from .normalize import (
    SIMPLE_WEYL,
    TILTING_INDUCED,
    TILTING_WEYL,
    TWIST_TWIST,
    TWIST_WEYL,
    WEYL_INDUCED,
    WEYL_SIMPLE,
    WEYL_TWIST,
    WEYL_WEYL,
    ZERO,
    NormalizedQuery,
    normalize,
)

logger = logging.getLogger(__name__)

WEYL_WEYL_ROUTE = "weyl-weyl-route"


def _module_from(kind: str, weight: int) -> FormalModule:
    return FormalModule(ModuleKind(kind), weight)


class ExtEngine:
    """Ext dimension vectors over ``SL2`` in characteristic ``p``.

    Results are memoized per :class:`QueryKey`. The memo is a plain dict used
    through ``setdefault``, so two computations racing on one key store the same
    value and the first one wins.
    """

    def __init__(self, p: int, *, memoize: bool = True) -> None:
        self.ctx = WeightContext(p)
        self.p = p
        self.memoize = memoize
        self._memo: Dict[QueryKey, Vector] = {}

    # -- memo ---------------------------------------------------------------

    def _cached(self, key: QueryKey, producer: Callable[[], Vector]) -> Vector:
        if self.memoize:
            hit = self._memo.get(key)
            if hit is not None:
                return hit
        value = producer()
        if self.memoize:
            value = self._memo.setdefault(key, value)
        return value

    def memo_items(self) -> List[Tuple[QueryKey, Vector]]:
        return sorted(self._memo.items(), key=lambda item: str(item[0]))

    def preload(self, entries: Iterable[Tuple[QueryKey, Vector]]) -> int:
        """Seed the memo with known results; keys for another ``p`` are ignored."""
        loaded = 0
        for key, dims in entries:
            if key.p != self.p:
                continue
            self._memo.setdefault(key, tuple(dims))
            loaded += 1
        return loaded

    def _key(self, family: str, *weights: object) -> QueryKey:
        return QueryKey(family, tuple(weights), self.p)

    # -- entry points -------------------------------------------------------

    def normalize(self, source: FormalModule, target: FormalModule) -> NormalizedQuery:
        return normalize(source, target, self.ctx)

    def vanishing_bound(self, source: FormalModule, target: FormalModule) -> int:
        return vanishing_bound(source, target, self.ctx)

    def compute(self, source: FormalModule, target: FormalModule) -> Vector:
        """Untruncated vector for ``Ext^*(source, target)``."""
        return self.evaluate(self.normalize(source, target).key)

    def evaluate(self, key: QueryKey) -> Vector:
        w = key.weights
        if key.p != self.p:
            raise ValueError(f"key {key} belongs to another characteristic")
        if key.family == ZERO:
            return ()
        if key.family == WEYL_WEYL:
            return self._weyl_weyl(w[0], w[1])
        if key.family == WEYL_WEYL_ROUTE:
            return self._route(w[0], w[1])
        if key.family == WEYL_INDUCED:
            return self._weyl_induced(w[0], w[1])
        if key.family == WEYL_SIMPLE:
            return self._weyl_simple(w[0], w[1])
        if key.family == WEYL_TWIST:
            return self._weyl_twist(w[0], _module_from(w[1], w[2]), w[3])
        if key.family == SIMPLE_WEYL:
            return self._simple_weyl(w[0], w[1])
        if key.family == TWIST_WEYL:
            return self._twist_weyl(_module_from(w[0], w[1]), w[2], w[3])
        if key.family == TWIST_TWIST:
            return self._twist_twist(w[0], w[1], w[2], w[3])
        if key.family == TILTING_WEYL:
            return self._tilting_weyl(w[0], w[1])
        if key.family == TILTING_INDUCED:
            return self._tilting_induced(w[0], w[1])
        raise UnsupportedFamily(f"unknown family tag {key.family!r}")

    def query(
        self,
        source: FormalModule,
        target: FormalModule,
        max_degree: int | None = None,
    ) -> ExtVector:
        """Dimension vector up to ``min(max_degree, vanishing_bound)``."""
        normalized = self.normalize(source, target)
        dims = self.evaluate(normalized.key)
        bound = self.vanishing_bound(source, target)
        limit = bound if max_degree is None else min(bound, max_degree)
        return ExtVector(trim(dims[: limit + 1]), cutoff=bound + 1)

    # -- named operations -----------------------------------------------------

    def ext_weyl_weyl(self, lam: int, mu: int) -> ExtVector:
        return self.query(weyl(lam), weyl(mu))

    def weyl_weyl_route(self, lam: int, mu: int) -> Vector:
        return self._route(lam, mu)

    def ext_twist_vs_weyl(self, inner: FormalModule, r: int, mu: int) -> ExtVector:
        return self.query(twist(inner, r), weyl(mu))

    def ext_simple_vs_weyl(self, mu_simple: int, lam_weyl: int) -> ExtVector:
        return self.query(simple(mu_simple), weyl(lam_weyl))

    def ext_weyl_simple(self, lam: int, mu: int) -> ExtVector:
        return self.query(weyl(lam), simple(mu))

    def ext_weyl_vs_twistsimple(self, lam: int, inner: FormalModule, r: int) -> ExtVector:
        return self.query(weyl(lam), twist(inner, r))

    def ext_twist_vs_twist(self, a: int, r1: int, b: int, r2: int) -> ExtVector:
        return ExtVector(self._twist_twist(a, r1, b, r2), cutoff=a + b + 1)

    def ext_tilting_vs_weyl(self, lam: int, mu: int) -> ExtVector:
        return self.query(tilting(lam), weyl(mu))

    def ext_tilting_vs_induced(self, lam: int, mu: int) -> ExtVector:
        return self.query(tilting(lam), induced(mu))

    # -- families -------------------------------------------------------------

    def _weyl_weyl(self, lam: int, mu: int) -> Vector:
        return self._cached(
            self._key(WEYL_WEYL, lam, mu),
            lambda: families.weyl_weyl_closed_form(lam, mu, self.p, self._weyl_weyl),
        )

    def _route(self, lam: int, mu: int) -> Vector:
        return self._cached(
            self._key(WEYL_WEYL_ROUTE, lam, mu),
            lambda: families.weyl_weyl_route(lam, mu, self.p, self._route, self._route),
        )

    def _weyl_induced(self, lam: int, mu: int) -> Vector:
        return families.DELTA if lam == mu else ()

    def _twist_weyl(self, inner: FormalModule, r: int, mu: int) -> Vector:
        def produce() -> Vector:
            p = self.p
            a, i = divmod(mu, p)
            if i == p - 1:
                return self.compute(inner, weyl(a)) if r == p - 1 else ()
            if r == p - 1:
                return ()
            if inner.kind is ModuleKind.INDUCED:
                raise UnsupportedFamily(
                    f"Ext({inner}^[1]⊗L({r}), Δ({mu})) has an induced module under the twist",
                    obstruction="induced module inside a Frobenius twist on the source side",
                )
            return families.twist_vs_weyl(
                inner.highest_weight(p),
                r,
                mu,
                p,
                lambda c: self.compute(inner, weyl(c)),
                lambda c: self.compute(inner, induced(c)),
            )

        return self._cached(self._key(TWIST_WEYL, inner.kind.value, inner.weight, r, mu), produce)

    def _simple_weyl(self, mu_simple: int, lam_weyl: int) -> Vector:
        def produce() -> Vector:
            p = self.p
            if not linked(mu_simple, lam_weyl, self.ctx):
                return ()
            if mu_simple < p:
                return self._weyl_weyl(mu_simple, lam_weyl)
            m1, j0 = divmod(mu_simple, p)
            a, i = divmod(lam_weyl, p)
            if j0 == p - 1 or i == p - 1:
                return self._simple_weyl(m1, a) if j0 == i == p - 1 else ()
            return self._twist_weyl(simple(m1), j0, lam_weyl)

        return self._cached(self._key(SIMPLE_WEYL, mu_simple, lam_weyl), produce)

    def _weyl_simple(self, lam: int, mu: int) -> Vector:
        def produce() -> Vector:
            p = self.p
            if not linked(lam, mu, self.ctx):
                return ()
            if mu < p:
                return self._weyl_weyl(lam, mu)
            if lam == mu:
                return families.DELTA
            if lam > mu:
                return ()
            b, j = divmod(lam, p)
            m1, j0 = divmod(mu, p)
            if j == p - 1 or j0 == p - 1:
                return self._weyl_simple(b, m1) if j == j0 == p - 1 else ()
            return self._weyl_twist(lam, simple(m1), j0)

        return self._cached(self._key(WEYL_SIMPLE, lam, mu), produce)

    def _weyl_twist(self, lam: int, inner: FormalModule, r: int) -> Vector:
        def produce() -> Vector:
            p = self.p
            b, j = divmod(lam, p)
            if j == p - 1:
                return self.compute(weyl(b), inner) if r == p - 1 else ()
            if r == p - 1:
                return ()
            return families.weyl_vs_twist(
                lam, inner.highest_weight(p), r, p, lambda c: self.compute(weyl(c), inner)
            )

        return self._cached(self._key(WEYL_TWIST, lam, inner.kind.value, inner.weight, r), produce)

    def _twist_twist(self, a: int, r1: int, b: int, r2: int) -> Vector:
        if not (0 <= r1 <= self.p - 2 and 0 <= r2 <= self.p - 2):
            raise WeightError(f"twist residues must lie in [0, {self.p - 2}]")
        return self._cached(
            self._key(TWIST_TWIST, a, r1, b, r2),
            lambda: families.twist_closed_form(a, r1, b, r2, self.p),
        )

    def _tilting_weyl(self, lam: int, mu: int) -> Vector:
        def produce() -> Vector:
            p = self.p
            if not linked(lam, mu, self.ctx):
                return ()
            if lam <= p - 1:
                return self._weyl_weyl(lam, mu)
            b, j = divmod(lam, p)
            a, i = divmod(mu, p)
            if j == p - 1 or i == p - 1:
                return self._tilting_weyl(b, a) if j == i == p - 1 else ()
            return families.tilting_vs_weyl(lam, mu, p, self._tilting_weyl)

        return self._cached(self._key(TILTING_WEYL, lam, mu), produce)

    def _tilting_induced(self, lam: int, mu: int) -> Vector:
        multiplicity = dict(tilting_weyl_multiplicities(lam, self.ctx)).get(mu, 0)
        return (multiplicity,) if multiplicity else ()
