"""Acceptance suites: Euler characteristics, duality, routes, resolutions, collapse, quantum."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Sequence

from ..engine import ExtEngine, FormalModule, UnsupportedFamily, dual, induced, simple, tilting, weyl
from ..engine import families
from ..frobenius import ResolutionVariant, g1_ext1_weyl_weyl, g1_ext_higher_weyl_weyl, resolution_term
from ..grothendieck import euler_weyl_simple, euler_weyl_weyl
from ..quantum import GL2Weight, QuantumContext, QuantumEngine
from ..specseq import (
    GenerationMode,
    Hypothesis,
    check_collapse,
    check_exactness,
    couple_at,
    derive,
    exact_couple,
    k2_is_zero,
    page,
    random_bicomplex,
    witness,
)
from ..specseq.pages import Filtration
from ..weights import WeightContext, bar, linked

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class SuiteSettings:
    primes: Sequence[int] = (2, 3, 5, 7)
    max_weight: int = 60
    trials: int = 200
    seed: int = 7
    pages: int = 6
    shape: Sequence[int] = (6, 6)
    max_cell_dim: int = 5
    modulus: int = 32003
    retry_budget: int = 25


@dataclass(slots=True)
class SuiteReport:
    name: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def first_failure(self) -> str | None:
        return self.failures[0] if self.failures else None

    def check(self, condition: bool, message: Callable[[], str]) -> None:
        self.checked += 1
        if not condition:
            self.failures.append(message())

    def merge(self, other: "SuiteReport") -> None:
        self.checked += other.checked
        self.failures.extend(f"[{other.name}] {failure}" for failure in other.failures)
        self.notes.extend(f"[{other.name}] {note}" for note in other.notes)

    def lines(self) -> List[str]:
        lines = [f"checks: {self.checked}", f"failures: {len(self.failures)}"]
        if self.first_failure:
            lines.append(f"first failure: {self.first_failure}")
        lines.extend(self.notes)
        return lines


def _pairs(limit: int) -> Iterator[tuple[int, int]]:
    for lam in range(limit + 1):
        for mu in range(limit + 1):
            yield lam, mu


def _within_bound(engine: ExtEngine, source: FormalModule, target: FormalModule) -> bool:
    """The untruncated vector has no nonzero entry past the vanishing bound."""
    dims = engine.compute(source, target)
    bound = engine.vanishing_bound(source, target)
    return all(not dim for dim in dims[bound + 1 :])


def euler_suite(settings: SuiteSettings) -> SuiteReport:
    """Alternating sums against the Grothendieck-group oracles, with cutoff and top-degree checks."""
    report = SuiteReport("euler")
    for p in settings.primes:
        engine = ExtEngine(p)
        ctx = engine.ctx
        for lam, mu in _pairs(settings.max_weight):
            vector = engine.query(weyl(lam), weyl(mu))
            report.check(
                vector.euler() == euler_weyl_weyl(lam, mu),
                lambda: f"p={p}: χ(Δ({lam}), Δ({mu})) = {vector.euler()}",
            )
            report.check(
                _within_bound(engine, weyl(lam), weyl(mu)),
                lambda: f"p={p}: Δ({lam}), Δ({mu}) nonzero beyond cutoff {vector.cutoff}",
            )
            if lam < mu and linked(lam, mu, ctx) and lam % p != p - 1 and mu % p != p - 1:
                gap = mu // p - lam // p
                report.check(
                    len(vector.dims) == gap + 1 and vector.dims[-1] == 1,
                    lambda: f"p={p}: top degree of Δ({lam}), Δ({mu}) is not {gap}",
                )
            against_simple = engine.query(weyl(lam), simple(mu))
            report.check(
                against_simple.euler() == euler_weyl_simple(lam, mu, ctx),
                lambda: f"p={p}: χ(Δ({lam}), L({mu})) = {against_simple.euler()}",
            )
            report.check(
                _within_bound(engine, weyl(lam), simple(mu)),
                lambda: f"p={p}: Δ({lam}), L({mu}) nonzero beyond cutoff",
            )
    logger.info("euler suite: %d checks", report.checked)
    return report


def duality_suite(settings: SuiteSettings) -> SuiteReport:
    """``Ext(M, N) = Ext(N°, M°)`` across the supported pairings."""
    report = SuiteReport("duality")
    limit = min(settings.max_weight, 40)
    makers = (("Δ", weyl), ("∇", induced), ("L", simple), ("T", tilting))
    for p in settings.primes:
        engine = ExtEngine(p)
        for lam, mu in _pairs(limit):
            for source_name, make_source in makers:
                for target_name, make_target in makers:
                    source, target = make_source(lam), make_target(mu)
                    try:
                        forward = engine.query(source, target)
                    except UnsupportedFamily:
                        forward = None
                    try:
                        backward = engine.query(dual(target), dual(source))
                    except UnsupportedFamily:
                        backward = None
                    if forward is None or backward is None:
                        report.check(
                            forward is backward,
                            lambda: f"p={p}: only one side of {source_name}({lam}), {target_name}({mu}) is supported",
                        )
                        continue
                    report.check(
                        forward.dims == backward.dims,
                        lambda: f"p={p}: {source_name}({lam}), {target_name}({mu}) differs from its dual",
                    )
    return report


def route_suite(settings: SuiteSettings) -> SuiteReport:
    """The closed sum and the one-step recursion agree degree by degree."""
    report = SuiteReport("route")
    for p in settings.primes:
        engine = ExtEngine(p)
        for lam, mu in _pairs(settings.max_weight):
            closed = engine.compute(weyl(lam), weyl(mu))
            stepped = engine.weyl_weyl_route(lam, mu)
            report.check(closed == stepped, lambda: f"p={p}: routes differ at ({lam}, {mu}): {closed} vs {stepped}")
    return report


def simples_suite(settings: SuiteSettings) -> SuiteReport:
    """Restricted simples are orthogonal; the Jantzen-region grid obeys its parity and range rule."""
    report = SuiteReport("simples")
    for p in settings.primes:
        if p < 3:
            continue
        engine = ExtEngine(p)
        ctx = engine.ctx
        for i in range(p - 1):
            for j in range(p - 1):
                vector = engine.query(simple(i), simple(j))
                expected = families.DELTA if i == j else ()
                report.check(vector.dims == expected, lambda: f"p={p}: Ext(L({i}), L({j})) = {vector.dims}")
        for a in range(p):
            for b in range(p):
                for r1 in range(p - 1):
                    for r2 in range(p - 1):
                        dims = engine.ext_twist_vs_twist(a, r1, b, r2).dims
                        for q in range(a + b + 2):
                            even = q % 2 == 0 and (a + b) % 2 == 0 and r1 == r2
                            odd = q % 2 == 1 and (a + b) % 2 == 1 and r1 == bar(r2, ctx)
                            in_range = q + b >= a >= max(q - b, b - q)
                            expected = 1 if (even or odd) and in_range else 0
                            actual = dims[q] if q < len(dims) else 0
                            report.check(
                                actual == expected,
                                lambda: f"p={p}: closed form at a={a} b={b} r=({r1},{r2}) q={q} is {actual}",
                            )
    return report


def resolution_suite(settings: SuiteSettings) -> SuiteReport:
    """Resolution bookkeeping and the first higher G1-Ext against the Ext^1 table."""
    report = SuiteReport("resolution")
    for p in settings.primes:
        ctx = WeightContext(p)
        for variant in ResolutionVariant:
            for a in range(21):
                for i in range(p - 1):
                    for m in range(41):
                        term = resolution_term(a, i, m, variant, ctx)
                        following = resolution_term(a, i, m + 1, variant, ctx)
                        report.check(
                            term.kernel_dimension() + following.kernel_dimension() == term.injective_dimension(),
                            lambda: f"p={p}: {variant.value} resolution of ({a}, {i}) not exact at m={m}",
                        )
        for a in range(31):
            for b in range(31):
                for i in range(p - 1):
                    for j in {i, bar(i, ctx)}:
                        higher = g1_ext_higher_weyl_weyl(1, b, j, a, i, ctx)
                        first = g1_ext1_weyl_weyl(b, j, a, i, ctx)
                        report.check(
                            str(higher) == str(first),
                            lambda: f"p={p}: G1 Ext^1 mismatch at b={b} j={j} a={a} i={i}: {higher} vs {first}",
                        )
    return report


def collapse_suite(settings: SuiteSettings) -> SuiteReport:
    """Collapse under either hypothesis, exact couples, dual-route pages and the witness control."""
    report = SuiteReport("collapse")
    shape = (int(settings.shape[0]), int(settings.shape[1]))
    common = dict(max_cell_dim=settings.max_cell_dim, modulus=settings.modulus, retry_budget=settings.retry_budget)
    for mode in (GenerationMode.ALL_ZERO, GenerationMode.ALL_INJECTIVE):
        for trial in range(settings.trials):
            seed = settings.seed * 100_003 + trial
            bicomplex = random_bicomplex(seed, shape, mode, **common)
            result = check_collapse(bicomplex)
            report.check(
                result.passed and result.hypothesis is not Hypothesis.NONE,
                lambda: f"{mode.value} seed {seed}: {result.first_discrepancy or result.hypothesis.value}",
            )

    generic_trials = max(1, settings.trials // 5)
    for trial in range(generic_trials):
        seed = settings.seed * 7_919 + trial
        bicomplex = random_bicomplex(seed, shape, GenerationMode.GENERIC, **common)
        filtration = Filtration(bicomplex)
        couple = exact_couple(bicomplex)
        report.check(check_exactness(couple) == [], lambda: f"generic seed {seed}: level-1 couple not exact")
        for r in range(1, settings.pages + 1):
            expected = page(bicomplex, r, filtration).dims
            report.check(
                couple.page_dims() == expected,
                lambda: f"generic seed {seed}: E_{r} differs between filtration and exact couple",
            )
            if r < settings.pages:
                couple = derive(couple)
                report.check(check_exactness(couple) == [], lambda: f"generic seed {seed}: level-{r + 1} couple not exact")
        report.check(check_collapse(bicomplex).converges, lambda: f"generic seed {seed}: E_∞ does not converge")

    control = witness(settings.modulus)
    result = check_collapse(control)
    second = page(control, 2).dims
    level_two = couple_at(control, 2)
    report.check(
        not result.collapsed and result.converges,
        lambda: "witness: expected E_2 ≠ E_∞ with convergence",
    )
    report.check(
        second.get((0, 1)) == 1 and second.get((2, 0)) == 1 and sum(second.values()) == 2,
        lambda: f"witness: unexpected E_2 {second}",
    )
    report.check(not k2_is_zero(level_two, 0, 1), lambda: "witness: k_2 at (0, 1) vanished")
    report.notes.append(f"witness control: {result.first_discrepancy}")
    return report


def quantum_suite(settings: SuiteSettings) -> SuiteReport:
    """Characteristic-zero quantum checks: restricted δ, Euler δ, degree shift, closed form."""
    report = SuiteReport("quantum")
    limit = min(settings.max_weight, 60)
    for l in (2, 3, 5):
        engine = QuantumEngine(QuantumContext(l=l, p=0))
        for lam in range(l):
            for mu in range(l):
                dims = engine.qext_weyl_weyl(GL2Weight(lam), GL2Weight(mu)).dims
                report.check(dims == (families.DELTA if lam == mu else ()), lambda: f"l={l}: restricted ({lam}, {mu}) gave {dims}")
        for lam, mu in _pairs(limit):
            if (mu - lam) % 2:
                continue
            shift = (mu - lam) // 2 if mu >= lam else 0
            lhs = GL2Weight(lam + shift, shift) if mu >= lam else GL2Weight(lam, 0)
            rhs = GL2Weight(mu, 0) if mu >= lam else GL2Weight(mu + (lam - mu) // 2, (lam - mu) // 2)
            vector = engine.qext_weyl_weyl(lhs, rhs)
            report.check(vector.euler() == int(lam == mu), lambda: f"l={l}: quantum χ({lhs}, {rhs}) = {vector.euler()}")
            closed = engine.weyl_weyl_closed(lhs, rhs)
            report.check(closed.dims == vector.dims, lambda: f"l={l}: closed form differs at {lhs}, {rhs}")
            shifted = engine.even_case_shift(lhs, rhs)
            if shifted is not None:
                lower = engine.qext_weyl_weyl(*shifted).dims
                report.check(
                    vector.dims[:1] in ((), (0,)) and families.shift(lower, 1) == vector.dims,
                    lambda: f"l={l}: degree shift fails at {lhs}, {rhs}",
                )
    return report


SUITES: Dict[str, Callable[[SuiteSettings], SuiteReport]] = {
    "euler": euler_suite,
    "duality": duality_suite,
    "route": route_suite,
    "simples": simples_suite,
    "resolution": resolution_suite,
    "collapse": collapse_suite,
    "quantum": quantum_suite,
}


def run_suite(name: str, settings: SuiteSettings) -> SuiteReport:
    if name == "all":
        combined = SuiteReport("all")
        for suite_name, suite in SUITES.items():
            logger.info("running %s suite", suite_name)
            combined.merge(suite(settings))
        return combined
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return SUITES[name](settings)
