"""Command line interface for sl2ext."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, NoReturn, Sequence

from tenacity import RetryError

from . import __version__
from .cache.store import CacheFormatError, CacheStore
from .config import ConfigError, Sl2extConfig, get_config
from .engine import ExtEngine, UnsupportedFamily
from .outputs.csv_out import build_csv
from .outputs.json_out import dumps_record, dumps_records
from .outputs.terminal import render_report, render_result, render_table
from .quantum import CLASSICAL_FAMILIES, GL2Weight, QuantumContext, QuantumEngine
from .specseq import GenerationError
from .utils.logging import LEVELS, configure_logging
from .utils.ranges import RangeResolutionError, resolve_table_request, summarize_table_request
from .verify import SUITES, SuiteSettings, run_suite
from .weights import WeightContext, WeightError, linked, linked_mod

logger = logging.getLogger(__name__)

TWIST_CLOSED_FORM = "twist-closed-form"
FAMILIES = (*CLASSICAL_FAMILIES, TWIST_CLOSED_FORM)
FORMATS = ("text", "json", "csv")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNSUPPORTED = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad input; here 2 is reserved for unsupported families."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _add_query_arguments(parser: argparse.ArgumentParser, *, ranges: bool) -> None:
    parser.add_argument("--family", choices=FAMILIES, default="delta-delta", help="Module families of the pair.")
    parser.add_argument("--p", dest="p", type=int, default=None, help="Prime characteristic.")
    weight_help = "Weight range such as 7, 0..12 or 1,4..6." if ranges else "Highest weight (n or w1,w2 for quantum)."
    parser.add_argument("--lambda", dest="lam", required=True, help=f"Source weight. {weight_help}")
    parser.add_argument("--mu", dest="mu", required=True, help=f"Target weight. {weight_help}")
    parser.add_argument("--max-degree", dest="max_degree", type=int, default=None, help="Truncate above this degree.")
    parser.add_argument("--format", dest="output_format", choices=FORMATS, default=None, help="Output format.")
    parser.add_argument(
        "--sparse",
        action="store_true",
        default=False,
        help="Omit zero rows from CSV and zero records from JSON tables.",
    )
    parser.add_argument("--r1", type=int, default=0, help="Source residue for twist-closed-form.")
    parser.add_argument("--r2", type=int, default=0, help="Target residue for twist-closed-form.")


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser for the CLI."""
    parser = _Parser(
        prog="sl2ext",
        description="Dimensions of Ext groups between SL2 modules, and spectral-sequence checks.",
    )
    parser.add_argument("--version", action="version", version=f"sl2ext {__version__}", help="Show the version and exit.")
    parser.add_argument("--config", dest="config_path", help="Path to an sl2ext.config.yml file.")
    parser.add_argument("--log-level", choices=LEVELS, default="warning", help="Set the logging level for diagnostics.")
    parser.add_argument("--cache", dest="cache_path", default=None, help="Cache file (overrides cache.path).")
    parser.add_argument("--project-root", type=Path, default=None, help="Project root (defaults to auto-detect).")

    subparsers = parser.add_subparsers(dest="command", parser_class=_Parser)

    ext_parser = subparsers.add_parser("ext", help="Compute one Ext dimension vector.")
    _add_query_arguments(ext_parser, ranges=False)
    ext_parser.add_argument("--quantum-l", dest="quantum_l", type=int, default=None, help="Quantum order l.")
    ext_parser.add_argument(
        "--base-char",
        dest="base_char",
        type=int,
        default=0,
        help="Characteristic under the quantum group (0 or a prime).",
    )

    table_parser = subparsers.add_parser("table", help="Compute a grid of Ext vectors.")
    _add_query_arguments(table_parser, ranges=True)

    verify_parser = subparsers.add_parser("verify", help="Run a property suite.")
    verify_parser.add_argument("--suite", choices=(*SUITES, "all"), default="all", help="Suite to run.")
    verify_parser.add_argument("--p", dest="p", type=int, default=None, help="Restrict the suite to one prime.")
    verify_parser.add_argument("--trials", type=int, default=None, help="Trials per collapse mode.")
    verify_parser.add_argument("--seed", type=int, default=None, help="Seed for generated bicomplexes.")
    verify_parser.add_argument("--max-weight", dest="max_weight", type=int, default=None, help="Weight bound.")
    verify_parser.add_argument("--pages", type=int, default=None, help="Highest page compared by the dual route.")

    cache_parser = subparsers.add_parser("cache", help="Export or import the result cache.")
    cache_sub = cache_parser.add_subparsers(dest="cache_command", parser_class=_Parser)
    export_parser = cache_sub.add_parser("export", help="Write the cache as line-delimited JSON.")
    export_parser.add_argument("path", type=Path)
    import_parser = cache_sub.add_parser("import", help="Merge a cache file into the local cache.")
    import_parser.add_argument("path", type=Path)
    import_parser.add_argument(
        "--paranoid",
        action="store_true",
        default=False,
        help="Recompute every imported record and reject mismatches.",
    )

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point for the sl2ext CLI."""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)

    command = getattr(args, "command", None)
    if command is None:
        parser.print_help(sys.stderr)
        return EXIT_INPUT

    try:
        config = get_config(
            project_root=args.project_root,
            cli_overrides=_collect_cli_overrides(args),
            config_path=args.config_path,
        )
    except FileNotFoundError as exc:
        parser.error(str(exc))
    except ConfigError as exc:
        parser.error(str(exc))

    try:
        if command == "ext":
            return _handle_ext(args, config)
        if command == "table":
            return _handle_table(args, config)
        if command == "verify":
            return _handle_verify(args, config)
        return _handle_cache(parser, args, config)
    except UnsupportedFamily as exc:
        _status(f"unsupported: {exc} (obstruction: {exc.obstruction})")
        return EXIT_UNSUPPORTED
    except (WeightError, RangeResolutionError, ConfigError, CacheFormatError) as exc:
        parser.error(str(exc))
    except (GenerationError, RetryError) as exc:
        _status(f"bicomplex generation failed: {exc}")
        return EXIT_INPUT


def _collect_cli_overrides(args: argparse.Namespace) -> dict:
    overrides: dict = {}
    if getattr(args, "output_format", None):
        overrides.setdefault("output", {})["format"] = args.output_format
    if args.cache_path:
        overrides.setdefault("cache", {})["path"] = args.cache_path
    if getattr(args, "command", None) == "verify":
        verify: Dict[str, Any] = {}
        for name in ("trials", "seed", "max_weight", "pages"):
            value = getattr(args, name, None)
            if value is not None:
                verify[name] = value
        if args.p is not None:
            verify["primes"] = [args.p]
        if verify:
            overrides["verify"] = verify
    return overrides


def _status(message: str) -> None:
    print(f"sl2ext: {message}", file=sys.stderr, flush=True)


def _output_format(config: Sl2extConfig) -> str:
    value = str(config.section("output").get("format", "text"))
    if value not in FORMATS:
        raise ConfigError(f"output.format must be one of {', '.join(FORMATS)}, got {value!r}")
    return value


def _require_p(args: argparse.Namespace) -> int:
    if args.p is None:
        raise WeightError("--p is required for characteristic-p queries")
    return args.p


def _parse_natural(text: str, flag: str) -> int:
    try:
        value = int(str(text).strip())
    except ValueError as exc:
        raise WeightError(f"{flag} expects a natural number, got {text!r}") from exc
    if value < 0:
        raise WeightError(f"{flag} expects a natural number, got {value}")
    return value


# -- engine access -------------------------------------------------------------


def _open_engine(p: int, config: Sl2extConfig) -> tuple[ExtEngine, CacheStore | None]:
    memoize = bool(config.section("engine").get("memoize", True))
    engine = ExtEngine(p, memoize=memoize)
    if not memoize:
        return engine, None
    store = CacheStore(config.cache_path)
    loaded = engine.preload(store.entries(p))
    logger.debug("Preloaded %d cached results for p=%d from %s", loaded, p, store.path)
    return engine, store


def _persist(engine: ExtEngine, store: CacheStore | None) -> None:
    if store is None:
        return
    written = store.append(engine.memo_items())
    logger.debug("Cached %d new results in %s", written, store.path)


def _classical_result(engine: ExtEngine, family: str, lam: int, mu: int, args: argparse.Namespace) -> Dict[str, Any]:
    if family == TWIST_CLOSED_FORM:
        vector = engine.ext_twist_vs_twist(lam, args.r1, mu, args.r2)
        dims = list(vector.dims)
        if args.max_degree is not None:
            dims = _trimmed(dims[: args.max_degree + 1])
        p = engine.p
        return {
            "family": family,
            "p": p,
            "lambda": lam,
            "mu": mu,
            "dims": dims,
            "cutoff": vector.cutoff,
            "bound": vector.cutoff - 1,
            "block": "linked" if linked(p * lam + args.r1, p * mu + args.r2, engine.ctx) else "unlinked",
            "key": f"twist-twist({lam}, {args.r1}, {mu}, {args.r2}; p={p})",
        }
    make_source, make_target = CLASSICAL_FAMILIES[family]
    source, target = make_source(lam), make_target(mu)
    normalized = engine.normalize(source, target)
    vector = engine.query(source, target, args.max_degree)
    bound = engine.vanishing_bound(source, target)
    p = engine.p
    linked_pair = linked(source.highest_weight(p), target.highest_weight(p), engine.ctx)
    return {
        "family": family,
        "p": p,
        "lambda": lam,
        "mu": mu,
        "dims": vector.dims,
        "cutoff": vector.cutoff,
        "bound": bound,
        "block": "linked" if linked_pair else "unlinked",
        "key": str(normalized.key),
    }


def _trimmed(dims: Sequence[int]) -> List[int]:
    values = list(dims)
    while values and values[-1] == 0:
        values.pop()
    return values


def _quantum_result(args: argparse.Namespace) -> Dict[str, Any]:
    if args.family != "delta-delta":
        raise UnsupportedFamily(
            f"quantum queries support delta-delta only, not {args.family}",
            obstruction="quantum families other than Weyl against Weyl",
        )
    qctx = QuantumContext(l=args.quantum_l, p=args.base_char)
    lhs, rhs = GL2Weight.parse(args.lam), GL2Weight.parse(args.mu)
    engine = QuantumEngine(qctx)
    vector = engine.qext_weyl_weyl(lhs, rhs)
    dims = list(vector.dims)
    if args.max_degree is not None:
        dims = _trimmed(dims[: args.max_degree + 1])
    same_degree = lhs.degree == rhs.degree
    linked_pair = same_degree and linked_mod(lhs.difference, rhs.difference, qctx.l)
    return {
        "family": args.family,
        "p": qctx.p,
        "lambda": [lhs.w1, lhs.w2],
        "mu": [rhs.w1, rhs.w2],
        "dims": dims,
        "cutoff": vector.cutoff,
        "bound": vector.cutoff - 1,
        "block": "linked" if linked_pair else "unlinked",
        "key": f"quantum-weyl-weyl({lhs}, {rhs}; l={qctx.l}, p={qctx.p})",
        "quantum": {"l": qctx.l, "p": qctx.p},
    }


# -- commands ------------------------------------------------------------------


def _handle_ext(args: argparse.Namespace, config: Sl2extConfig) -> int:
    output_format = _output_format(config)
    if args.quantum_l is not None:
        result = _quantum_result(args)
    else:
        p = _require_p(args)
        lam = _parse_natural(args.lam, "--lambda")
        mu = _parse_natural(args.mu, "--mu")
        engine, store = _open_engine(p, config)
        result = _classical_result(engine, args.family, lam, mu, args)
        _persist(engine, store)
    _emit([result], output_format, args.sparse, single=True)
    return EXIT_OK


def _handle_table(args: argparse.Namespace, config: Sl2extConfig) -> int:
    output_format = _output_format(config)
    p = _require_p(args)
    request = resolve_table_request({"lambda_range": args.lam, "mu_range": args.mu}, config.data)
    _status(f"computing {summarize_table_request(request)} for {args.family}, p={p}")
    engine, store = _open_engine(p, config)
    results = [
        _classical_result(engine, args.family, lam, mu, args)
        for lam in request.lambdas
        for mu in request.mus
    ]
    _persist(engine, store)
    title = f"{args.family} · p={p}"
    _emit(results, output_format, args.sparse, single=False, title=title)
    return EXIT_OK


def _emit(
    results: List[Dict[str, Any]],
    output_format: str,
    sparse: bool,
    *,
    single: bool,
    title: str = "",
) -> None:
    if output_format == "csv":
        sys.stdout.write(build_csv(results, sparse=sparse))
        return
    if output_format == "json":
        if single:
            print(dumps_record(results[0]))
        else:
            kept = [result for result in results if result["dims"]] if sparse else results
            print(dumps_records(kept))
        return
    use_rich = sys.stdout.isatty()
    if single:
        print(render_result(results[0], use_rich=use_rich))
    else:
        print(render_table(results, title=title, use_rich=use_rich))


def _suite_settings(config: Sl2extConfig) -> SuiteSettings:
    verify = config.section("verify")
    specseq = config.section("specseq")
    defaults = SuiteSettings()
    try:
        return SuiteSettings(
            primes=tuple(int(p) for p in verify.get("primes", defaults.primes)),
            max_weight=int(verify.get("max_weight", defaults.max_weight)),
            trials=int(verify.get("trials", defaults.trials)),
            seed=int(verify.get("seed", defaults.seed)),
            pages=int(verify.get("pages", defaults.pages)),
            shape=tuple(int(size) for size in specseq.get("shape", defaults.shape)),
            max_cell_dim=int(specseq.get("max_cell_dim", defaults.max_cell_dim)),
            modulus=int(specseq.get("modulus", defaults.modulus)),
            retry_budget=int(specseq.get("retry_budget", defaults.retry_budget)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid verify settings: {exc}") from exc


def _handle_verify(args: argparse.Namespace, config: Sl2extConfig) -> int:
    settings = _suite_settings(config)
    for p in settings.primes:
        WeightContext(p)
    _status(f"running {args.suite} suite")
    report = run_suite(args.suite, settings)
    print(render_report(args.suite, report.lines(), report.passed, use_rich=sys.stdout.isatty()))
    return EXIT_OK if report.passed else EXIT_INPUT


def _handle_cache(parser: argparse.ArgumentParser, args: argparse.Namespace, config: Sl2extConfig) -> int:
    store = CacheStore(config.cache_path)
    action = getattr(args, "cache_command", None)
    if action == "export":
        count = store.export_to(args.path)
        _status(f"exported {count} records to {args.path}")
        return EXIT_OK
    if action == "import":
        if not args.path.is_file():
            parser.error(f"cache file not found: {args.path}")
        engines: Dict[int, ExtEngine] = {}

        def verifier(key):
            engine = engines.setdefault(key.p, ExtEngine(key.p, memoize=False))
            return engine.evaluate(key)

        report = store.import_from(args.path, paranoid=args.paranoid, verifier=verifier)
        _status(
            f"imported {report.imported}, duplicates {report.duplicates}, skipped {report.skipped}, "
            f"corrupt {report.corrupt}, rejected {len(report.rejected)} (warnings: {report.warnings})"
        )
        return EXIT_OK
    parser.error("cache needs a subcommand: export or import")


if __name__ == "__main__":  # pragma: no cover - module entry point
    sys.exit(main())
