"""
Command-line interface

Subcommands::

    bench        time primitives over a payload sweep
    fit          fit cubic cost models to measurements
    estimate     estimated cost of every protocol in a file
    compare      verdict for one protocol pair
    generate     seeded random protocol corpus
    validate     estimated vs. measured ordering over a corpus
    sweep-error  ratio deviation as a function of payload size
    replicate    bench, fit, generate and validate in one run

Exit status is 0 on success, 2 on invalid input or an unsupported request
and 1 on any other failure.
"""
import argparse
import json
import logging
import os
from pathlib import Path
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from protoperf.bench.backends import BACKENDS, get_backend
from protoperf.bench.harness import measure_sweep
from protoperf.bench.io import (
    aggregate_measurements,
    datasets_from_measurements,
    read_measurements,
    write_aggregated,
    write_measurements,
)
from protoperf.bench.spec import DEFAULT_SIZES, PrimitiveSpec, SweepConfig, parse_spec
from protoperf.datasets import reference
from protoperf.estimator.estimate import DEFAULT_TIE_EPSILON, compare_protocols, estimate_protocol
from protoperf.estimator.io import write_verdicts
from protoperf.estimator.measure import measure_protocol
from protoperf.generator.config import GenConfig
from protoperf.generator.corpus import CorpusInfo, generate_corpus, sidecar_path, write_sidecar
from protoperf.model.fit import CubicFitResults
from protoperf.model.polynomial import PolynomialModel
from protoperf.model.registry import ModelRegistry, registry_load, registry_save
from protoperf.protocol.model import Protocol
from protoperf.protocol.parser import read_corpus, write_corpus
from protoperf.shared.category import Category, category_from_string
from protoperf.shared.exceptions import ClockResolutionError
from protoperf.validation.report import DEFAULT_MIN_SEP_PCT
from protoperf.validation.validator import run_validation, size_sweep_error, write_sweep

__all__ = ["EXIT_INTERNAL", "EXIT_OK", "EXIT_USAGE", "REPLICATE_SPECS", "build_parser", "main"]

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2

# One primitive per category, benchmarked by ``replicate``
REPLICATE_SPECS = (
    "senc:aes:cbc:128",
    "sdec:aes:cbc:128",
    "hash:sha1:0",
    "aenc:rsa:1024",
    "adec:rsa:1024",
)

_INPUT_ERRORS = (ValueError, OSError, ClockResolutionError)


def _int_list(value: str) -> Tuple[int, ...]:
    try:
        out = tuple(int(v) for v in value.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {value!r}")
    if not out:
        raise argparse.ArgumentTypeError("at least one value is required")
    return out


def _spec(value: str) -> PrimitiveSpec:
    try:
        return parse_spec(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _category(value: str) -> Category:
    try:
        return category_from_string(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    import protoperf

    value = os.environ.get("PROTOPERF_SEED", protoperf.DEFAULT_SEED)
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"PROTOPERF_SEED must be an integer, got {value!r}")


def _sweep_config(args: argparse.Namespace, sizes: Optional[Sequence[int]] = None) -> SweepConfig:
    return SweepConfig(
        sizes=tuple(sizes) if sizes else DEFAULT_SIZES,
        repetitions=args.reps,
        warmup=args.warmup,
        aggregator=args.aggregator,
        batch=not args.no_batch,
        seed=_seed(args),
    )


def _load_registry(path: Optional[str]) -> ModelRegistry:
    if path is None or path == "reference":
        return reference.load()
    return registry_load(path)


def _load_corpus(path: str) -> List[Protocol]:
    return read_corpus(Path(path).read_text(encoding="utf-8"))


def _load_gen_config(path: Optional[str]) -> GenConfig:
    if path is None:
        return GenConfig()
    with open(path, "r", encoding="utf-8") as f:
        try:
            content = json.load(f)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path} is not valid JSON: {exc}")
    if not isinstance(content, dict):
        raise ValueError(f"{path} must contain a JSON object")
    return GenConfig.from_dict(content)


def _find(corpus: Sequence[Protocol], ident: str) -> Protocol:
    for p in corpus:
        if p.id == ident:
            return p
    raise ValueError(f"Unknown protocol id {ident!r}")


def _write_text(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def _write_corpus(corpus: Sequence[Protocol], path: Path, seed: int, cfg: GenConfig) -> Path:
    sidecar = sidecar_path(path)
    if sidecar == path:
        raise ValueError(f"Corpus path {path} must not have a .json suffix")
    _write_text(path, write_corpus(corpus))
    write_sidecar(sidecar, CorpusInfo(seed, len(corpus), cfg))
    return sidecar


def _fit_line(category: Category, res: CubicFitResults) -> str:
    stats = res.stats
    return "{0}: rmse={1:.6g} max_abs_residual={2:.6g} percent_of_max={3:.6g} nobs={4}".format(
        category.key, stats.rmse, stats.max_abs_residual, stats.percent_of_max, res.nobs
    )


def _bench(args: argparse.Namespace) -> int:
    backend = get_backend(args.backend)
    cfg = _sweep_config(args, args.sizes)
    frames = [measure_sweep(backend, spec, cfg) for spec in args.spec]
    frame = pd.concat(frames, ignore_index=True)
    write_measurements(frame, args.out)
    if args.aggregated is not None:
        write_aggregated(aggregate_measurements(frame, cfg.aggregator), args.aggregated)
    print(f"Wrote {frame.shape[0]} measurements to {args.out}")
    return EXIT_OK


def _fit(args: argparse.Namespace) -> int:
    frame = read_measurements(args.input)
    datasets = datasets_from_measurements(frame, args.aggregator)
    wanted = list(args.category_op) if args.category_op else list(datasets)
    missing = [c.key for c in wanted if c not in datasets]
    if missing:
        raise ValueError(f"{args.input} has no measurements for: " + ", ".join(missing))
    out = Path(args.out)
    models: Dict[Category, PolynomialModel] = {}
    if out.exists() and not args.overwrite:
        models.update(registry_load(out, partial=True))
    for cat in wanted:
        res = CubicFitResults.fit(datasets[cat])
        models[cat] = res.model
        print(_fit_line(cat, res))
        if args.summary:
            print(res.summary)
    if len(models) == len(Category):
        registry_save(ModelRegistry(models), out)
    else:
        logger.info("Writing a partial registry with %d categories", len(models))
        registry_save(models, out)
    return EXIT_OK


def _estimate(args: argparse.Namespace) -> int:
    reg = _load_registry(args.registry)
    corpus = _load_corpus(args.protocols)
    frame = pd.DataFrame(
        {
            "protocol_id": [p.id for p in corpus],
            "estimate": [estimate_protocol(p, reg) for p in corpus],
            "unit": reg.unit,
        },
        columns=["protocol_id", "estimate", "unit"],
    )
    target: Any = args.out if args.out is not None else sys.stdout
    frame.to_csv(target, index=False, lineterminator="\n", float_format="%.17g")
    return EXIT_OK


def _compare(args: argparse.Namespace) -> int:
    reg = _load_registry(args.registry)
    corpus = _load_corpus(args.protocols)
    p = _find(corpus, args.p)
    q = _find(corpus, args.q)
    verdict = compare_protocols(p, q, reg, args.tie_epsilon)
    if args.backend is not None:
        backend = get_backend(args.backend)
        cfg = _sweep_config(args)
        meas_p = measure_protocol(p, backend, cfg)
        meas_q = meas_p if q is p else measure_protocol(q, backend, cfg)
        verdict = verdict.with_measurements(meas_p, meas_q)
    write_verdicts([verdict], args.out if args.out is not None else sys.stdout)
    return EXIT_OK


def _generate(args: argparse.Namespace) -> int:
    seed = _seed(args)
    cfg = _load_gen_config(args.config)
    corpus = generate_corpus(seed, args.n, cfg)
    out = Path(args.out)
    sidecar = _write_corpus(corpus, out, seed, cfg)
    print(f"Wrote {len(corpus)} protocols to {out} (sidecar {sidecar})")
    return EXIT_OK


def _validate(args: argparse.Namespace) -> int:
    reg = _load_registry(args.registry)
    corpus = _load_corpus(args.corpus)
    backend = get_backend(args.backend)
    cfg = _sweep_config(args)
    report = run_validation(corpus, reg, backend, cfg, args.min_sep, args.tie_epsilon)
    paths = report.write(args.report)
    print(report.summary)
    print(f"Wrote {paths['report']} and {paths['summary']}")
    return EXIT_OK


def _sweep_error(args: argparse.Namespace) -> int:
    reg = _load_registry(args.registry)
    backend = get_backend(args.backend)
    cfg = _sweep_config(args)
    template = _load_gen_config(args.config)
    rows = size_sweep_error(
        args.sizes, template, reg, backend, cfg, _seed(args), args.n, args.min_sep
    )
    frame = write_sweep(rows, args.out)
    print(frame.to_string(index=False))
    return EXIT_OK


def _replicate(args: argparse.Namespace) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    backend = get_backend(args.backend)
    cfg = _sweep_config(args, args.sizes)
    seed = _seed(args)

    logger.info("Benchmarking %d primitives on %s", len(REPLICATE_SPECS), backend.name)
    frame = pd.concat(
        [measure_sweep(backend, parse_spec(s), cfg) for s in REPLICATE_SPECS], ignore_index=True
    )
    write_measurements(frame, out / "measurements.csv")

    models: Dict[Category, PolynomialModel] = {}
    for cat, data in datasets_from_measurements(frame, cfg.aggregator).items():
        res = CubicFitResults.fit(data)
        models[cat] = res.model
        print(_fit_line(cat, res))
    reg = ModelRegistry(models)
    registry_save(reg, out / "registry.json")

    gen_cfg = _load_gen_config(args.config)
    corpus = generate_corpus(seed, args.n, gen_cfg)
    _write_corpus(corpus, out / "corpus.txt", seed, gen_cfg)

    report = run_validation(corpus, reg, backend, cfg, args.min_sep, args.tie_epsilon)
    report.write(out / "report")
    print(report.summary)
    print(f"Wrote results to {out}")
    return EXIT_OK


def _common_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log progress (-v for INFO, -vv for DEBUG)",
    )
    return parent


def _timing_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("timing")
    group.add_argument("--reps", type=int, default=32, help="Timed repetitions (default: 32)")
    group.add_argument("--warmup", type=int, default=4, help="Untimed warm-up calls (default: 4)")
    group.add_argument(
        "--aggregator",
        choices=["median", "mean"],
        default="median",
        help="Aggregate of the repetitions (default: median)",
    )
    group.add_argument(
        "--no-batch",
        action="store_true",
        help="Time single invocations even when shorter than the clock threshold",
    )
    group.add_argument(
        "--seed",
        type=int,
        default=None,
        help="Seed (default: $PROTOPERF_SEED or 0)",
    )
    return parent


def _backend_arg(parser: argparse.ArgumentParser, required: bool = False) -> None:
    kwargs: Dict[str, Any] = {"required": True} if required else {"default": "synthetic"}
    parser.add_argument(
        "--backend",
        choices=sorted(BACKENDS),
        help="Cryptographic backend (default: synthetic)",
        **kwargs,
    )


def _registry_arg(parser: argparse.ArgumentParser, required: bool = False) -> None:
    help = 'Registry JSON file, or "reference" for the bundled models'
    if not required:
        help += " (default)"
    parser.add_argument("--registry", default=None, required=required, help=help)


def _validation_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--min-sep",
        type=float,
        default=DEFAULT_MIN_SEP_PCT,
        help="Minimum measured separation of a pair, in percent (default: 5)",
    )
    parser.add_argument(
        "--tie-epsilon",
        type=float,
        default=DEFAULT_TIE_EPSILON,
        help="Relative separation of estimates treated as a tie (default: 1e-9)",
    )


def build_parser() -> argparse.ArgumentParser:
    """Argument parser of the ``protoperf`` command"""
    common = _common_parent()
    timing = _timing_parent()
    parser = argparse.ArgumentParser(
        prog="protoperf",
        description="Estimate and validate the performance of security protocols",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s bench --backend cryptography --spec senc:aes:cbc:128 --out m.csv
  %(prog)s fit --in m.csv --out registry.json
  %(prog)s generate --seed 7 --n 1000 --out corpus.txt
  %(prog)s validate --corpus corpus.txt --registry registry.json --report out/
""",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("bench", parents=[common, timing], help="Benchmark primitives")
    _backend_arg(p)
    p.add_argument(
        "--spec",
        type=_spec,
        action="append",
        required=True,
        help="Primitive as CAT:ALG[:MODE]:KEYBITS, e.g. senc:aes:cbc:128. Repeatable.",
    )
    p.add_argument("--out", required=True, help="Measurement CSV")
    p.add_argument("--aggregated", default=None, help="Also write an aggregated CSV")
    p.add_argument("--sizes", type=_int_list, default=None, help="Payload sizes, e.g. 16,64,256")
    p.set_defaults(func=_bench)

    p = sub.add_parser("fit", parents=[common], help="Fit cubic cost models")
    p.add_argument("--in", dest="input", required=True, help="Measurement CSV")
    p.add_argument("--out", required=True, help="Registry JSON, merged if it exists")
    p.add_argument(
        "--category-op",
        type=_category,
        action="append",
        default=None,
        help="Category to fit, e.g. hash.digest. Repeatable. Default: all present.",
    )
    p.add_argument(
        "--aggregator",
        choices=["median", "mean"],
        default="median",
        help="Aggregate of the repetitions (default: median)",
    )
    p.add_argument("--overwrite", action="store_true", help="Replace instead of merging")
    p.add_argument("--summary", action="store_true", help="Print the estimation summary")
    p.set_defaults(func=_fit)

    p = sub.add_parser("estimate", parents=[common], help="Estimate protocol costs")
    _registry_arg(p)
    p.add_argument("--protocols", required=True, help="Protocol file")
    p.add_argument("--out", default=None, help="CSV destination (default: stdout)")
    p.set_defaults(func=_estimate)

    p = sub.add_parser("compare", parents=[common, timing], help="Compare two protocols")
    _registry_arg(p)
    p.add_argument("--protocols", required=True, help="Protocol file")
    p.add_argument("--p", required=True, help="Id of the first protocol")
    p.add_argument("--q", required=True, help="Id of the second protocol")
    p.add_argument(
        "--backend",
        choices=sorted(BACKENDS),
        default=None,
        help="Also measure both protocols on this backend",
    )
    p.add_argument(
        "--tie-epsilon",
        type=float,
        default=DEFAULT_TIE_EPSILON,
        help="Relative separation of estimates treated as a tie (default: 1e-9)",
    )
    p.add_argument("--out", default=None, help="CSV destination (default: stdout)")
    p.set_defaults(func=_compare)

    p = sub.add_parser("generate", parents=[common], help="Generate a protocol corpus")
    p.add_argument("--seed", type=int, default=None, help="Seed (default: $PROTOPERF_SEED or 0)")
    p.add_argument("--n", type=int, default=1000, help="Number of protocols (default: 1000)")
    p.add_argument("--out", required=True, help="Corpus file; the sidecar gets a .json suffix")
    p.add_argument("--config", default=None, help="Generator configuration JSON")
    p.set_defaults(func=_generate)

    p = sub.add_parser("validate", parents=[common, timing], help="Validate estimates")
    p.add_argument("--corpus", required=True, help="Protocol file")
    _registry_arg(p, required=True)
    _backend_arg(p)
    p.add_argument("--report", required=True, help="Output directory")
    _validation_args(p)
    p.set_defaults(func=_validate)

    p = sub.add_parser(
        "sweep-error", parents=[common, timing], help="Ratio deviation by payload size"
    )
    p.add_argument("--sizes", type=_int_list, required=True, help="Payload sizes, e.g. 10,80,300")
    _registry_arg(p, required=True)
    _backend_arg(p)
    p.add_argument("--n", type=int, default=100, help="Protocols per size (default: 100)")
    p.add_argument("--config", default=None, help="Generator configuration JSON")
    p.add_argument("--out", default=None, help="Sweep CSV")
    _validation_args(p)
    p.set_defaults(func=_sweep_error)

    p = sub.add_parser(
        "replicate", parents=[common, timing], help="Bench, fit, generate and validate"
    )
    _backend_arg(p)
    p.add_argument("--out", required=True, help="Output directory")
    p.add_argument("--sizes", type=_int_list, default=None, help="Payload sizes of the sweeps")
    p.add_argument("--n", type=int, default=100, help="Number of protocols (default: 100)")
    p.add_argument("--config", default=None, help="Generator configuration JSON")
    _validation_args(p)
    p.set_defaults(func=_replicate)

    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    logging.getLogger("protoperf").setLevel(level)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the ``protoperf`` command

    Parameters
    ----------
    argv : Sequence[str], optional
        Arguments without the program name. Default is ``sys.argv[1:]``.

    Returns
    -------
    int
        Exit status
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    _configure_logging(args.verbose)
    func: Callable[[argparse.Namespace], int] = args.func
    try:
        return func(args)
    except _INPUT_ERRORS as exc:
        logger.debug("%s failed", args.command, exc_info=True)
        print(f"protoperf {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        print(f"protoperf {args.command}: interrupted", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:
        logger.exception("%s failed", args.command)
        print(f"protoperf {args.command}: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
