"""
Estimated-versus-measured validation over protocol corpora
"""
import logging
import platform
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple
import warnings

import numpy as np
import pandas as pd

from protoperf.bench.backends.base import Backend
from protoperf.bench.spec import SweepConfig
from protoperf.estimator.estimate import DEFAULT_TIE_EPSILON, estimate_protocol
from protoperf.estimator.measure import measure_protocol
from protoperf.generator.config import GenConfig
from protoperf.generator.corpus import generate_corpus
from protoperf.model.registry import ModelRegistry
from protoperf.protocol.model import Protocol
from protoperf.shared.exceptions import UnitMismatchWarning
from protoperf.typing import PathLike
from protoperf.validation.report import DEFAULT_MIN_SEP_PCT, ValidationReport, pair_records

__all__ = [
    "SWEEP_COLUMNS",
    "environment",
    "measure_corpus",
    "run_validation",
    "size_sweep_error",
    "write_sweep",
]

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["payload_bytes", "mean_abs_ratio_deviation_pct"]


def environment(backend: Backend, cfg: SweepConfig) -> Dict[str, Any]:
    """Machine, library and timing provenance of a validation run"""
    env: Dict[str, Any] = {k: v for k, v in backend.describe().items()}
    env.update(
        {
            "platform": platform.platform(),
            "machine": platform.machine(),
            "python": sys.version.split()[0],
            "numpy": np.__version__,
            "pandas": pd.__version__,
            "repetitions": cfg.repetitions,
            "warmup": cfg.warmup,
            "aggregator": cfg.aggregator,
            "batch": cfg.batch,
            "seed": cfg.seed,
        }
    )
    return env


def measure_corpus(
    corpus: Sequence[Protocol], backend: Backend, cfg: SweepConfig
) -> Dict[str, float]:
    """
    Measure every protocol of a corpus once

    Returns
    -------
    dict[str, float]
        Measured cost in nanoseconds keyed by protocol id
    """
    measured: Dict[str, float] = {}
    total = len(corpus)
    for i, p in enumerate(corpus):
        if p.id in measured:
            raise ValueError(f"Duplicate protocol id {p.id!r} in corpus")
        measured[p.id] = measure_protocol(p, backend, cfg)
        if (i + 1) % 100 == 0 or i + 1 == total:
            logger.info("Measured %d of %d protocols", i + 1, total)
    return measured


def run_validation(
    corpus: Sequence[Protocol],
    reg: ModelRegistry,
    backend: Backend,
    cfg: SweepConfig,
    min_sep_pct: float = DEFAULT_MIN_SEP_PCT,
    tie_epsilon: float = DEFAULT_TIE_EPSILON,
) -> ValidationReport:
    """
    Compare estimated and measured orderings of every protocol pair

    Parameters
    ----------
    corpus : Sequence[Protocol]
        At least two protocols with distinct ids
    reg : ModelRegistry
        Cost models, ideally fitted from sweeps of the same backend
    backend : Backend
        Provider of every operation's primitive
    cfg : SweepConfig
        Timing settings of each protocol measurement
    min_sep_pct : float
        Pairs whose measured costs differ by less than this percentage of the
        smaller cost are excluded. Default is 5.
    tie_epsilon : float
        Relative separation of the estimates at or below which a pair is
        predicted as a tie

    Returns
    -------
    ValidationReport
        Every ordered pair with its estimated and measured costs

    Raises
    ------
    CapabilityError
        If the backend cannot run an operation of the corpus
    EmptyReportError
        If no pair is separated by at least ``min_sep_pct``

    Notes
    -----
    Each protocol is measured exactly once so that
    ``meas_ratio(p, q) * meas_ratio(q, p) == 1`` for every pair. Pairs are
    reported in lexicographic id order.
    """
    if min_sep_pct < 0:
        raise ValueError("min_sep_pct must be non-negative")
    if len(corpus) < 2:
        raise ValueError("At least two protocols are required for validation")
    if reg.unit != "ns":
        warnings.warn(
            f"Registry unit is {reg.unit!r} while measurements are in ns. Ratios remain "
            "comparable but absolute costs do not.",
            UnitMismatchWarning,
        )
    ordered = sorted(corpus, key=lambda p: p.id)
    measured = measure_corpus(ordered, backend, cfg)
    ids = [p.id for p in ordered]
    estimates = np.array([estimate_protocol(p, reg) for p in ordered])
    measurements = np.array([measured[i] for i in ids])
    records = pair_records(ids, estimates, measurements, tie_epsilon)
    logger.info("Evaluated %d ordered pairs", records.shape[0])
    return ValidationReport(records, min_sep_pct, environment(backend, cfg), reg.unit)


def size_sweep_error(
    payload_sizes: Sequence[int],
    template_cfg: GenConfig,
    reg: ModelRegistry,
    backend: Backend,
    sweep_cfg: SweepConfig,
    seed: int = 0,
    n: int = 100,
    min_sep_pct: float = DEFAULT_MIN_SEP_PCT,
) -> List[Tuple[int, float]]:
    """
    Mean ratio deviation as a function of payload size

    Parameters
    ----------
    payload_sizes : Sequence[int]
        Payload sizes in bytes
    template_cfg : GenConfig
        Generator settings held fixed across sizes. Its ``payload_choices``
        is replaced by each size in turn.
    reg : ModelRegistry
        Cost models
    backend : Backend
        Provider of the primitives
    sweep_cfg : SweepConfig
        Timing settings of each protocol measurement
    seed : int
        Corpus seed, identical for every size
    n : int
        Corpus size
    min_sep_pct : float
        Separation filter of each validation run

    Returns
    -------
    list[tuple[int, float]]
        (payload size, mean absolute ratio deviation in percent) in input
        order. The deviation is NaN when no retained pair has a finite
        ratio.
    """
    sizes = [int(s) for s in payload_sizes]
    if not sizes:
        raise ValueError("payload_sizes must not be empty")
    out: List[Tuple[int, float]] = []
    for size in sizes:
        cfg = template_cfg.replace(payload_choices=[size])
        corpus = generate_corpus(seed, n, cfg)
        report = run_validation(corpus, reg, backend, sweep_cfg, min_sep_pct)
        deviation = report.mean_abs_ratio_deviation_pct
        logger.info("Payload %d B: mean |ratio deviation| %.4f%%", size, deviation)
        out.append((size, deviation))
    return out


def write_sweep(rows: Sequence[Tuple[int, float]], path: Optional[PathLike]) -> pd.DataFrame:
    """
    Write size-sweep results as CSV

    Parameters
    ----------
    rows : Sequence[tuple[int, float]]
        Output of ``size_sweep_error``
    path : {str, Path}, optional
        Destination. Nothing is written when None.

    Returns
    -------
    DataFrame
        The rows with columns ``payload_bytes,mean_abs_ratio_deviation_pct``
    """
    frame = pd.DataFrame(list(rows), columns=SWEEP_COLUMNS)
    frame["payload_bytes"] = frame["payload_bytes"].astype(np.int64)
    if path is not None:
        frame.to_csv(
            path, index=False, lineterminator="\n", encoding="utf-8", float_format="%.17g"
        )
    return frame
