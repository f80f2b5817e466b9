"""
Timing harness: warm-up, batching, repetition and aggregation
"""
from dataclasses import dataclass, replace
import logging
import threading
from typing import Any, Callable, Dict, List, Sequence, Tuple
import zlib

import numpy as np
import pandas as pd
from scipy import stats

from protoperf.bench.backends.base import Backend
from protoperf.bench.clock import Timer, check_resolution
from protoperf.bench.spec import PrimitiveSpec, SweepConfig
from protoperf.model.data import MeasurementDataset
from protoperf.shared.exceptions import precision_warning

__all__ = [
    "BATCH_TICKS",
    "MEASUREMENT_COLUMNS",
    "TIMING_LOCK",
    "TimingResult",
    "aggregate",
    "measure_sweep",
    "payload_bytes",
    "sweep",
    "sweep_points",
    "time_callable",
    "time_primitive",
]

logger = logging.getLogger(__name__)

# A timed window must span at least this many clock ticks
BATCH_TICKS = 64
MAX_BATCH = 1 << 20

# At most one timed region runs in the process at a time
TIMING_LOCK = threading.RLock()

MEASUREMENT_COLUMNS = [
    "category",
    "operation",
    "algorithm",
    "mode",
    "key_bits",
    "size_bytes",
    "rep",
    "elapsed_ns",
]


@dataclass(frozen=True)
class TimingResult:
    """
    Per-invocation timings of one primitive or protocol

    Parameters
    ----------
    samples : tuple[float, ...]
        Time of one invocation in each repetition, in nanoseconds. When
        batched, a sample is the window time divided by ``batch``.
    batch : int
        Invocations per timed window
    aggregator : str
        "median" or "mean"
    """

    samples: Tuple[float, ...]
    batch: int
    aggregator: str = "median"

    @property
    def elapsed(self) -> float:
        """Aggregate of the samples"""
        return aggregate(self.samples, self.aggregator)

    @property
    def dispersion(self) -> float:
        """Inter-quartile range of the samples"""
        return float(stats.iqr(np.asarray(self.samples, dtype=np.float64)))


def aggregate(samples: Sequence[float], aggregator: str = "median") -> float:
    """Median or mean of timing samples"""
    values = np.asarray(samples, dtype=np.float64)
    if aggregator == "median":
        return float(np.median(values))
    if aggregator == "mean":
        return float(np.mean(values))
    raise ValueError(f"Unknown aggregator {aggregator!r}")


def payload_bytes(label: str, size: int, seed: int = 0) -> bytes:
    """
    Seeded random payload

    Parameters
    ----------
    label : str
        Identifies the primitive, e.g. ``PrimitiveSpec.label``
    size : int
        Number of bytes
    seed : int
        Non-negative seed

    Returns
    -------
    bytes
        The same bytes for the same (label, size, seed) on every platform
    """
    if seed < 0:
        raise ValueError("seed must be non-negative")
    rng = np.random.default_rng([seed, zlib.crc32(label.encode("utf-8")), size])
    return rng.bytes(size)


def _window(timer: Timer, fn: Callable[[], Any], k: int) -> int:
    start = timer()
    for _ in range(k):
        fn()
    return timer() - start


def _batch_size(timer: Timer, fn: Callable[[], Any], threshold: float) -> int:
    # exponential search for a clearing k, then bisect down to the smallest
    hi = 1
    while _window(timer, fn, hi) < threshold:
        if hi >= MAX_BATCH:
            logger.warning("Batch size capped at %d invocations", MAX_BATCH)
            return MAX_BATCH
        hi *= 2
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _window(timer, fn, mid) >= threshold:
            hi = mid
        else:
            lo = mid
    return hi


def time_callable(
    fn: Callable[[], Any],
    timer: Timer,
    resolution: int,
    cfg: SweepConfig,
    label: str = "",
    warn_below: float = 0.0,
) -> TimingResult:
    """
    Time repeated invocations of a callable

    Parameters
    ----------
    fn : callable
        Work to time, called without arguments
    timer : callable
        Clock returning integer nanoseconds
    resolution : int
        Resolution of ``timer`` in nanoseconds
    cfg : SweepConfig
        Warm-up, repetition, aggregation and batching settings
    label : str
        Name used in log messages
    warn_below : float
        Minimum trusted region length in nanoseconds when batching is off.
        The effective threshold is the larger of this and the batching
        threshold.

    Returns
    -------
    TimingResult
        One per-invocation sample per repetition

    Notes
    -----
    When batching is enabled and one invocation is shorter than
    ``BATCH_TICKS`` clock ticks, the smallest batch of invocations whose
    window clears that threshold is timed instead and the window time is
    divided by the batch size. Without batching a short region raises a
    ``PrecisionWarning``.
    """
    check_resolution(resolution)
    threshold = BATCH_TICKS * resolution
    with TIMING_LOCK:
        for _ in range(cfg.warmup):
            fn()
        k = _batch_size(timer, fn, threshold) if cfg.batch else 1
        samples = [_window(timer, fn, k) / k for _ in range(cfg.repetitions)]
    result = TimingResult(tuple(float(s) for s in samples), k, cfg.aggregator)
    if k > 1:
        logger.debug("%s: batched %d invocations per window", label, k)
    if not cfg.batch:
        precision_warning(result.elapsed, max(threshold, warn_below))
    return result


def _prepared(backend: Backend, spec: PrimitiveSpec, size: int, seed: int) -> bytes:
    backend.check(spec, size if spec.category.is_asymmetric else None)
    return backend.prepare(spec, payload_bytes(spec.label, size, seed))


def _time_spec(
    backend: Backend, spec: PrimitiveSpec, size: int, cfg: SweepConfig
) -> TimingResult:
    backend.self_test()
    data = _prepared(backend, spec, size, cfg.seed)
    op = backend.operation(spec)
    return time_callable(
        lambda: op(spec, data), backend.timer, backend.resolution, cfg, spec.label
    )


def time_primitive(
    backend: Backend, spec: PrimitiveSpec, size: int, cfg: SweepConfig
) -> Tuple[float, float]:
    """
    Time one primitive at one payload size

    Parameters
    ----------
    backend : Backend
        Provider of the primitive
    spec : PrimitiveSpec
        Primitive to time
    size : int
        Plaintext size in bytes
    cfg : SweepConfig
        Repetition and aggregation settings

    Returns
    -------
    elapsed : float
        Aggregate time of one invocation, nanoseconds
    dispersion : float
        Inter-quartile range of the repetitions, nanoseconds

    Raises
    ------
    ClockResolutionError
        If the backend clock is coarser than 1 ms
    CapabilityError
        If the backend cannot run the primitive at this size
    SelfTestError
        If the backend fails its self-test
    """
    result = _time_spec(backend, spec, size, cfg)
    return result.elapsed, result.dispersion


def sweep_points(backend: Backend, spec: PrimitiveSpec, cfg: SweepConfig) -> List[PrimitiveSpec]:
    """
    Primitives and payload sizes visited by a sweep

    Symmetric and hash sweeps visit ``cfg.sizes``. Asymmetric sweeps visit
    every key size the backend supports with the payload fixed at the block
    capacity of that key.
    """
    if spec.category.is_asymmetric:
        keys = [k for k in backend.supported_key_bits(spec) if k // 8 - 11 >= 1]
        return [replace(spec, key_bits=k) for k in keys]
    return [spec] * len(cfg.sizes)


def measure_sweep(backend: Backend, spec: PrimitiveSpec, cfg: SweepConfig) -> pd.DataFrame:
    """
    Time a primitive across a sweep and keep every repetition

    Parameters
    ----------
    backend : Backend
        Provider of the primitive
    spec : PrimitiveSpec
        Primitive to sweep. For asymmetric primitives the key size is
        replaced by each supported key size in turn.
    cfg : SweepConfig
        Sweep settings

    Returns
    -------
    DataFrame
        One row per repetition with columns ``MEASUREMENT_COLUMNS``
    """
    backend.self_test()
    points = sweep_points(backend, spec, cfg)
    logger.info("Sweeping %s on %s over %d points", spec.label, backend.name, len(points))
    rows: List[Dict[str, Any]] = []
    for i, point in enumerate(points):
        size = point.block_capacity if point.category.is_asymmetric else cfg.sizes[i]
        result = _time_spec(backend, point, size, cfg)
        logger.debug(
            "%s size=%d elapsed=%.1f ns iqr=%.1f ns",
            point.label,
            size,
            result.elapsed,
            result.dispersion,
        )
        for rep, elapsed in enumerate(result.samples):
            rows.append(
                {
                    "category": point.category.family,
                    "operation": point.category.operation,
                    "algorithm": point.algorithm,
                    "mode": point.mode or "",
                    "key_bits": point.key_bits,
                    "size_bytes": size,
                    "rep": rep,
                    "elapsed_ns": elapsed,
                }
            )
    return pd.DataFrame(rows, columns=MEASUREMENT_COLUMNS)


def sweep(backend: Backend, spec: PrimitiveSpec, cfg: SweepConfig) -> MeasurementDataset:
    """
    Benchmark a primitive over a sweep

    Parameters
    ----------
    backend : Backend
        Provider of the primitive
    spec : PrimitiveSpec
        Primitive to sweep
    cfg : SweepConfig
        Sweep settings

    Returns
    -------
    MeasurementDataset
        One sample per sweep point in nanoseconds. ``x`` is the payload size
        for symmetric and hash primitives and the key size for asymmetric
        primitives.
    """
    frame = measure_sweep(backend, spec, cfg)
    x_col = "key_bits" if spec.category.is_asymmetric else "size_bytes"
    grouped = frame.groupby(x_col, sort=False)["elapsed_ns"]
    agg = grouped.agg(lambda s: aggregate(s.to_numpy(), cfg.aggregator))
    meta = dict(backend.describe())
    meta.update(
        {
            "category": spec.category.key,
            "algorithm": spec.algorithm,
            "mode": spec.mode,
            "key_bits": spec.key_bits,
            "repetitions": cfg.repetitions,
            "aggregator": cfg.aggregator,
        }
    )
    return MeasurementDataset(agg.index.to_numpy(), agg.to_numpy(), unit="ns", meta=meta)
