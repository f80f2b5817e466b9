"""
Measured cost of a protocol on a backend
"""
import logging
from typing import Callable, List, Tuple

from protoperf.bench.backends.base import Backend
from protoperf.bench.harness import TimingResult, payload_bytes, time_callable
from protoperf.bench.spec import PrimitiveSpec, SweepConfig
from protoperf.protocol.model import Protocol

__all__ = ["MIN_PROTOCOL_NS", "measure_protocol", "time_protocol"]

logger = logging.getLogger(__name__)

# Protocols shorter than this are flagged when measured without batching
MIN_PROTOCOL_NS = 1_000_000

_Call = Tuple[Callable[[PrimitiveSpec, bytes], bytes], PrimitiveSpec, bytes]


def _calls(p: Protocol, backend: Backend, seed: int) -> List[_Call]:
    calls: List[_Call] = []
    for op in p.ops:
        spec = op.spec
        fn = backend.operation(spec)
        for i, size in enumerate(op.chunks()):
            backend.check(spec, size if spec.category.is_asymmetric else None)
            label = f"{p.id}:{spec.label}:{i}"
            calls.append((fn, spec, backend.prepare(spec, payload_bytes(label, size, seed))))
    return calls


def time_protocol(p: Protocol, backend: Backend, cfg: SweepConfig) -> TimingResult:
    """
    Time every repetition of a protocol run

    See Also
    --------
    measure_protocol
    """
    backend.self_test()
    calls = _calls(p, backend, cfg.seed)

    def run() -> None:
        for fn, spec, data in calls:
            fn(spec, data)

    result = time_callable(
        run, backend.timer, backend.resolution, cfg, p.id, warn_below=MIN_PROTOCOL_NS
    )
    logger.debug(
        "%s: %d invocations, elapsed %.1f ns (batch %d)",
        p.id,
        len(calls),
        result.elapsed,
        result.batch,
    )
    return result


def measure_protocol(p: Protocol, backend: Backend, cfg: SweepConfig) -> float:
    """
    Measured cost of a protocol

    Parameters
    ----------
    p : Protocol
        Protocol to run
    backend : Backend
        Provider of every operation's primitive
    cfg : SweepConfig
        Warm-up, repetitions, aggregation and batching. ``sizes`` is unused.

    Returns
    -------
    float
        Aggregate time of one complete run in nanoseconds

    Raises
    ------
    CapabilityError
        If the backend cannot run one of the operations

    Notes
    -----
    Each repetition executes all operations sequentially in step order inside
    one timed region. Inputs, including the ciphertexts consumed by decrypt
    operations, are prepared before timing starts. Asymmetric operations run
    once per block of at most ``key_bits/8 - 11`` bytes. Without batching, a
    run shorter than the batching threshold or 1 ms raises a
    ``PrecisionWarning``.
    """
    return time_protocol(p, backend, cfg).elapsed
