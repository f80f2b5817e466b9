from protoperf.bench.backends import (
    BACKENDS,
    DEFAULT_COSTS,
    AlgorithmSupport,
    Backend,
    SyntheticBackend,
    available_backends,
    get_backend,
)
from protoperf.bench.clock import MAX_RESOLUTION_NS, check_resolution, clock_resolution
from protoperf.bench.harness import (
    BATCH_TICKS,
    TIMING_LOCK,
    TimingResult,
    aggregate,
    measure_sweep,
    payload_bytes,
    sweep,
    time_callable,
    time_primitive,
)
from protoperf.bench.io import (
    AGGREGATED_COLUMNS,
    MEASUREMENT_COLUMNS,
    aggregate_measurements,
    datasets_from_measurements,
    read_aggregated,
    read_measurements,
    write_aggregated,
    write_measurements,
)
from protoperf.bench.spec import DEFAULT_SIZES, MODES, PrimitiveSpec, SweepConfig, parse_spec

__all__ = [
    "AGGREGATED_COLUMNS",
    "AlgorithmSupport",
    "BACKENDS",
    "BATCH_TICKS",
    "Backend",
    "DEFAULT_COSTS",
    "DEFAULT_SIZES",
    "MAX_RESOLUTION_NS",
    "MEASUREMENT_COLUMNS",
    "MODES",
    "PrimitiveSpec",
    "SweepConfig",
    "SyntheticBackend",
    "TIMING_LOCK",
    "TimingResult",
    "aggregate",
    "aggregate_measurements",
    "available_backends",
    "check_resolution",
    "clock_resolution",
    "datasets_from_measurements",
    "get_backend",
    "measure_sweep",
    "parse_spec",
    "payload_bytes",
    "read_aggregated",
    "read_measurements",
    "sweep",
    "time_callable",
    "time_primitive",
    "write_aggregated",
    "write_measurements",
]
