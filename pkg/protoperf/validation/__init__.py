from protoperf.validation.report import (
    DEFAULT_MIN_SEP_PCT,
    RECORD_COLUMNS,
    REFERENCE_ANCHORS,
    ValidationReport,
    pair_records,
)
from protoperf.validation.validator import (
    SWEEP_COLUMNS,
    environment,
    measure_corpus,
    run_validation,
    size_sweep_error,
    write_sweep,
)

__all__ = [
    "DEFAULT_MIN_SEP_PCT",
    "RECORD_COLUMNS",
    "REFERENCE_ANCHORS",
    "SWEEP_COLUMNS",
    "ValidationReport",
    "environment",
    "measure_corpus",
    "pair_records",
    "run_validation",
    "size_sweep_error",
    "write_sweep",
]
