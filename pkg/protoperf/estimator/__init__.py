from protoperf.estimator.estimate import (
    DEFAULT_TIE_EPSILON,
    ComparisonVerdict,
    Faster,
    compare_protocols,
    estimate_op,
    estimate_protocol,
    ordering,
)
from protoperf.estimator.io import VERDICT_COLUMNS, read_verdicts, verdict_frame, write_verdicts
from protoperf.estimator.measure import MIN_PROTOCOL_NS, measure_protocol, time_protocol

__all__ = [
    "ComparisonVerdict",
    "DEFAULT_TIE_EPSILON",
    "Faster",
    "MIN_PROTOCOL_NS",
    "VERDICT_COLUMNS",
    "compare_protocols",
    "estimate_op",
    "estimate_protocol",
    "measure_protocol",
    "ordering",
    "read_verdicts",
    "time_protocol",
    "verdict_frame",
    "write_verdicts",
]
