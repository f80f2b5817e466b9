"""
Cost estimation and pairwise comparison of protocols
"""
from dataclasses import dataclass, replace
from enum import Enum
import math
from typing import Any, Dict, Optional

from protoperf.model.polynomial import eval_model
from protoperf.model.registry import ModelRegistry
from protoperf.protocol.model import CryptoOp, Protocol

__all__ = [
    "ComparisonVerdict",
    "DEFAULT_TIE_EPSILON",
    "Faster",
    "compare_protocols",
    "estimate_op",
    "estimate_protocol",
    "ordering",
]

DEFAULT_TIE_EPSILON = 1e-9


class Faster(Enum):
    """Which protocol of a pair is faster"""

    P = "P"
    Q = "Q"
    TIE = "TIE"

    @property
    def opposite(self) -> "Faster":
        return {Faster.P: Faster.Q, Faster.Q: Faster.P, Faster.TIE: Faster.TIE}[self]


def ordering(cost_p: float, cost_q: float, tie_epsilon: float = 0.0) -> Faster:
    """
    Order two costs

    Parameters
    ----------
    cost_p, cost_q : float
        Costs of the first and second protocol
    tie_epsilon : float
        Relative separation, ``|p - q| / max(|p|, |q|)``, at or below which
        the costs are considered tied

    Returns
    -------
    Faster
        P if cost_p is smaller, Q if cost_q is smaller, otherwise TIE
    """
    if tie_epsilon < 0:
        raise ValueError("tie_epsilon must be non-negative")
    scale = max(abs(cost_p), abs(cost_q))
    if scale == 0 or abs(cost_p - cost_q) <= tie_epsilon * scale:
        return Faster.TIE
    return Faster.P if cost_p < cost_q else Faster.Q


def _ratio(a: float, b: float) -> float:
    if b == 0:
        return float("nan")
    return a / b


def estimate_op(op: CryptoOp, reg: ModelRegistry) -> float:
    """
    Estimated cost of one operation

    Parameters
    ----------
    op : CryptoOp
        The operation
    reg : ModelRegistry
        Cost models, one per category

    Returns
    -------
    float
        Model value at the payload size for symmetric and hash operations.
        For asymmetric operations, the model value at the key size times
        the number of blocks, ``ceil(payload_bytes / (key_bits/8 - 11))``.

    Raises
    ------
    ValueError
        If an asymmetric key cannot hold one padded byte
    """
    model = reg[op.category]
    if op.category.is_asymmetric:
        return float(eval_model(model, op.key_bits)) * op.invocations
    return float(eval_model(model, op.payload_bytes))


def estimate_protocol(p: Protocol, reg: ModelRegistry) -> float:
    """
    Estimated cost of a protocol

    The sum of ``estimate_op`` over every operation of every step, in the
    registry's unit. The sum is correctly rounded so it does not depend on
    the order of the operations.
    """
    return math.fsum(estimate_op(op, reg) for op in p.ops)


@dataclass(frozen=True)
class ComparisonVerdict:
    """
    Estimated, and optionally measured, ordering of a protocol pair

    Parameters
    ----------
    p_id, q_id : str
        Protocol identifiers
    est_p, est_q : float
        Estimated costs
    est_ratio : float
        ``est_p / est_q``, NaN when ``est_q`` is 0
    predicted_faster : Faster
        Estimated ordering
    meas_p, meas_q : float, optional
        Measured costs in nanoseconds
    meas_ratio : float, optional
        ``meas_p / meas_q``
    agree : bool, optional
        Whether the measured ordering equals the predicted one. Only defined
        when measurements are present.
    """

    p_id: str
    q_id: str
    est_p: float
    est_q: float
    est_ratio: float
    predicted_faster: Faster
    meas_p: Optional[float] = None
    meas_q: Optional[float] = None
    meas_ratio: Optional[float] = None
    agree: Optional[bool] = None

    @property
    def measured(self) -> bool:
        return self.meas_p is not None and self.meas_q is not None

    @property
    def measured_faster(self) -> Optional[Faster]:
        """Measured ordering, exact comparison"""
        if self.meas_p is None or self.meas_q is None:
            return None
        return ordering(self.meas_p, self.meas_q)

    def with_measurements(self, meas_p: float, meas_q: float) -> "ComparisonVerdict":
        """Verdict with the measured costs of p and q attached"""
        verdict = replace(
            self, meas_p=float(meas_p), meas_q=float(meas_q), meas_ratio=_ratio(meas_p, meas_q)
        )
        return replace(verdict, agree=verdict.measured_faster is self.predicted_faster)

    def to_row(self) -> Dict[str, Any]:
        """Row of the verdict CSV. Measurement fields are None when absent."""
        return {
            "p_id": self.p_id,
            "q_id": self.q_id,
            "est_p": self.est_p,
            "est_q": self.est_q,
            "est_ratio": self.est_ratio,
            "predicted_faster": self.predicted_faster.value,
            "meas_p_ns": self.meas_p,
            "meas_q_ns": self.meas_q,
            "meas_ratio": self.meas_ratio,
            "agree": self.agree,
        }


def compare_protocols(
    p: Protocol,
    q: Protocol,
    reg: ModelRegistry,
    tie_epsilon: float = DEFAULT_TIE_EPSILON,
) -> ComparisonVerdict:
    """
    Predict which of two protocols is faster

    Parameters
    ----------
    p, q : Protocol
        Protocols to compare
    reg : ModelRegistry
        Cost models
    tie_epsilon : float
        Relative separation of the estimates at or below which the verdict
        is a tie. Default is 1e-9.

    Returns
    -------
    ComparisonVerdict
        Estimation-only verdict. ``est_ratio`` is ``est_p / est_q`` in
        argument order and NaN when ``est_q`` is 0; the ordering is decided
        regardless.

    Examples
    --------
    >>> from protoperf.datasets import reference
    >>> from protoperf.protocol import parse_protocol
    >>> reg = reference.load()
    >>> p = parse_protocol("protocol p { A -> B: senc(size=80); hash(size=80) }")
    >>> q = parse_protocol("protocol q { A -> B: aenc(size=64, key=1024) }")
    >>> compare_protocols(p, q, reg).predicted_faster
    <Faster.P: 'P'>
    """
    est_p = estimate_protocol(p, reg)
    est_q = estimate_protocol(q, reg)
    return ComparisonVerdict(
        p_id=p.id,
        q_id=q.id,
        est_p=est_p,
        est_q=est_q,
        est_ratio=_ratio(est_p, est_q),
        predicted_faster=ordering(est_p, est_q, tie_epsilon),
    )
