"""
Verdict CSV files

One row per ordered protocol pair::

    p_id,q_id,est_p,est_q,est_ratio,predicted_faster,meas_p_ns,meas_q_ns,meas_ratio,agree

Measurement columns are empty for estimation-only verdicts. ``agree`` is
written as ``true`` or ``false``.
"""
import math
from typing import IO, Any, Iterable, List, Optional, Union

import pandas as pd

from protoperf.estimator.estimate import ComparisonVerdict, Faster
from protoperf.typing import PathLike

__all__ = ["VERDICT_COLUMNS", "read_verdicts", "verdict_frame", "write_verdicts"]

VERDICT_COLUMNS = [
    "p_id",
    "q_id",
    "est_p",
    "est_q",
    "est_ratio",
    "predicted_faster",
    "meas_p_ns",
    "meas_q_ns",
    "meas_ratio",
    "agree",
]


def verdict_frame(verdicts: Iterable[ComparisonVerdict]) -> pd.DataFrame:
    """Verdicts as a DataFrame with columns ``VERDICT_COLUMNS``"""
    return pd.DataFrame([v.to_row() for v in verdicts], columns=VERDICT_COLUMNS)


def _format_agree(value: Any) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return "true" if bool(value) else "false"


def write_verdicts(
    verdicts: Iterable[ComparisonVerdict], path: Union[PathLike, IO[str]]
) -> None:
    """Write verdicts as UTF-8 CSV with LF line endings to a file or text buffer"""
    frame = verdict_frame(verdicts)
    frame["agree"] = frame["agree"].map(_format_agree).astype(str)
    frame.to_csv(path, index=False, lineterminator="\n", encoding="utf-8", float_format="%.17g")


def _optional(value: Any) -> Optional[float]:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return None
    return float(value)


def read_verdicts(path: PathLike) -> List[ComparisonVerdict]:
    """
    Read a verdict CSV

    Parameters
    ----------
    path : {str, Path}
        File to read

    Returns
    -------
    list[ComparisonVerdict]
        Verdicts in file order
    """
    frame = pd.read_csv(
        path,
        dtype={"p_id": str, "q_id": str, "predicted_faster": str, "agree": str},
        float_precision="round_trip",
    )
    missing = [c for c in VERDICT_COLUMNS if c not in frame.columns]
    if missing:
        raise ValueError("Verdict CSV is missing the column(s): " + ", ".join(missing))
    out = []
    for row in frame.itertuples(index=False):
        agree = None
        if isinstance(row.agree, str) and row.agree:
            agree = row.agree.lower() == "true"
        out.append(
            ComparisonVerdict(
                p_id=row.p_id,
                q_id=row.q_id,
                est_p=float(row.est_p),
                est_q=float(row.est_q),
                est_ratio=float(row.est_ratio),
                predicted_faster=Faster(row.predicted_faster),
                meas_p=_optional(row.meas_p_ns),
                meas_q=_optional(row.meas_q_ns),
                meas_ratio=_optional(row.meas_ratio),
                agree=agree,
            )
        )
    return out
