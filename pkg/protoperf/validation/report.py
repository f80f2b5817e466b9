"""
Estimated-versus-measured validation reports
"""
import json
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional
import warnings

import numpy as np
import pandas as pd
from property_cached import cached_property
from statsmodels.iolib.summary import SimpleTable, fmt_2cols, fmt_params

from protoperf.estimator.estimate import ComparisonVerdict, Faster
from protoperf.estimator.io import VERDICT_COLUMNS, write_verdicts
from protoperf.shared.base import Summary, _SummaryStr
from protoperf.shared.exceptions import EmptyReportError
from protoperf.shared.io import _str, format_ns, pct_format
from protoperf.typing import PathLike

__all__ = [
    "DEFAULT_MIN_SEP_PCT",
    "RECORD_COLUMNS",
    "REFERENCE_ANCHORS",
    "ValidationReport",
    "pair_records",
]

DEFAULT_MIN_SEP_PCT = 5.0

RECORD_COLUMNS = VERDICT_COLUMNS + ["meas_sep_pct", "abs_ratio_deviation_pct"]

# Deviations and fit error published alongside the reference registry.
# They are hardware specific and kept only for side-by-side comparison.
REFERENCE_ANCHORS: Dict[str, Any] = {
    "mean_abs_ratio_deviation_pct_by_payload": {"10": 7.12, "80": 2.9, "300": 1.85},
    "fit_error_ms": 3.714,
    "fit_error_pct_of_max": 0.3963,
}


def pair_records(
    ids: List[str],
    estimates: np.ndarray,
    measurements: np.ndarray,
    tie_epsilon: float,
) -> pd.DataFrame:
    """
    Evaluate every ordered pair of protocols

    Parameters
    ----------
    ids : list[str]
        Protocol identifiers in ascending order
    estimates : ndarray
        Estimated cost of each protocol
    measurements : ndarray
        Measured cost of each protocol in nanoseconds
    tie_epsilon : float
        Relative separation below which estimates are tied

    Returns
    -------
    DataFrame
        One row per ordered pair of distinct protocols, in lexicographic id
        order, with columns ``RECORD_COLUMNS``
    """
    n = len(ids)
    est = np.asarray(estimates, dtype=np.float64)
    meas = np.asarray(measurements, dtype=np.float64)
    i, j = np.divmod(np.arange(n * n), n)
    keep = i != j
    i, j = i[keep], j[keep]
    est_p, est_q = est[i], est[j]
    meas_p, meas_q = meas[i], meas[j]

    with np.errstate(divide="ignore", invalid="ignore"):
        est_ratio = np.where(est_q != 0, est_p / est_q, np.nan)
        meas_ratio = meas_p / meas_q
        scale = np.maximum(np.abs(est_p), np.abs(est_q))
        est_tie = (scale == 0) | (np.abs(est_p - est_q) <= tie_epsilon * scale)
        predicted = np.where(est_tie, Faster.TIE.value, np.where(est_p < est_q, "P", "Q"))
        measured = np.where(
            meas_p == meas_q, Faster.TIE.value, np.where(meas_p < meas_q, "P", "Q")
        )
        low = np.minimum(meas_p, meas_q)
        diff = np.abs(meas_p - meas_q)
        sep = np.where(diff == 0, 0.0, np.where(low > 0, 100.0 * diff / low, np.inf))
        deviation = 100.0 * np.abs(est_ratio - meas_ratio) / meas_ratio

    id_arr = np.asarray(ids, dtype=object)
    return pd.DataFrame(
        {
            "p_id": id_arr[i],
            "q_id": id_arr[j],
            "est_p": est_p,
            "est_q": est_q,
            "est_ratio": est_ratio,
            "predicted_faster": predicted,
            "meas_p_ns": meas_p,
            "meas_q_ns": meas_q,
            "meas_ratio": meas_ratio,
            "agree": predicted == measured,
            "meas_sep_pct": sep,
            "abs_ratio_deviation_pct": deviation,
        },
        columns=RECORD_COLUMNS,
    )


class ValidationReport(_SummaryStr):
    """
    Agreement between estimated and measured protocol orderings

    Parameters
    ----------
    records : DataFrame
        Every evaluated ordered pair, as produced by ``pair_records``
    min_sep_pct : float
        Pairs whose measured costs differ by less than this percentage of the
        smaller cost are excluded from the statistics
    environment : Mapping[str, Any], optional
        Machine and backend provenance
    unit : str
        Unit of the estimates

    Raises
    ------
    EmptyReportError
        If no pair is retained after filtering
    """

    def __init__(
        self,
        records: pd.DataFrame,
        min_sep_pct: float = DEFAULT_MIN_SEP_PCT,
        environment: Optional[Mapping[str, Any]] = None,
        unit: str = "ns",
    ) -> None:
        if min_sep_pct < 0:
            raise ValueError("min_sep_pct must be non-negative")
        missing = [c for c in RECORD_COLUMNS if c not in records.columns]
        if missing:
            raise ValueError("records are missing the column(s): " + ", ".join(missing))
        self._records = records
        self._min_sep_pct = float(min_sep_pct)
        self._environment = dict(environment or {})
        self._unit = unit
        self._retained_mask = (records["meas_sep_pct"] >= self._min_sep_pct).to_numpy()
        if not self._retained_mask.any():
            raise EmptyReportError(
                "No protocol pair is separated by at least {0}% in measured cost "
                "({1} pairs evaluated)".format(self._min_sep_pct, records.shape[0])
            )

    @property
    def records(self) -> pd.DataFrame:
        """Every evaluated pair, retained or not"""
        return self._records

    @cached_property
    def retained(self) -> pd.DataFrame:
        """Pairs that pass the separation filter"""
        return self._records.loc[self._retained_mask].reset_index(drop=True)

    @property
    def min_sep_pct(self) -> float:
        return self._min_sep_pct

    @property
    def environment(self) -> Dict[str, Any]:
        return dict(self._environment)

    @property
    def pairs_total(self) -> int:
        return int(self._records.shape[0])

    @property
    def pairs_retained(self) -> int:
        return int(self._retained_mask.sum())

    @cached_property
    def decisive_pairs(self) -> int:
        """Retained pairs with a non-tie prediction"""
        return int((self.retained["predicted_faster"] != Faster.TIE.value).sum())

    @cached_property
    def agreement_rate(self) -> float:
        """
        Share of retained non-tie predictions matching the measured ordering

        NaN, with a warning, when every retained prediction is a tie.
        """
        retained = self.retained
        decisive = retained["predicted_faster"] != Faster.TIE.value
        if not decisive.any():
            warnings.warn(
                "Every retained pair has a tied estimate; agreement rate is undefined",
                RuntimeWarning,
            )
            return float("nan")
        return float(retained.loc[decisive, "agree"].astype(bool).mean())

    @cached_property
    def mean_abs_ratio_deviation_pct(self) -> float:
        """Mean of 100 |est_ratio - meas_ratio| / meas_ratio over retained pairs"""
        values = self.retained["abs_ratio_deviation_pct"].to_numpy(dtype=np.float64)
        values = values[np.isfinite(values)]
        if values.shape[0] == 0:
            return float("nan")
        return float(values.mean())

    @property
    def verdicts(self) -> List[ComparisonVerdict]:
        """Retained pairs as verdicts"""
        out = []
        for row in self.retained.itertuples(index=False):
            out.append(
                ComparisonVerdict(
                    p_id=row.p_id,
                    q_id=row.q_id,
                    est_p=float(row.est_p),
                    est_q=float(row.est_q),
                    est_ratio=float(row.est_ratio),
                    predicted_faster=Faster(row.predicted_faster),
                    meas_p=float(row.meas_p_ns),
                    meas_q=float(row.meas_q_ns),
                    meas_ratio=float(row.meas_ratio),
                    agree=bool(row.agree),
                )
            )
        return out

    def refilter(self, min_sep_pct: float) -> "ValidationReport":
        """
        Recompute the statistics at another separation threshold

        Parameters
        ----------
        min_sep_pct : float
            New threshold

        Returns
        -------
        ValidationReport
            Report over the same raw records
        """
        return ValidationReport(self._records, min_sep_pct, self._environment, self._unit)

    def to_dict(self) -> Dict[str, Any]:
        """Summary statistics as a JSON-compatible mapping"""

        def _num(v: float) -> Optional[float]:
            return None if not np.isfinite(v) else float(v)

        return {
            "agreement_rate": _num(self.agreement_rate),
            "mean_abs_ratio_deviation_pct": _num(self.mean_abs_ratio_deviation_pct),
            "pairs_total": self.pairs_total,
            "pairs_retained": self.pairs_retained,
            "decisive_pairs": self.decisive_pairs,
            "min_sep_pct": self._min_sep_pct,
            "estimate_unit": self._unit,
            "environment": self.environment,
            "reference_anchors": REFERENCE_ANCHORS,
        }

    def write(self, directory: PathLike) -> Dict[str, Path]:
        """
        Write the verdict CSV and summary JSON

        Parameters
        ----------
        directory : {str, Path}
            Output directory, created if needed

        Returns
        -------
        dict[str, Path]
            Paths of the ``report`` CSV and the ``summary`` JSON
        """
        out = Path(directory)
        out.mkdir(parents=True, exist_ok=True)
        report = out / "report.csv"
        summary = out / "summary.json"
        write_verdicts(self.verdicts, report)
        with open(summary, "w", encoding="utf-8", newline="\n") as f:
            json.dump(self.to_dict(), f, indent=2, sort_keys=True)
            f.write("\n")
        return {"report": report, "summary": summary}

    @property
    def summary(self) -> Summary:
        """
        Validation summary.

        Returns
        -------
        Summary
            Summary table of the comparison statistics
        """
        title = "Estimated vs. Measured Protocol Ordering"
        top_left = [
            ("Backend:", str(self._environment.get("backend", "-"))),
            ("Estimate unit:", self._unit),
            ("Pairs evaluated:", str(self.pairs_total)),
            ("Pairs retained:", str(self.pairs_retained)),
        ]
        top_right = [
            ("Min. separation:", pct_format(self._min_sep_pct)),
            ("Decisive pairs:", str(self.decisive_pairs)),
            ("Agreement rate:", _str(self.agreement_rate)),
            ("Mean |ratio dev.|:", pct_format(self.mean_abs_ratio_deviation_pct)),
        ]
        stubs = []
        vals = []
        for stub, val in top_left:
            stubs.append(stub)
            vals.append([val])
        table = SimpleTable(vals, txt_fmt=fmt_2cols, title=title, stubs=stubs)
        stubs = []
        vals = []
        for stub, val in top_right:
            stubs.append("%-20s" % ("  " + stub))
            vals.append([val])
        table.extend_right(SimpleTable(vals, stubs=stubs))

        smry = Summary()
        smry.tables.append(table)

        dev = self.retained["abs_ratio_deviation_pct"].to_numpy(dtype=np.float64)
        dev = dev[np.isfinite(dev)]
        if dev.shape[0]:
            quantiles = np.percentile(dev, [0, 25, 50, 75, 100])
            data = [[pct_format(q)] for q in quantiles]
            smry.tables.append(
                SimpleTable(
                    data,
                    stubs=["Min", "25%", "Median", "75%", "Max"],
                    headers=["|Ratio dev.|"],
                    txt_fmt=fmt_params,
                    title="Ratio Deviation Distribution",
                )
            )

        times = self._records.drop_duplicates("p_id")["meas_p_ns"].to_numpy(dtype=np.float64)
        data = [[format_ns(t)] for t in np.percentile(times, [0, 50, 100])]
        smry.tables.append(
            SimpleTable(
                data,
                stubs=["Fastest", "Median", "Slowest"],
                headers=["Time"],
                txt_fmt=fmt_params,
                title="Measured Protocol Time",
            )
        )
        return smry
