"""
Measurement CSV files and their aggregation into datasets

Two formats are used, both UTF-8 with LF line endings and a header row:

* measurement CSV, one row per timed repetition::

    category,operation,algorithm,mode,key_bits,size_bytes,rep,elapsed_ns

* aggregated-dataset CSV, one row per sweep point::

    category,operation,x,elapsed_ns

``category`` and ``operation`` are the two halves of a registry key, e.g.
``symmetric`` and ``encrypt``. ``mode`` is empty for hash and asymmetric
rows. ``x`` is ``size_bytes`` for symmetric and hash rows and ``key_bits``
for asymmetric rows.
"""
from typing import Dict

import pandas as pd

from protoperf.bench.harness import MEASUREMENT_COLUMNS, aggregate
from protoperf.model.data import MeasurementDataset
from protoperf.shared.category import Category
from protoperf.typing import PathLike

__all__ = [
    "AGGREGATED_COLUMNS",
    "MEASUREMENT_COLUMNS",
    "aggregate_measurements",
    "datasets_from_measurements",
    "read_aggregated",
    "read_measurements",
    "write_aggregated",
    "write_measurements",
]

AGGREGATED_COLUMNS = ["category", "operation", "x", "elapsed_ns"]

_GROUP_COLUMNS = ["category", "operation", "algorithm", "mode", "key_bits", "size_bytes"]


def _check_columns(frame: pd.DataFrame, columns: list, what: str) -> None:
    missing = [c for c in columns if c not in frame.columns]
    if missing:
        raise ValueError(
            "{0} is missing the column(s): {1}".format(what, ", ".join(missing))
        )


def write_measurements(frame: pd.DataFrame, path: PathLike) -> None:
    """Write per-repetition measurements"""
    _check_columns(frame, MEASUREMENT_COLUMNS, "Measurement frame")
    frame[MEASUREMENT_COLUMNS].to_csv(
        path, index=False, lineterminator="\n", encoding="utf-8"
    )


def read_measurements(path: PathLike) -> pd.DataFrame:
    """
    Read a measurement CSV

    Parameters
    ----------
    path : {str, Path}
        File to read

    Returns
    -------
    DataFrame
        Measurements with columns ``MEASUREMENT_COLUMNS``

    Raises
    ------
    ValueError
        If a required column is missing or a value is malformed
    """
    frame = pd.read_csv(
        path,
        dtype={"category": str, "operation": str, "algorithm": str, "mode": str},
        keep_default_na=False,
        encoding="utf-8",
        float_precision="round_trip",
    )
    _check_columns(frame, MEASUREMENT_COLUMNS, "Measurement CSV")
    frame = frame[MEASUREMENT_COLUMNS].copy()
    for col in ("key_bits", "size_bytes", "rep"):
        frame[col] = pd.to_numeric(frame[col], errors="raise").astype("int64")
    frame["elapsed_ns"] = pd.to_numeric(frame["elapsed_ns"], errors="raise").astype(float)
    if (frame["elapsed_ns"] < 0).any():
        raise ValueError("Measurement CSV contains negative elapsed times")
    for family, operation in frame[["category", "operation"]].drop_duplicates().itertuples(
        index=False
    ):
        Category.from_family(family, operation)
    return frame


def aggregate_measurements(frame: pd.DataFrame, aggregator: str = "median") -> pd.DataFrame:
    """
    Aggregate repetitions into one row per sweep point

    Parameters
    ----------
    frame : DataFrame
        Per-repetition measurements
    aggregator : str
        "median" or "mean"

    Returns
    -------
    DataFrame
        Columns ``AGGREGATED_COLUMNS`` in order of first appearance
    """
    _check_columns(frame, MEASUREMENT_COLUMNS, "Measurement frame")
    grouped = frame.groupby(_GROUP_COLUMNS, sort=False)["elapsed_ns"]
    agg = grouped.agg(lambda s: aggregate(s.to_numpy(), aggregator)).reset_index()
    asymmetric = agg["category"] == "asymmetric"
    agg["x"] = agg["size_bytes"].where(~asymmetric, agg["key_bits"])
    return agg[AGGREGATED_COLUMNS].reset_index(drop=True)


def write_aggregated(frame: pd.DataFrame, path: PathLike) -> None:
    """Write an aggregated-dataset CSV"""
    _check_columns(frame, AGGREGATED_COLUMNS, "Aggregated frame")
    frame[AGGREGATED_COLUMNS].to_csv(
        path, index=False, lineterminator="\n", encoding="utf-8"
    )


def read_aggregated(path: PathLike) -> pd.DataFrame:
    """Read an aggregated-dataset CSV"""
    frame = pd.read_csv(
        path,
        dtype={"category": str, "operation": str},
        keep_default_na=False,
        float_precision="round_trip",
    )
    _check_columns(frame, AGGREGATED_COLUMNS, "Aggregated CSV")
    return frame[AGGREGATED_COLUMNS].copy()


def datasets_from_measurements(
    frame: pd.DataFrame, aggregator: str = "median"
) -> Dict[Category, MeasurementDataset]:
    """
    Build one pooled dataset per category

    Parameters
    ----------
    frame : DataFrame
        Per-repetition measurements, possibly covering several algorithms,
        modes and key sizes of each category
    aggregator : str
        "median" or "mean"

    Returns
    -------
    dict[Category, MeasurementDataset]
        Class-level datasets in nanoseconds, keyed by category, in order of
        first appearance
    """
    agg = aggregate_measurements(frame, aggregator)
    sources = frame.drop_duplicates(["category", "operation", "algorithm", "mode", "key_bits"])
    out: Dict[Category, MeasurementDataset] = {}
    for (family, operation), group in agg.groupby(["category", "operation"], sort=False):
        cat = Category.from_family(family, operation)
        src = sources[(sources["category"] == family) & (sources["operation"] == operation)]
        algorithms = sorted(
            {
                ":".join(p for p in (row.algorithm, row.mode) if p)
                for row in src.itertuples(index=False)
            }
        )
        meta = {"category": cat.key, "algorithms": algorithms, "aggregator": aggregator}
        out[cat] = MeasurementDataset(
            group["x"].to_numpy(), group["elapsed_ns"].to_numpy(), unit="ns", meta=meta
        )
    return out
