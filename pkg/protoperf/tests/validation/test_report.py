import json

import numpy as np
from numpy.testing import assert_allclose
import pytest

from protoperf.estimator.estimate import Faster
from protoperf.shared.exceptions import EmptyReportError
from protoperf.validation.report import (
    RECORD_COLUMNS,
    REFERENCE_ANCHORS,
    ValidationReport,
    pair_records,
)


@pytest.fixture
def records():
    ids = ["a", "b", "c", "d"]
    est = np.array([1.0, 2.0, 2.0, 4.0])
    meas = np.array([10.0, 30.0, 20.0, 30.0])
    return pair_records(ids, est, meas, 1e-9)


def _row(frame, p, q):
    sel = frame[(frame["p_id"] == p) & (frame["q_id"] == q)]
    assert sel.shape[0] == 1
    return sel.iloc[0]


def test_pair_records(records):
    assert list(records.columns) == RECORD_COLUMNS
    assert records.shape[0] == 12
    assert list(records["p_id"][:3]) == ["a", "a", "a"]
    assert list(records["q_id"][:3]) == ["b", "c", "d"]

    ab = _row(records, "a", "b")
    assert ab["predicted_faster"] == "P"
    assert ab["agree"]
    assert_allclose(ab["est_ratio"], 0.5)
    assert_allclose(ab["meas_ratio"], 1 / 3)
    assert_allclose(ab["meas_sep_pct"], 200.0)
    assert_allclose(ab["abs_ratio_deviation_pct"], 50.0)

    bc = _row(records, "b", "c")
    assert bc["predicted_faster"] == "TIE"
    assert not bc["agree"]
    assert_allclose(bc["meas_sep_pct"], 50.0)

    # equal measurements: separation 0 and a measured tie never agrees
    bd = _row(records, "b", "d")
    assert bd["predicted_faster"] == "P"
    assert bd["meas_sep_pct"] == 0.0
    assert not bd["agree"]


def test_orientation(records):
    for row in records.itertuples(index=False):
        other = _row(records, row.q_id, row.p_id)
        product = row.meas_ratio * other["meas_ratio"]
        assert abs(product - 1.0) <= 1.5 * np.finfo(np.float64).eps
        assert row.meas_sep_pct == other["meas_sep_pct"]
        assert Faster(row.predicted_faster).opposite.value == other["predicted_faster"]
        assert row.agree == other["agree"]


def test_zero_cases():
    records = pair_records(["a", "b"], np.array([0.0, 1.0]), np.array([0.0, 5.0]), 1e-9)
    ab = _row(records, "a", "b")
    assert np.isinf(ab["meas_sep_pct"])
    ba = _row(records, "b", "a")
    assert np.isnan(ba["est_ratio"])
    assert np.isinf(ba["meas_ratio"])


def test_report(records):
    report = ValidationReport(records, min_sep_pct=5.0, environment={"backend": "synthetic"})
    assert report.pairs_total == 12
    # b-d and d-b are not separated
    assert report.pairs_retained == 10
    assert report.retained.shape[0] == 10
    # b-c and c-b are predicted ties
    assert report.decisive_pairs == 8
    retained = report.retained
    decisive = retained[retained["predicted_faster"] != "TIE"]
    assert_allclose(report.agreement_rate, decisive["agree"].mean())
    assert_allclose(
        report.mean_abs_ratio_deviation_pct, retained["abs_ratio_deviation_pct"].mean()
    )
    assert len(report.verdicts) == 10
    assert all(v.measured for v in report.verdicts)
    assert report.environment == {"backend": "synthetic"}


def test_refilter(records):
    report = ValidationReport(records, min_sep_pct=0.0)
    assert report.pairs_retained == 12
    stricter = report.refilter(60.0)
    # a-b 200%, a-c 100%, a-d 200% and their reverses
    assert stricter.pairs_retained == 6
    assert stricter.records is report.records
    assert stricter.agreement_rate == 1.0
    with pytest.raises(EmptyReportError, match="12 pairs evaluated"):
        report.refilter(1000.0)
    with pytest.raises(ValueError):
        report.refilter(-1.0)


def test_all_ties_warns():
    records = pair_records(["a", "b"], np.array([2.0, 2.0]), np.array([10.0, 20.0]), 1e-9)
    report = ValidationReport(records)
    assert report.decisive_pairs == 0
    with pytest.warns(RuntimeWarning, match="undefined"):
        assert np.isnan(report.agreement_rate)


def test_missing_columns(records):
    with pytest.raises(ValueError, match="agree"):
        ValidationReport(records.drop(columns=["agree"]))


def test_to_dict_and_write(records, tmp_path):
    report = ValidationReport(records, environment={"backend": "synthetic"}, unit="paper-units")
    d = report.to_dict()
    assert d["pairs_total"] == 12
    assert d["estimate_unit"] == "paper-units"
    assert d["reference_anchors"] == REFERENCE_ANCHORS
    paths = report.write(tmp_path / "out")
    assert paths["report"].name == "report.csv"
    summary = json.loads(paths["summary"].read_text())
    assert summary["pairs_retained"] == 10
    assert_allclose(summary["agreement_rate"], report.agreement_rate)
    lines = paths["report"].read_text().splitlines()
    assert len(lines) == 11
    assert lines[0].startswith("p_id,q_id,est_p,est_q,est_ratio,predicted_faster")


def test_to_dict_nan_is_null(tmp_path):
    records = pair_records(["a", "b"], np.array([2.0, 2.0]), np.array([10.0, 20.0]), 1e-9)
    report = ValidationReport(records)
    with pytest.warns(RuntimeWarning):
        paths = report.write(tmp_path)
    assert json.loads(paths["summary"].read_text())["agreement_rate"] is None


def test_summary(records):
    report = ValidationReport(records, environment={"backend": "synthetic"})
    text = str(report.summary)
    assert "Estimated vs. Measured Protocol Ordering" in text
    assert "Ratio Deviation Distribution" in text
    assert "Measured Protocol Time" in text
    assert "10 ns" in text
    assert "25 ns" in text
    assert "30 ns" in text
    assert "synthetic" in text
    assert "ValidationReport" in repr(report)
