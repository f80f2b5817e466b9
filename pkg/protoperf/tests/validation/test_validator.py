import warnings

import numpy as np
from numpy.testing import assert_allclose
import pandas as pd
import pytest

from protoperf import cli
from protoperf.bench.backends import DEFAULT_COSTS, SyntheticBackend, get_backend
from protoperf.bench.harness import sweep
from protoperf.bench.spec import SweepConfig, parse_spec
from protoperf.datasets import reference
from protoperf.generator.config import GenConfig
from protoperf.generator.corpus import generate_corpus
from protoperf.model.fit import fit_cubic
from protoperf.model.registry import ModelRegistry
from protoperf.protocol.model import CryptoOp, Protocol, ProtocolStep
from protoperf.shared.category import Category
from protoperf.shared.exceptions import EmptyReportError, UnitMismatchWarning
from protoperf.validation.validator import (
    SWEEP_COLUMNS,
    environment,
    measure_corpus,
    run_validation,
    size_sweep_error,
    write_sweep,
)

# symmetric encryption and hashing only, whose synthetic costs are whole nanoseconds
SENC_HASH = GenConfig(kind_weights={"senc": 1.0, "hash": 1.0})


@pytest.fixture
def backend():
    return SyntheticBackend()


@pytest.fixture
def cfg():
    return SweepConfig(repetitions=3, warmup=0)


@pytest.fixture(scope="module")
def matched():
    """Registry holding the exact synthetic costs"""
    return ModelRegistry(DEFAULT_COSTS)


def _chain(id, n_ops, size=80):
    ops = tuple(CryptoOp("senc", size) for _ in range(n_ops))
    return Protocol(id, (ProtocolStep("A", "B", ops),))


def test_dominance(backend, cfg, matched):
    corpus = [_chain(f"p{k}", k) for k in range(1, 9)]
    report = run_validation(corpus, matched, backend, cfg)
    assert report.pairs_total == 8 * 7
    assert report.pairs_retained == 8 * 7
    assert report.agreement_rate == 1.0
    assert report.mean_abs_ratio_deviation_pct == 0.0


def test_dominance_reference_registry(backend, cfg):
    corpus = [_chain(f"p{k}", k) for k in range(1, 6)]
    with pytest.warns(UnitMismatchWarning):
        report = run_validation(corpus, reference.load(), backend, cfg)
    assert report.agreement_rate == 1.0
    assert report.to_dict()["estimate_unit"] == "paper-units"


def test_generated_corpus(backend, cfg, matched):
    corpus = generate_corpus(17, 60)
    report = run_validation(corpus, matched, backend, cfg)
    assert report.pairs_total == 60 * 59
    assert report.agreement_rate == 1.0
    records = report.records
    # each measurement is within 1 ns of its estimate
    est_p = records["est_p"].to_numpy()
    est_q = records["est_q"].to_numpy()
    bound = 100.0 * (est_p + est_q) / (est_q * (est_p - 1.0))
    assert np.all(records["abs_ratio_deviation_pct"].to_numpy() <= bound)
    assert report.mean_abs_ratio_deviation_pct <= bound.max()
    assert_allclose(records["meas_p_ns"], est_p, atol=1.0)
    assert list(records["p_id"]) == sorted(records["p_id"])


def test_each_protocol_measured_once(backend, cfg, matched):
    corpus = generate_corpus(5, 20, SENC_HASH)
    report = run_validation(corpus, matched, backend, cfg)
    records = report.records.set_index(["p_id", "q_id"])
    eps = np.finfo(np.float64).eps
    for (p, q), row in records.iterrows():
        reverse = records.loc[(q, p)]
        assert row["meas_p_ns"] == reverse["meas_q_ns"]
        assert row["meas_q_ns"] == reverse["meas_p_ns"]
        assert row["meas_ratio"] == row["meas_p_ns"] / row["meas_q_ns"]
        # two correctly rounded quotients and one product: within 1.5 ulp of 1
        product = row["meas_ratio"] * reverse["meas_ratio"]
        assert abs(product - 1.0) <= 1.5 * eps


def test_order_independent(backend, cfg, matched):
    corpus = generate_corpus(5, 20, SENC_HASH)
    a = run_validation(corpus, matched, backend, cfg)
    b = run_validation(list(reversed(corpus)), matched, SyntheticBackend(), cfg)
    pd.testing.assert_frame_equal(a.records, b.records)


def test_identical_protocols(backend, cfg, matched):
    corpus = [_chain("p0", 2), _chain("p1", 2)]
    with pytest.raises(EmptyReportError):
        run_validation(corpus, matched, backend, cfg)
    report = run_validation(corpus, matched, backend, cfg, min_sep_pct=0.0)
    assert report.pairs_retained == 2
    assert report.decisive_pairs == 0
    assert report.mean_abs_ratio_deviation_pct == 0.0
    with pytest.warns(RuntimeWarning):
        assert np.isnan(report.agreement_rate)


def test_invalid_arguments(backend, cfg, matched):
    with pytest.raises(ValueError, match="two protocols"):
        run_validation([_chain("p0", 1)], matched, backend, cfg)
    with pytest.raises(ValueError, match="min_sep_pct"):
        run_validation([_chain("p0", 1), _chain("p1", 2)], matched, backend, cfg, -1.0)
    with pytest.raises(ValueError, match="Duplicate"):
        measure_corpus([_chain("p0", 1), _chain("p0", 2)], backend, cfg)


def test_no_unit_warning_for_ns(backend, cfg, matched):
    corpus = [_chain("p0", 1), _chain("p1", 2)]
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        run_validation(corpus, matched, backend, cfg)


def test_environment(backend, cfg):
    env = environment(backend, cfg)
    assert env["backend"] == "synthetic"
    assert env["timing"] == "virtual"
    assert env["repetitions"] == 3
    assert env["aggregator"] == "median"
    for key in ("platform", "machine", "python", "numpy", "pandas", "batch", "seed"):
        assert key in env


def test_size_sweep_matched(backend, cfg, matched):
    rows = size_sweep_error([10, 80, 300], SENC_HASH, matched, backend, cfg, n=30)
    assert [size for size, _ in rows] == [10, 80, 300]
    assert_allclose([dev for _, dev in rows], 0.0, atol=1e-9)


def test_size_sweep_identical_protocols(backend, cfg, matched):
    template = GenConfig(
        steps_range=(1, 1), ops_per_step_range=(1, 1), kind_weights={"hash": 1.0}
    )
    with pytest.raises(EmptyReportError):
        size_sweep_error([80], template, matched, backend, cfg, n=5)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        rows = size_sweep_error([80], template, matched, backend, cfg, n=5, min_sep_pct=0.0)
    assert rows == [(80, 0.0)]


def test_size_sweep_mismatched(backend, cfg, matched):
    # hashing estimated with the cost of symmetric encryption
    skewed = matched.replace("hash", DEFAULT_COSTS[Category.SymmetricEncrypt])
    rows = size_sweep_error([16, 1024], SENC_HASH, skewed, backend, cfg, n=30)
    assert all(np.isfinite(dev) and dev > 0 for _, dev in rows)


def test_size_sweep_empty(backend, cfg, matched):
    with pytest.raises(ValueError, match="payload_sizes"):
        size_sweep_error([], SENC_HASH, matched, backend, cfg)


def test_write_sweep(tmp_path):
    path = tmp_path / "sweep.csv"
    frame = write_sweep([(10, 7.12), (80, float("nan"))], path)
    assert list(frame.columns) == SWEEP_COLUMNS
    lines = path.read_text().splitlines()
    assert lines[0] == "payload_bytes,mean_abs_ratio_deviation_pct"
    assert lines[1] == "10,7.1200000000000001"
    assert lines[2] == "80,"
    assert write_sweep([(10, 1.0)], None).shape == (1, 2)


@pytest.mark.slow
def test_cryptography_acceptance():
    pytest.importorskip("cryptography")
    backend = get_backend("cryptography")
    cfg = SweepConfig(repetitions=5, warmup=1)
    models = {}
    for text in cli.REPLICATE_SPECS:
        spec = parse_spec(text)
        models[spec.category], _ = fit_cubic(sweep(backend, spec, cfg))
    reg = ModelRegistry(models)

    report = run_validation(generate_corpus(2008, 100), reg, backend, cfg)
    assert report.agreement_rate >= 0.90
    assert report.mean_abs_ratio_deviation_pct <= 15.0

    rows = dict(size_sweep_error([10, 300], GenConfig(), reg, backend, cfg, n=100))
    assert rows[10] > rows[300]
