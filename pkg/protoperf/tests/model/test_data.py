import numpy as np
from numpy.testing import assert_equal
import pytest

from protoperf.model.data import MeasurementDataset, pool_datasets


def test_dataset():
    data = MeasurementDataset([1, 2, 2, 4], [10.0, 20.0, 21.0, 40.0], meta={"backend": "x"})
    assert data.nobs == 4
    assert len(data) == 4
    assert data.n_distinct == 3
    assert data.unit == "ns"
    assert data.samples == [(1.0, 10.0), (2.0, 20.0), (2.0, 21.0), (4.0, 40.0)]
    assert list(data.to_frame().columns) == ["x", "y"]
    assert "nobs=4" in repr(data)
    meta = data.meta
    meta["backend"] = "changed"
    assert data.meta["backend"] == "x"
    with pytest.raises(ValueError):
        data.x[0] = 5


def test_from_samples():
    data = MeasurementDataset.from_samples([(1, 2), (3, 4)], unit="us")
    assert_equal(data.x, [1.0, 3.0])
    assert_equal(data.y, [2.0, 4.0])
    assert data.unit == "us"


def test_digest():
    a = MeasurementDataset([1, 2], [3, 4])
    b = MeasurementDataset([1, 2], [3, 4])
    c = MeasurementDataset([1, 2], [3, 5])
    d = MeasurementDataset([1, 2], [3, 4], unit="ms")
    assert a.digest == b.digest
    assert a.digest != c.digest
    assert a.digest != d.digest


@pytest.mark.parametrize(
    "x, y",
    [([1, 2], [1]), ([1, -2], [1, 2]), ([1, 2], [1, -2]), ([1, np.nan], [1, 2]), ([1], [np.inf])],
)
def test_invalid(x, y):
    with pytest.raises(ValueError):
        MeasurementDataset(x, y)


def test_invalid_unit():
    with pytest.raises(ValueError, match="unit"):
        MeasurementDataset([1], [1], unit="s")


def test_pool():
    a = MeasurementDataset([1, 2], [3, 4], meta={"algorithm": "aes"})
    b = MeasurementDataset([1, 5], [6, 7], meta={"algorithm": "camellia"})
    pooled = pool_datasets([a, b])
    assert_equal(pooled.x, [1, 2, 1, 5])
    assert_equal(pooled.y, [3, 4, 6, 7])
    assert pooled.n_distinct == 3
    assert pooled.meta["sources"] == [{"algorithm": "aes"}, {"algorithm": "camellia"}]
    pooled = pool_datasets([a, b], meta={"category": "symmetric.encrypt"})
    assert pooled.meta == {"category": "symmetric.encrypt"}


def test_pool_errors():
    with pytest.raises(ValueError):
        pool_datasets([])
    a = MeasurementDataset([1], [1])
    b = MeasurementDataset([1], [1], unit="us")
    with pytest.raises(ValueError, match="unit"):
        pool_datasets([a, b])
