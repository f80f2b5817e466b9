from numpy.testing import assert_allclose
import pytest

from protoperf import datasets
from protoperf.datasets import reference
from protoperf.model.registry import ModelRegistry
from protoperf.shared.category import Category


def test_reference():
    reg = reference.load()
    assert isinstance(reg, ModelRegistry)
    assert len(reg) == 5
    assert set(reg) == set(Category)
    assert reg.unit == "paper-units"
    assert_allclose(
        reg[Category.Hash].coefficients,
        [3.852945249, 0.01700037541, -2.754241881e-07, 1.522749902e-11],
    )


def test_reference_descr():
    assert "paper-units" in reference.DESCR
    for cat in Category:
        assert cat.value in reference.DESCR


def test_load_missing(tmp_path):
    with pytest.raises(OSError):
        datasets.load(str(tmp_path / "module.py"), "registry.json")
