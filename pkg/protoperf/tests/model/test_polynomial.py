import numpy as np
from numpy.testing import assert_allclose
import pytest

from protoperf.datasets import reference
from protoperf.model.polynomial import (
    PolynomialModel,
    derivative,
    eval_model,
    eval_power_form,
    is_increasing,
)
from protoperf.shared.category import Category


@pytest.fixture(scope="module")
def reg():
    return reference.load()


def test_reference_values(reg):
    assert_allclose(eval_model(reg["senc"], 1024), 60.8866296, rtol=1e-6)
    assert_allclose(eval_model(reg["senc"], 80), 7.1589656012, rtol=1e-9)
    assert_allclose(eval_model(reg["hash"], 80), 5.2112203635, rtol=1e-9)
    assert eval_model(reg["hash"], 0) == 3.852945249
    assert_allclose(eval_model(reg["aenc"], 1024), 751.8828, rtol=1e-6)
    assert_allclose(eval_model(reg["adec"], 2048), 2.314e4, rtol=1e-4)


def test_reference_matches_power_form(reg):
    for cat in Category:
        for x in (0, 1, 80, 1024, 16384):
            assert_allclose(eval_model(reg[cat], x), eval_power_form(reg[cat], x), rtol=1e-12)


def test_reference_increasing(reg):
    for cat in Category:
        assert is_increasing(reg[cat], 0, 16384)


def test_vectorised():
    model = PolynomialModel(1.0, 2.0, 3.0, 4.0)
    x = np.array([0.0, 1.0, 2.0, 10.0])
    expected = np.array([eval_model(model, float(v)) for v in x])
    assert_allclose(eval_model(model, x), expected)
    assert_allclose(model(x), expected)
    assert eval_model(model, 1) == 10.0


def test_negative_and_nonfinite_x():
    model = PolynomialModel(1.0, 1.0, 0.0, 0.0)
    with pytest.raises(ValueError, match="non-negative"):
        eval_model(model, -1)
    with pytest.raises(ValueError, match="finite"):
        eval_model(model, np.inf)
    with pytest.raises(ValueError, match="non-negative"):
        eval_model(model, np.array([1.0, -2.0]))


def test_no_clamping():
    model = PolynomialModel(-5.0, 1.0, 0.0, 0.0)
    assert eval_model(model, 2) == -3.0


def test_validation():
    with pytest.raises(ValueError, match="finite"):
        PolynomialModel(np.nan, 0.0, 0.0, 0.0)
    with pytest.raises(TypeError):
        PolynomialModel("1", 0.0, 0.0, 0.0)
    with pytest.raises(TypeError):
        PolynomialModel(True, 0.0, 0.0, 0.0)
    with pytest.raises(ValueError, match="unit"):
        PolynomialModel(1.0, 0.0, 0.0, 0.0, unit="seconds")
    with pytest.raises(ValueError, match="4 coefficients"):
        PolynomialModel.from_coefficients((1.0, 2.0, 3.0))


def test_from_coefficients_order():
    model = PolynomialModel.from_coefficients((1, 2, 3, 4), unit="us")
    assert model.alpha1 == 1.0
    assert model.alpha4 == 4.0
    assert model.coefficients == (1.0, 2.0, 3.0, 4.0)
    assert model.unit == "us"


def test_scaled():
    model = PolynomialModel(1.0, 2.0, 3.0, 4.0)
    doubled = model.scaled(2.0)
    assert doubled.coefficients == (2.0, 4.0, 6.0, 8.0)
    assert_allclose(eval_model(doubled, 7), 2 * eval_model(model, 7))


def test_derivative():
    model = PolynomialModel(1.0, 2.0, 3.0, 4.0)
    assert derivative(model, 0) == 2.0
    assert derivative(model, 1) == 2.0 + 6.0 + 12.0


def test_is_increasing():
    assert is_increasing(PolynomialModel(0.0, 1.0, 0.0, 0.0), 0, 100)
    # minimum of the derivative inside the interval
    dipping = PolynomialModel(0.0, 1.0, -1.0, 0.1)
    assert derivative(dipping, 10 / 3) < 0
    assert not is_increasing(dipping, 0, 10)
    assert is_increasing(dipping, 10, 20)
    assert not is_increasing(PolynomialModel(5.0, 0.0, 0.0, 0.0), 0, 1)
    with pytest.raises(ValueError):
        is_increasing(dipping, 10, 0)
