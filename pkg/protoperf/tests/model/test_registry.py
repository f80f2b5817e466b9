import json

from numpy.testing import assert_allclose
import pytest

from protoperf.datasets import reference
from protoperf.model.data import MeasurementDataset
from protoperf.model.fit import fit_cubic
from protoperf.model.polynomial import PolynomialModel, eval_model
from protoperf.model.registry import (
    ModelRegistry,
    registry_from_dict,
    registry_load,
    registry_save,
)
from protoperf.shared.category import REGISTRY_KEYS, Category
from protoperf.shared.exceptions import RegistryFormatError


def _entries(unit="ns"):
    return {
        key: {"coefficients": [float(i + 1), 0.5, 0.0, 0.0], "unit": unit}
        for i, key in enumerate(REGISTRY_KEYS)
    }


def test_reference_load():
    reg = reference.load()
    assert reg.unit == "paper-units"
    assert len(reg) == 5
    assert list(reg) == list(Category)
    assert reg["hash.digest"] is reg[Category.Hash]
    assert reg["hash"] is reg["hash.digest"]
    assert "Cryptlib" in reference.DESCR


def test_round_trip(tmp_path):
    reg = reference.load()
    path = tmp_path / "registry.json"
    registry_save(reg, path)
    loaded = registry_load(path)
    assert loaded == reg
    for cat in Category:
        assert loaded[cat].coefficients == reg[cat].coefficients
    assert path.read_bytes().endswith(b"}\n")
    assert b"\r\n" not in path.read_bytes()


def test_fitted_provenance_round_trip(tmp_path):
    data = MeasurementDataset([1, 2, 3, 4, 5], [3, 5, 7, 9, 11])
    model, _ = fit_cubic(data)
    reg = ModelRegistry({cat: model for cat in Category})
    path = tmp_path / "registry.json"
    registry_save(reg, path)
    content = json.loads(path.read_text())
    assert content["hash.digest"]["fitted_on"]["digest"] == data.digest
    loaded = registry_load(path)
    assert loaded["senc"].fitted_on.nobs == 5


def test_missing_key():
    entries = _entries()
    del entries["hash.digest"]
    with pytest.raises(RegistryFormatError, match="hash.digest"):
        registry_from_dict(entries)


def test_partial():
    entries = _entries()
    del entries["hash.digest"]
    models = registry_from_dict(entries, partial=True)
    assert Category.Hash not in models
    assert len(models) == 4


def test_partial_save(tmp_path):
    path = tmp_path / "partial.json"
    models = {Category.Hash: PolynomialModel(1.0, 2.0, 0.0, 0.0)}
    registry_save(models, path)
    assert list(json.loads(path.read_text())) == ["hash.digest"]
    loaded = registry_load(path, partial=True)
    assert loaded == models
    with pytest.raises(RegistryFormatError):
        registry_load(path)


def test_partial_save_mixed_units(tmp_path):
    models = {
        Category.Hash: PolynomialModel(1.0, 2.0, 0.0, 0.0, unit="ns"),
        Category.SymmetricEncrypt: PolynomialModel(1.0, 2.0, 0.0, 0.0, unit="ms"),
    }
    with pytest.raises(RegistryFormatError, match="unit"):
        registry_save(models, tmp_path / "mixed.json")


@pytest.mark.parametrize(
    "coefficients",
    [[1.0, 2.0, 3.0], [1.0, 2.0, 3.0, 4.0, 5.0], [1.0, "2", 3.0, 4.0], "1,2,3,4", None],
)
def test_malformed_coefficients(coefficients):
    entries = _entries()
    entries["symmetric.encrypt"]["coefficients"] = coefficients
    with pytest.raises(RegistryFormatError, match="symmetric.encrypt"):
        registry_from_dict(entries)


def test_unknown_unit():
    entries = _entries()
    entries["symmetric.encrypt"]["unit"] = "seconds"
    with pytest.raises(RegistryFormatError, match="unit"):
        registry_from_dict(entries)


def test_mixed_units():
    entries = _entries()
    entries["symmetric.encrypt"]["unit"] = "us"
    with pytest.raises(RegistryFormatError, match="share a unit"):
        registry_from_dict(entries)


def test_unknown_key():
    entries = _entries()
    entries["symmetric.sign"] = entries["hash.digest"]
    with pytest.raises(RegistryFormatError, match="symmetric.sign"):
        registry_from_dict(entries)


def test_not_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(RegistryFormatError, match="not valid JSON"):
        registry_load(path)


def test_scaled():
    reg = reference.load()
    scaled = reg.scaled(3.0)
    for cat in Category:
        assert_allclose(eval_model(scaled[cat], 100), 3.0 * eval_model(reg[cat], 100))
    with pytest.raises(ValueError):
        reg.scaled(0.0)
    with pytest.raises(ValueError):
        reg.scaled(-1.0)


def test_replace():
    reg = registry_from_dict(_entries())
    model = PolynomialModel(9.0, 0.0, 0.0, 0.0)
    updated = reg.replace("hash", model)
    assert updated[Category.Hash] == model
    assert reg[Category.Hash] != model
    assert updated["senc"] == reg["senc"]


def test_constructor_errors():
    with pytest.raises(TypeError):
        ModelRegistry({cat: (1.0, 2.0, 3.0, 4.0) for cat in Category})
    with pytest.raises(RegistryFormatError, match="missing"):
        ModelRegistry({Category.Hash: PolynomialModel(1.0, 0.0, 0.0, 0.0)})
    assert "ModelRegistry(unit='ns'" in repr(registry_from_dict(_entries()))
