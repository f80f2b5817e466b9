"""
Registry of the five category cost models and its JSON representation

The registry file is a JSON object with one entry per category::

    {
      "symmetric.encrypt": {"coefficients": [a1, a2, a3, a4], "unit": "ns"},
      "symmetric.decrypt": {...},
      "hash.digest": {...},
      "asymmetric.encrypt": {...},
      "asymmetric.decrypt": {...}
    }

Coefficients are stored constant term FIRST, ``[alpha1, alpha2, alpha3,
alpha4]``, the reverse of the usual highest-power-first printed order.
An optional ``"fitted_on"`` object records the digest and size of the
estimation dataset.
"""
import json
import math
from typing import Any, Dict, Iterator, Mapping, Optional, Union

from protoperf.model.polynomial import UNITS, FitProvenance, PolynomialModel
from protoperf.shared.category import REGISTRY_KEYS, Category, category_from_string
from protoperf.shared.exceptions import RegistryFormatError
from protoperf.shared.typed_getters import get_float_list, get_int, get_mapping, get_string
from protoperf.typing import PathLike

__all__ = ["ModelRegistry", "registry_load", "registry_save", "registry_from_dict"]

CategoryKey = Union[Category, str]


class ModelRegistry(Mapping[Category, PolynomialModel]):
    """
    The five category cost models used by the estimator

    Parameters
    ----------
    models : Mapping[{Category, str}, PolynomialModel]
        One model per category. Keys may be categories or registry keys such
        as ``"hash.digest"``.

    Raises
    ------
    RegistryFormatError
        If a category is missing or the units differ between entries
    """

    def __init__(self, models: Mapping[CategoryKey, PolynomialModel]) -> None:
        resolved: Dict[Category, PolynomialModel] = {}
        for key, model in models.items():
            cat = key if isinstance(key, Category) else category_from_string(key)
            if not isinstance(model, PolynomialModel):
                raise TypeError(f"{cat.key} must be a PolynomialModel")
            resolved[cat] = model
        missing = [c.key for c in Category if c not in resolved]
        if missing:
            raise RegistryFormatError(
                "Registry is missing models for: " + ", ".join(missing)
            )
        units = {m.unit for m in resolved.values()}
        if len(units) != 1:
            raise RegistryFormatError(
                "All registry models must share a unit, found: "
                + ", ".join(sorted(units))
            )
        self._models = {c: resolved[c] for c in Category}
        self._unit = units.pop()

    @property
    def unit(self) -> str:
        """Time unit shared by all models"""
        return self._unit

    def __getitem__(self, key: CategoryKey) -> PolynomialModel:
        cat = key if isinstance(key, Category) else category_from_string(key)
        return self._models[cat]

    def __iter__(self) -> Iterator[Category]:
        return iter(self._models)

    def __len__(self) -> int:
        return len(self._models)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModelRegistry):
            return NotImplemented
        return self._models == other._models

    def __repr__(self) -> str:
        rows = ", ".join(
            "{0}={1}".format(c.key, list(m.coefficients)) for c, m in self._models.items()
        )
        return f"ModelRegistry(unit={self._unit!r}, {rows})"

    def replace(self, category: CategoryKey, model: PolynomialModel) -> "ModelRegistry":
        """Copy of the registry with one model replaced"""
        models: Dict[CategoryKey, PolynomialModel] = dict(self._models)
        cat = category if isinstance(category, Category) else category_from_string(category)
        models[cat] = model
        return ModelRegistry(models)

    def scaled(self, c: float) -> "ModelRegistry":
        """
        Registry with every coefficient of every model multiplied by c

        Parameters
        ----------
        c : float
            Strictly positive scale

        Returns
        -------
        ModelRegistry
            Rescaled registry. Comparative verdicts are unchanged.
        """
        if not c > 0:
            raise ValueError("c must be strictly positive")
        return ModelRegistry({k: m.scaled(c) for k, m in self._models.items()})

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready representation"""
        return _models_to_dict(self._models)


def _models_to_dict(models: Mapping[Category, PolynomialModel]) -> Dict[str, Any]:
    out: Dict[str, Any] = {}
    for cat in Category:
        if cat not in models:
            continue
        model = models[cat]
        entry: Dict[str, Any] = {
            "coefficients": list(model.coefficients),
            "unit": model.unit,
        }
        if model.fitted_on is not None:
            entry["fitted_on"] = model.fitted_on.to_dict()
        out[cat.key] = entry
    return out


def _model_from_entry(key: str, entry: Any) -> PolynomialModel:
    if not isinstance(entry, Mapping):
        raise RegistryFormatError(f"{key}: entry must be a JSON object")
    try:
        coefficients = get_float_list(entry, "coefficients")
        unit = get_string(entry, "unit")
        fitted = get_mapping(entry, "fitted_on")
    except TypeError as exc:
        raise RegistryFormatError(f"{key}: {exc}")
    if coefficients is None or len(coefficients) != 4:
        raise RegistryFormatError(
            f"{key}: coefficients must be an array of 4 numbers [a1, a2, a3, a4]"
        )
    if not all(math.isfinite(c) for c in coefficients):
        raise RegistryFormatError(f"{key}: coefficients must be finite")
    if unit not in UNITS:
        raise RegistryFormatError(
            f"{key}: unknown unit label {unit!r}. Must be one of " + ", ".join(UNITS)
        )
    provenance: Optional[FitProvenance] = None
    if fitted:
        try:
            digest = get_string(fitted, "digest")
            nobs = get_int(fitted, "nobs")
        except TypeError as exc:
            raise RegistryFormatError(f"{key}: fitted_on: {exc}")
        if digest is not None and nobs is not None:
            provenance = FitProvenance(digest=digest, nobs=nobs)
    a1, a2, a3, a4 = coefficients
    return PolynomialModel(a1, a2, a3, a4, unit=unit, fitted_on=provenance)


def registry_from_dict(d: Mapping[str, Any], partial: bool = False):
    """
    Build a registry from its JSON representation

    Parameters
    ----------
    d : Mapping[str, Any]
        Parsed registry JSON
    partial : bool
        If True, return a plain ``dict[Category, PolynomialModel]`` with the
        entries present instead of requiring all five

    Returns
    -------
    {ModelRegistry, dict}
        The registry, or the present entries when ``partial`` is True
    """
    if not isinstance(d, Mapping):
        raise RegistryFormatError("Registry must be a JSON object")
    unknown = [k for k in d if k not in REGISTRY_KEYS]
    if unknown:
        raise RegistryFormatError("Unknown registry keys: " + ", ".join(unknown))
    models = {}
    for key in REGISTRY_KEYS:
        if key not in d:
            if partial:
                continue
            raise RegistryFormatError(f"Registry is missing the {key} entry")
        models[category_from_string(key)] = _model_from_entry(key, d[key])
    if partial:
        return models
    return ModelRegistry(models)


def registry_load(path: PathLike, partial: bool = False):
    """
    Load a registry JSON file

    Parameters
    ----------
    path : str
        Location of the registry file
    partial : bool
        If True, return the entries present as a
        ``dict[Category, PolynomialModel]`` instead of requiring all five

    Returns
    -------
    {ModelRegistry, dict}
        The loaded registry

    Raises
    ------
    RegistryFormatError
        If a category key is missing, a coefficient array is malformed, a
        unit label is unknown or units differ between entries
    """
    with open(path, "r", encoding="utf-8") as f:
        try:
            content = json.load(f)
        except json.JSONDecodeError as exc:
            raise RegistryFormatError(f"{path} is not valid JSON: {exc}")
    return registry_from_dict(content, partial=partial)


def registry_save(
    registry: Union[ModelRegistry, Mapping[Category, PolynomialModel]], path: PathLike
) -> None:
    """
    Write a registry to a JSON file

    Parameters
    ----------
    registry : {ModelRegistry, Mapping[Category, PolynomialModel]}
        The registry to save. A plain mapping may hold a subset of the
        categories and is written as a partial registry.
    path : str
        Destination

    Notes
    -----
    Coefficients are written with ``repr`` precision so that loading
    reproduces them exactly.
    """
    if isinstance(registry, ModelRegistry):
        content = registry.to_dict()
    else:
        units = {m.unit for m in registry.values()}
        if len(units) > 1:
            raise RegistryFormatError(
                "All registry models must share a unit, found: " + ", ".join(sorted(units))
            )
        content = _models_to_dict(registry)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(content, f, indent=2)
        f.write("\n")
