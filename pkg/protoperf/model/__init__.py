from protoperf.model.data import MeasurementDataset, pool_datasets
from protoperf.model.fit import COND_LIMIT, CubicFitResults, FitStats, fit_cubic, fit_error
from protoperf.model.polynomial import (
    UNITS,
    FitProvenance,
    PolynomialModel,
    derivative,
    eval_model,
    eval_power_form,
    is_increasing,
)
from protoperf.model.registry import (
    ModelRegistry,
    registry_from_dict,
    registry_load,
    registry_save,
)

__all__ = [
    "COND_LIMIT",
    "UNITS",
    "CubicFitResults",
    "FitProvenance",
    "FitStats",
    "MeasurementDataset",
    "ModelRegistry",
    "PolynomialModel",
    "derivative",
    "eval_model",
    "eval_power_form",
    "fit_cubic",
    "fit_error",
    "is_increasing",
    "pool_datasets",
    "registry_from_dict",
    "registry_load",
    "registry_save",
]
