"""
Cubic cost curve of one algorithm category
"""
from dataclasses import dataclass, field, replace
from fractions import Fraction
import math
from typing import Any, Dict, Optional, Tuple, Union, overload

import numpy as np

from protoperf.typing import NDArray, Numeric

__all__ = [
    "UNITS",
    "FitProvenance",
    "PolynomialModel",
    "eval_model",
    "eval_power_form",
    "derivative",
    "is_increasing",
]

UNITS = ("ns", "us", "ms", "paper-units")


@dataclass(frozen=True)
class FitProvenance:
    """Digest and size of the dataset a model was fitted on"""

    digest: str
    nobs: int

    def to_dict(self) -> Dict[str, Any]:
        return {"digest": self.digest, "nobs": self.nobs}


@dataclass(frozen=True)
class PolynomialModel:
    r"""
    Cubic cost model

    Parameters
    ----------
    alpha1 : float
        Constant term
    alpha2 : float
        Coefficient of ``x``
    alpha3 : float
        Coefficient of ``x**2``
    alpha4 : float
        Coefficient of ``x**3``
    unit : str
        Time unit of the model output. One of "ns", "us", "ms" or
        "paper-units".
    fitted_on : FitProvenance, optional
        Dataset the model was estimated from

    Notes
    -----
    The model is

    .. math::

      f(x) = \alpha_4 x^3 + \alpha_3 x^2 + \alpha_2 x + \alpha_1

    where ``x`` is the payload size in bytes for symmetric and hash
    categories and the key size in bits for asymmetric categories.
    """

    alpha1: float
    alpha2: float
    alpha3: float
    alpha4: float
    unit: str = "ns"
    fitted_on: Optional[FitProvenance] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        for name in ("alpha1", "alpha2", "alpha3", "alpha4"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(
                value, (int, float, np.integer, np.floating)
            ):
                raise TypeError(f"{name} must be a real number")
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, float(value))
        if self.unit not in UNITS:
            raise ValueError(
                f"Unknown unit label {self.unit!r}. Must be one of "
                + ", ".join(UNITS)
            )

    @classmethod
    def from_coefficients(
        cls,
        coefficients: Tuple[Numeric, Numeric, Numeric, Numeric],
        unit: str = "ns",
        fitted_on: Optional[FitProvenance] = None,
    ) -> "PolynomialModel":
        """
        Construct from coefficients ordered constant term first

        Parameters
        ----------
        coefficients : tuple[float, float, float, float]
            ``(alpha1, alpha2, alpha3, alpha4)``
        unit : str
            Time unit label
        fitted_on : FitProvenance, optional
            Dataset provenance
        """
        coefficients = tuple(coefficients)
        if len(coefficients) != 4:
            raise ValueError(
                f"A cubic model requires exactly 4 coefficients, got {len(coefficients)}"
            )
        a1, a2, a3, a4 = coefficients
        return cls(a1, a2, a3, a4, unit=unit, fitted_on=fitted_on)

    @property
    def coefficients(self) -> Tuple[float, float, float, float]:
        """Coefficients ordered constant term first"""
        return self.alpha1, self.alpha2, self.alpha3, self.alpha4

    def scaled(self, c: float) -> "PolynomialModel":
        """Model with every coefficient multiplied by c"""
        return replace(
            self,
            alpha1=c * self.alpha1,
            alpha2=c * self.alpha2,
            alpha3=c * self.alpha3,
            alpha4=c * self.alpha4,
        )

    def __call__(self, x: Union[Numeric, NDArray]) -> Union[float, NDArray]:
        return eval_model(self, x)


def _check_x(x: Union[Numeric, NDArray]) -> None:
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("x must be finite")
    if np.any(arr < 0):
        raise ValueError("x must be non-negative")


@overload
def eval_model(model: PolynomialModel, x: Numeric) -> float:
    ...


@overload
def eval_model(model: PolynomialModel, x: NDArray) -> NDArray:
    ...


def eval_model(model, x):
    """
    Evaluate a cost model

    Parameters
    ----------
    model : PolynomialModel
        The model to evaluate
    x : {float, ndarray}
        Non-negative, finite input size(s)

    Returns
    -------
    {float, ndarray}
        Model cost in the model's unit. No clamping is applied so
        pathological coefficients can produce negative values.
    """
    _check_x(x)
    a1, a2, a3, a4 = model.coefficients
    if np.ndim(x) == 0:
        x = float(x)
        return ((a4 * x + a3) * x + a2) * x + a1
    xa = np.asarray(x, dtype=float)
    return ((a4 * xa + a3) * xa + a2) * xa + a1


def eval_power_form(model: PolynomialModel, x: Numeric) -> float:
    """Naive power-form evaluation used to cross-check eval_model"""
    _check_x(x)
    x = float(x)
    return model.alpha4 * x ** 3 + model.alpha3 * x ** 2 + model.alpha2 * x + model.alpha1


def derivative(model: PolynomialModel, x: Numeric) -> float:
    """
    First derivative of the cost curve, 3*alpha4*x**2 + 2*alpha3*x + alpha2
    """
    x = float(x)
    return (3 * model.alpha4 * x + 2 * model.alpha3) * x + model.alpha2


def is_increasing(model: PolynomialModel, lower: Numeric, upper: Numeric) -> bool:
    """
    Check that a model is strictly increasing on a closed interval

    Parameters
    ----------
    model : PolynomialModel
        Model to check
    lower : float
        Lower end of the interval
    upper : float
        Upper end of the interval

    Returns
    -------
    bool
        True if the derivative is strictly positive on [lower, upper]

    Notes
    -----
    The derivative is a quadratic so its minimum on the interval is attained
    at an end point or at the vertex. The check is carried out in exact
    rational arithmetic on the stored coefficients.
    """
    if upper < lower:
        raise ValueError("upper must be greater than or equal to lower")
    a = 3 * Fraction(model.alpha4)
    b = 2 * Fraction(model.alpha3)
    c = Fraction(model.alpha2)
    lo, hi = Fraction(lower), Fraction(upper)

    def d(v: Fraction) -> Fraction:
        return (a * v + b) * v + c

    candidates = [lo, hi]
    if a > 0:
        vertex = -b / (2 * a)
        if lo < vertex < hi:
            candidates.append(vertex)
    return all(d(v) > 0 for v in candidates)
