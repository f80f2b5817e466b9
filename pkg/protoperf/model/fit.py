"""
Least-squares estimation of cubic cost models
"""
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Tuple

import numpy as np
from pandas import Series
from property_cached import cached_property
from statsmodels.iolib.summary import SimpleTable, fmt_2cols, fmt_params

from protoperf.model.data import MeasurementDataset
from protoperf.model.polynomial import FitProvenance, PolynomialModel, eval_model
from protoperf.shared.base import Summary, _SummaryStr
from protoperf.shared.exceptions import (
    DegenerateDesignError,
    IllConditionedError,
    NoScaleWarning,
)
from protoperf.shared.io import _str, coef_format, format_wide, pct_format
from protoperf.shared.linalg import condition_number, moment_matrix, solve_pivoted
from protoperf.typing import NDArray

__all__ = ["COND_LIMIT", "FitStats", "CubicFitResults", "fit_cubic", "fit_error"]

# Limit on the 2-norm condition number of the normal matrix built from the
# centred and scaled abscissae
COND_LIMIT = 1e12

DEGREE = 3
PARAM_NAMES = ["alpha1", "alpha2", "alpha3", "alpha4"]


@dataclass(frozen=True)
class FitStats:
    """
    Goodness-of-fit of a cost model on a dataset

    Attributes
    ----------
    rmse : float
        Root mean squared residual, in the dataset unit
    max_abs_residual : float
        Largest absolute residual
    percent_of_max : float
        ``100 * max_abs_residual / max(y)``. NaN when ``max(y) == 0``.
    residual_sum : float
        Sum of residuals, ~0 for a model fitted on the same data
    """

    rmse: float
    max_abs_residual: float
    percent_of_max: float
    residual_sum: float


def fit_error(model: PolynomialModel, data: MeasurementDataset) -> FitStats:
    """
    Measure how well a model describes a dataset

    Parameters
    ----------
    model : PolynomialModel
        Cost model
    data : MeasurementDataset
        Samples to compare against

    Returns
    -------
    FitStats
        Residual statistics

    Notes
    -----
    When every measured value is zero the relative error has no scale.
    ``percent_of_max`` is then NaN and a ``NoScaleWarning`` is issued.
    """
    if data.nobs == 0:
        raise ValueError("data must contain at least one sample")
    if model.unit != data.unit:
        raise ValueError(
            f"model unit ({model.unit}) does not match data unit ({data.unit})"
        )
    resid = data.y - eval_model(model, data.x)
    abs_resid = np.abs(resid)
    max_abs = float(abs_resid.max())
    y_max = float(data.y.max())
    if y_max == 0:
        import warnings

        warnings.warn(
            "Maximum measured value is 0 so the error cannot be expressed "
            "relative to it. percent_of_max is NaN.",
            NoScaleWarning,
        )
        pct = float("nan")
    else:
        pct = 100.0 * max_abs / y_max
    return FitStats(
        rmse=float(np.sqrt(np.mean(resid ** 2))),
        max_abs_residual=max_abs,
        percent_of_max=pct,
        residual_sum=float(resid.sum()),
    )


def _untransform(
    b: List[Fraction], center: Fraction, half_range: Fraction
) -> List[Fraction]:
    # sum_k b_k ((x - c)/h)**k expanded in powers of x
    k = len(b)
    alpha = [Fraction(0)] * k
    for p in range(k):
        scale = b[p] / half_range ** p
        for j in range(p + 1):
            alpha[j] += scale * comb(p, j) * (-center) ** (p - j)
    return alpha


def fit_cubic(data: MeasurementDataset) -> Tuple[PolynomialModel, FitStats]:
    r"""
    Least-squares cubic fit via the normal equations

    Parameters
    ----------
    data : MeasurementDataset
        Samples with at least 4 distinct input sizes

    Returns
    -------
    model : PolynomialModel
        Coefficients minimizing the sum of squared residuals, in the dataset
        unit
    stats : FitStats
        Fit statistics on the input samples

    Raises
    ------
    DegenerateDesignError
        If fewer than 4 distinct x values are present
    IllConditionedError
        If the scaled normal matrix has a condition number above
        ``COND_LIMIT``

    Notes
    -----
    The coefficients solve the 4 by 4 system obtained by setting the
    derivatives of

    .. math::

      R = \sum_i (y_i - (\alpha_4 x_i^3 + \alpha_3 x_i^2 + \alpha_2 x_i + \alpha_1))^2

    with respect to each coefficient to zero. The abscissae are centred on
    the midpoint of their range and scaled to [-1, 1] before the system is
    formed, the system is solved by Gaussian elimination with partial
    pivoting, and the solution is mapped back to powers of the original x.
    Sums, the solve and the back transformation are carried out in exact
    rational arithmetic on the float64 inputs, so the only rounding is the
    final conversion of each coefficient to float.

    See Also
    --------
    fit_error, CubicFitResults
    """
    return CubicFitResults.fit(data).as_tuple()


class CubicFitResults(_SummaryStr):
    """
    Results of a cubic cost-model fit

    Parameters
    ----------
    model : PolynomialModel
        The fitted model
    data : MeasurementDataset
        The data used in estimation
    cond : float
        Condition number of the scaled normal matrix
    """

    def __init__(
        self, model: PolynomialModel, data: MeasurementDataset, cond: float
    ) -> None:
        self._model = model
        self._data = data
        self._cond = cond

    @classmethod
    def fit(cls, data: MeasurementDataset) -> "CubicFitResults":
        """
        Estimate a cubic cost model

        See Also
        --------
        fit_cubic
        """
        if data.n_distinct <= DEGREE:
            raise DegenerateDesignError(
                "At least {0} distinct x values are required to fit a cubic, "
                "{1} found.".format(DEGREE + 1, data.n_distinct)
            )
        x = [Fraction(v) for v in data.x.tolist()]
        y = [Fraction(v) for v in data.y.tolist()]
        lo, hi = min(x), max(x)
        center = (lo + hi) / 2
        half_range = (hi - lo) / 2
        z = [(xi - center) / half_range for xi in x]
        gram, rhs = moment_matrix(z, y, DEGREE)
        cond = condition_number(gram)
        if cond > COND_LIMIT:
            raise IllConditionedError(
                "Normal equations are numerically singular (condition number "
                "{0:.3g} > {1:.3g}) for x in [{2:g}, {3:g}]. The distinct "
                "input sizes are too tightly clustered.".format(
                    cond, COND_LIMIT, float(lo), float(hi)
                )
            )
        b = solve_pivoted(gram, rhs)
        alpha = [float(a) for a in _untransform(b, center, half_range)]
        provenance = FitProvenance(digest=data.digest, nobs=data.nobs)
        model = PolynomialModel.from_coefficients(
            (alpha[0], alpha[1], alpha[2], alpha[3]),
            unit=data.unit,
            fitted_on=provenance,
        )
        return cls(model, data, cond)

    def as_tuple(self) -> Tuple[PolynomialModel, FitStats]:
        return self._model, self.stats

    @property
    def model(self) -> PolynomialModel:
        """Fitted cost model"""
        return self._model

    @property
    def data(self) -> MeasurementDataset:
        """Estimation data"""
        return self._data

    @property
    def cond(self) -> float:
        """Condition number of the scaled normal matrix"""
        return self._cond

    @property
    def nobs(self) -> int:
        """Number of observations"""
        return self._data.nobs

    @property
    def params(self) -> Series:
        """Estimated coefficients, constant term first"""
        return Series(self._model.coefficients, index=PARAM_NAMES, name="params")

    @cached_property
    def fitted_values(self) -> NDArray:
        """Model values at the estimation inputs"""
        return eval_model(self._model, self._data.x)

    @cached_property
    def resids(self) -> NDArray:
        """Estimation residuals"""
        return self._data.y - self.fitted_values

    @cached_property
    def stats(self) -> FitStats:
        """Goodness-of-fit statistics"""
        return fit_error(self._model, self._data)

    @property
    def summary(self) -> Summary:
        """
        Model estimation summary.

        Returns
        -------
        Summary
            Summary table of model estimation results
        """
        stats = self.stats
        meta = self._data.meta
        title = "Cubic Cost Model Estimation Summary"
        top_left = [
            ("Category:", str(meta.get("category", "-"))),
            ("Unit:", self._data.unit),
            ("No. Observations:", str(self.nobs)),
            ("Distinct x:", str(self._data.n_distinct)),
        ]
        top_right = [
            ("RMSE:", _str(stats.rmse)),
            ("Max. |resid|:", _str(stats.max_abs_residual)),
            ("Pct. of max:", pct_format(stats.percent_of_max)),
            ("Cond. (scaled):", _str(self._cond)),
        ]
        stubs = []
        vals = []
        for stub, val in top_left:
            stubs.append(stub)
            vals.append([val])
        table = SimpleTable(vals, txt_fmt=fmt_2cols, title=title, stubs=stubs)
        stubs = []
        vals = []
        for stub, val in top_right:
            stubs.append("%-18s" % ("  " + stub))
            vals.append([val])
        table.extend_right(SimpleTable(vals, stubs=stubs))

        smry = Summary()
        smry.tables.append(table)
        data = [[coef_format(v)] for v in self._model.coefficients]
        smry.tables.append(
            SimpleTable(
                data,
                stubs=PARAM_NAMES,
                headers=["Coefficient"],
                txt_fmt=fmt_params,
                title="Coefficients",
            )
        )
        sources = meta.get("algorithms")
        if sources:
            extra = ["Pooled algorithms:"]
            extra += [line[0] for line in format_wide(list(map(str, sources)), 70)]
            smry.add_extra_txt(extra)
        return smry
