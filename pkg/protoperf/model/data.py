"""
Measurement datasets consumed by the cubic fitter
"""
import hashlib
from typing import Any, Dict, Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from protoperf.model.polynomial import UNITS
from protoperf.typing import ArrayLike, NDArray

__all__ = ["MeasurementDataset", "pool_datasets"]


class MeasurementDataset(object):
    """
    Ordered (input size, elapsed time) samples

    Parameters
    ----------
    x : array_like
        Non-negative input sizes, bytes or key bits
    y : array_like
        Non-negative elapsed times
    unit : str
        Time unit of ``y``
    meta : dict, optional
        Free-form provenance: backend id, algorithm, mode, key bits,
        repetitions, ...

    Notes
    -----
    Duplicate ``x`` values are permitted. Fitting requires at least four
    distinct ``x`` values, which is checked by the fitter rather than here so
    that partial sweeps can be pooled.
    """

    def __init__(
        self,
        x: ArrayLike,
        y: ArrayLike,
        unit: str = "ns",
        meta: Optional[Mapping[str, Any]] = None,
    ) -> None:
        xa = np.asarray(x, dtype=np.float64).ravel()
        ya = np.asarray(y, dtype=np.float64).ravel()
        if xa.shape != ya.shape:
            raise ValueError(
                "x and y must have the same number of samples ({0} != {1})".format(
                    xa.shape[0], ya.shape[0]
                )
            )
        if not (np.all(np.isfinite(xa)) and np.all(np.isfinite(ya))):
            raise ValueError("samples must be finite")
        if np.any(xa < 0) or np.any(ya < 0):
            raise ValueError("samples must be non-negative")
        if unit not in UNITS:
            raise ValueError(
                f"Unknown unit label {unit!r}. Must be one of " + ", ".join(UNITS)
            )
        xa.flags.writeable = False
        ya.flags.writeable = False
        self._x = xa
        self._y = ya
        self._unit = unit
        self._meta: Dict[str, Any] = dict(meta or {})

    @classmethod
    def from_samples(
        cls,
        samples: Iterable[Tuple[float, float]],
        unit: str = "ns",
        meta: Optional[Mapping[str, Any]] = None,
    ) -> "MeasurementDataset":
        """Construct from an iterable of (x, y) pairs"""
        pairs = list(samples)
        x = [p[0] for p in pairs]
        y = [p[1] for p in pairs]
        return cls(x, y, unit=unit, meta=meta)

    @property
    def x(self) -> NDArray:
        """Input sizes"""
        return self._x

    @property
    def y(self) -> NDArray:
        """Elapsed times"""
        return self._y

    @property
    def unit(self) -> str:
        """Time unit of y"""
        return self._unit

    @property
    def meta(self) -> Dict[str, Any]:
        """Provenance information"""
        return dict(self._meta)

    @property
    def nobs(self) -> int:
        """Number of samples"""
        return int(self._x.shape[0])

    @property
    def n_distinct(self) -> int:
        """Number of distinct input sizes"""
        return int(np.unique(self._x).shape[0])

    @property
    def samples(self) -> Sequence[Tuple[float, float]]:
        """Samples as a list of (x, y) tuples"""
        return list(zip(self._x.tolist(), self._y.tolist()))

    @property
    def digest(self) -> str:
        """SHA-256 digest of the samples and unit, used as fit provenance"""
        h = hashlib.sha256()
        h.update(self._unit.encode("utf-8"))
        h.update(self._x.astype("<f8").tobytes())
        h.update(self._y.astype("<f8").tobytes())
        return h.hexdigest()

    def to_frame(self) -> pd.DataFrame:
        """Samples as a DataFrame with columns x and y"""
        return pd.DataFrame({"x": self._x, "y": self._y})

    def __len__(self) -> int:
        return self.nobs

    def __repr__(self) -> str:
        return "{0}(nobs={1}, unit={2!r}, meta={3!r})".format(
            self.__class__.__name__, self.nobs, self._unit, self._meta
        )


def pool_datasets(
    datasets: Sequence[MeasurementDataset], meta: Optional[Mapping[str, Any]] = None
) -> MeasurementDataset:
    """
    Pool datasets from several algorithms of one category

    Parameters
    ----------
    datasets : Sequence[MeasurementDataset]
        Datasets sharing a time unit
    meta : dict, optional
        Provenance of the pooled dataset. If omitted, the provenance of the
        inputs is recorded under ``"sources"``.

    Returns
    -------
    MeasurementDataset
        All samples, in input order

    Notes
    -----
    Pooling produces a class-level dataset: a single model fitted on it
    describes every algorithm, mode and key size of the category at once.
    """
    if not datasets:
        raise ValueError("At least one dataset is required")
    units = {d.unit for d in datasets}
    if len(units) != 1:
        raise ValueError(
            "Datasets must share a time unit, found: " + ", ".join(sorted(units))
        )
    x = np.concatenate([d.x for d in datasets])
    y = np.concatenate([d.y for d in datasets])
    if meta is None:
        meta = {"sources": [d.meta for d in datasets]}
    return MeasurementDataset(x, y, unit=units.pop(), meta=meta)
