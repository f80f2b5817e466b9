import os
from typing import Union

from numpy import ndarray

from .data import ArrayLike

__all__ = ["ArrayLike", "Numeric", "NDArray", "PathLike"]

# Workaround for https://github.com/python/mypy/issues/7866
NDArray = Union[ndarray]

Numeric = Union[int, float]
PathLike = Union[str, "os.PathLike[str]"]
