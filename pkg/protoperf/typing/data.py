from typing import Sequence, Union

import numpy as np
import pandas as pd

ArrayLike = Union[np.ndarray, pd.Series, Sequence[float]]
