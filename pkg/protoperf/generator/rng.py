"""
Portable pseudo-random draws for corpus generation

Every draw is derived from the raw 64-bit outputs of the PCG64 bit generator
(the XSL-RR output function over a 128-bit LCG), seeded through numpy's
``SeedSequence``. Bounded integers use modulo reduction with rejection of the
biased tail and uniform floats use the top 53 bits of one output. Any
implementation of those three pieces reproduces a corpus from its seed.
"""
from typing import Sequence, TypeVar

import numpy as np

__all__ = ["ALGORITHM_ID", "CorpusRandom"]

ALGORITHM_ID = "pcg64-xsl-rr/seedsequence;int=mod-reject;float=top53"

T = TypeVar("T")

_TWO_64 = 1 << 64


class CorpusRandom(object):
    """
    Seeded generator of the draws used by the corpus generator

    Parameters
    ----------
    seed : int
        Seed in [0, 2**64)
    """

    algorithm = ALGORITHM_ID

    def __init__(self, seed: int) -> None:
        if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
            raise TypeError("seed must be an integer")
        seed = int(seed)
        if not 0 <= seed < _TWO_64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        self._seed = seed
        self._bitgen = np.random.PCG64(seed)

    @property
    def seed(self) -> int:
        return self._seed

    def next_u64(self) -> int:
        """Next raw 64-bit output"""
        return int(self._bitgen.random_raw())

    def below(self, n: int) -> int:
        """Uniform integer in [0, n)"""
        if n < 1:
            raise ValueError("n must be positive")
        limit = _TWO_64 - (_TWO_64 % n)
        while True:
            value = self.next_u64()
            if value < limit:
                return value % n

    def integer(self, low: int, high: int) -> int:
        """Uniform integer in [low, high], both inclusive"""
        if high < low:
            raise ValueError("high must not be below low")
        return low + self.below(high - low + 1)

    def uniform(self) -> float:
        """Uniform float in [0, 1) with 53 random bits"""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def choice(self, values: Sequence[T]) -> T:
        """Uniformly chosen element"""
        if not values:
            raise ValueError("cannot choose from an empty sequence")
        return values[self.below(len(values))]

    def weighted_index(self, weights: Sequence[float]) -> int:
        """
        Index drawn with probability proportional to its weight

        Parameters
        ----------
        weights : Sequence[float]
            Non-negative weights, not all zero

        Returns
        -------
        int
            Index of a strictly positive weight
        """
        total = float(np.sum(weights))
        if total <= 0:
            raise ValueError("weights must not all be zero")
        target = self.uniform() * total
        cumulative = 0.0
        last = -1
        for i, w in enumerate(weights):
            if w <= 0:
                continue
            cumulative += w
            last = i
            if target < cumulative:
                return i
        return last
