"""
Monotonic nanosecond clock and its observable resolution
"""
from functools import lru_cache
import time
from typing import Callable

from protoperf.shared.exceptions import ClockResolutionError

__all__ = ["Timer", "clock_resolution", "check_resolution", "MAX_RESOLUTION_NS"]

Timer = Callable[[], int]

# Coarsest clock accepted for timing, 1 ms
MAX_RESOLUTION_NS = 1_000_000

_SAMPLES = 64


def measure_resolution(timer: Timer = time.perf_counter_ns, samples: int = _SAMPLES) -> int:
    """
    Smallest nonzero step observed on a clock

    Parameters
    ----------
    timer : callable
        Clock returning integer nanoseconds
    samples : int
        Number of tick transitions to observe

    Returns
    -------
    int
        Smallest observed increment in nanoseconds, at least 1
    """
    smallest = None
    for _ in range(samples):
        start = timer()
        now = timer()
        while now == start:
            now = timer()
        step = now - start
        if smallest is None or step < smallest:
            smallest = step
    assert smallest is not None
    return max(int(smallest), 1)


@lru_cache(maxsize=None)
def clock_resolution() -> int:
    """
    Resolution of the process monotonic clock in nanoseconds

    Returns
    -------
    int
        Smallest observable nonzero tick of ``time.perf_counter_ns``

    Notes
    -----
    Measured on first call and cached for the life of the process.
    """
    return measure_resolution(time.perf_counter_ns)


def check_resolution(resolution_ns: int) -> None:
    """Raise ClockResolutionError if a clock is coarser than 1 ms"""
    if resolution_ns > MAX_RESOLUTION_NS:
        raise ClockResolutionError(
            "Clock resolution of {0} ns is coarser than the required {1} ns".format(
                resolution_ns, MAX_RESOLUTION_NS
            )
        )
