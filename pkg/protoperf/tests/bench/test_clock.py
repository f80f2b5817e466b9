import pytest

from protoperf.bench.clock import (
    MAX_RESOLUTION_NS,
    check_resolution,
    clock_resolution,
    measure_resolution,
)
from protoperf.shared.exceptions import ClockResolutionError


class SteppingClock:
    def __init__(self, step):
        self.step = step
        self.now = 0

    def __call__(self):
        self.now += self.step
        return self.now


def test_measure_resolution():
    assert measure_resolution(SteppingClock(7), samples=8) == 7
    assert measure_resolution(SteppingClock(1), samples=1) == 1


def test_clock_resolution():
    res = clock_resolution()
    assert isinstance(res, int)
    assert 1 <= res <= MAX_RESOLUTION_NS
    assert clock_resolution() == res


def test_check_resolution():
    check_resolution(1)
    check_resolution(MAX_RESOLUTION_NS)
    with pytest.raises(ClockResolutionError, match="coarser"):
        check_resolution(MAX_RESOLUTION_NS + 1)
