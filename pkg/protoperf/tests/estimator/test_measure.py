import warnings

import pytest

from protoperf.bench.backends import SyntheticBackend
from protoperf.bench.spec import SweepConfig
from protoperf.estimator.measure import measure_protocol, time_protocol
from protoperf.protocol.parser import parse_protocol
from protoperf.shared.exceptions import CapabilityError, PrecisionWarning


@pytest.fixture
def backend():
    return SyntheticBackend()


@pytest.fixture
def cfg():
    return SweepConfig(repetitions=5, warmup=1)


def test_measure_protocol(backend, cfg):
    p = parse_protocol("protocol p { A -> B: senc(size=80); hash(size=80) }")
    # (2000 + 4 * 80) + (1500 + 2.5 * 80)
    assert measure_protocol(p, backend, cfg) == 4020.0


def test_decrypt_input_prepared_outside_timing(backend, cfg):
    p = parse_protocol("protocol p { A -> B: sdec(size=64) }")
    assert measure_protocol(p, backend, cfg) == 2200.0 + 4.25 * 64


def test_asymmetric_blocks(backend, cfg):
    p = parse_protocol("protocol p { A -> B: aenc(size=300, key=1024) }")
    result = time_protocol(p, backend, cfg)
    assert result.elapsed == 3 * (20000.0 + 12.0 * 1024)
    assert len(result.samples) == 5
    assert result.batch == 1


def test_steps_run_in_sequence(backend, cfg):
    one = parse_protocol("protocol p { A -> B: hash(size=16) }")
    two = parse_protocol("protocol p { A -> B: hash(size=16)\n B -> A: hash(size=16) }")
    assert measure_protocol(two, backend, cfg) == 2 * measure_protocol(one, backend, cfg)


def test_short_protocol_warns_without_batching(backend):
    p = parse_protocol("protocol p { A -> B: hash(size=16) }")
    cfg = SweepConfig(repetitions=3, warmup=0, batch=False)
    with pytest.warns(PrecisionWarning):
        measure_protocol(p, backend, cfg)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        measure_protocol(p, backend, SweepConfig(repetitions=3, warmup=0))


def test_long_protocol_does_not_warn(backend):
    # 97 decryptions with a 4096-bit key take well over 1 ms
    p = parse_protocol("protocol p { A -> B: adec(size=48500, key=4096) }")
    cfg = SweepConfig(repetitions=2, warmup=0, batch=False)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert measure_protocol(p, backend, cfg) > 1_000_000


def test_unsupported_operation(backend, cfg):
    p = parse_protocol("protocol p { A -> B: senc(size=16, alg=camellia) }")
    with pytest.raises(CapabilityError, match="camellia"):
        measure_protocol(p, backend, cfg)
    p = parse_protocol("protocol p { A -> B: aenc(size=16, key=8192) }")
    with pytest.raises(CapabilityError, match="8192"):
        measure_protocol(p, backend, cfg)


def test_deterministic(cfg):
    p = parse_protocol("protocol p { A -> B: senc(size=300); aenc(size=200, key=2048) }")
    assert measure_protocol(p, SyntheticBackend(), cfg) == measure_protocol(
        p, SyntheticBackend(), cfg
    )
