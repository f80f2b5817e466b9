import pytest

from protoperf.bench.spec import DEFAULT_SIZES, PrimitiveSpec, SweepConfig, parse_spec
from protoperf.shared.category import Category


@pytest.mark.parametrize(
    "value, expected",
    [
        ("senc:aes:cbc:128", PrimitiveSpec(Category.SymmetricEncrypt, "aes", "cbc", 128)),
        ("SDEC:AES:CTR:256", PrimitiveSpec(Category.SymmetricDecrypt, "aes", "ctr", 256)),
        ("hash:sha1:0", PrimitiveSpec(Category.Hash, "sha1")),
        ("hash.digest:md5:0", PrimitiveSpec(Category.Hash, "md5")),
        ("aenc:rsa:2048", PrimitiveSpec(Category.AsymmetricEncrypt, "rsa", None, 2048)),
        (" adec:rsa:1024 ", PrimitiveSpec(Category.AsymmetricDecrypt, "rsa", None, 1024)),
    ],
)
def test_parse_spec(value, expected):
    spec = parse_spec(value)
    assert spec == expected
    assert parse_spec(spec.label) == spec


@pytest.mark.parametrize(
    "value",
    [
        "senc:aes:128",
        "senc:aes:xts:128",
        "senc:aes:cbc:big",
        "hash:sha1:cbc:0",
        "hash:sha1:128",
        "aenc:rsa:0",
        "sign:rsa:1024",
        "senc",
        "senc::cbc:128",
    ],
)
def test_parse_spec_invalid(value):
    with pytest.raises(ValueError):
        parse_spec(value)


def test_label():
    assert PrimitiveSpec("senc", "AES", "CBC", 128).label == "senc:aes:cbc:128"
    assert str(PrimitiveSpec("hash", "sha256")) == "hash:sha256:0"
    assert PrimitiveSpec("asymmetric.decrypt", "rsa", key_bits=4096).label == "adec:rsa:4096"


def test_block_capacity():
    assert PrimitiveSpec("aenc", "rsa", key_bits=1024).block_capacity == 117
    assert PrimitiveSpec("adec", "rsa", key_bits=2048).block_capacity == 245
    with pytest.raises(ValueError, match="asymmetric"):
        PrimitiveSpec("hash", "sha1").block_capacity


def test_sweep_config_defaults():
    cfg = SweepConfig()
    assert cfg.sizes == DEFAULT_SIZES
    assert cfg.sizes[0] == 16
    assert cfg.sizes[-1] == 16384
    assert len(cfg.sizes) == 11
    assert cfg.aggregator == "median"
    assert cfg.batch


@pytest.mark.parametrize(
    "kwargs",
    [
        {"sizes": ()},
        {"sizes": (16, 16)},
        {"sizes": (32, 16)},
        {"sizes": (0, 16)},
        {"repetitions": 0},
        {"warmup": -1},
        {"seed": -1},
        {"aggregator": "max"},
    ],
)
def test_sweep_config_invalid(kwargs):
    with pytest.raises(ValueError):
        SweepConfig(**kwargs)
