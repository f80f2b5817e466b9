"""
Primitive and sweep descriptions used by the benchmark harness
"""
from dataclasses import dataclass, field
from typing import Optional, Tuple

from protoperf.shared.category import Category, category_from_string

__all__ = ["MODES", "PrimitiveSpec", "SweepConfig", "parse_spec", "DEFAULT_SIZES"]

MODES = ("ecb", "cbc", "cfb", "ofb", "ctr")
DEFAULT_SIZES: Tuple[int, ...] = tuple(2 ** k for k in range(4, 15))
AGGREGATORS = ("median", "mean")


@dataclass(frozen=True)
class PrimitiveSpec:
    """
    A single benchmarkable primitive

    Parameters
    ----------
    category : Category
        Algorithm category
    algorithm : str
        Algorithm identifier, e.g. "aes", "sha1" or "rsa"
    mode : str, optional
        Block cipher mode, one of ECB, CBC, CFB, OFB or CTR. Required for
        symmetric categories and forbidden otherwise.
    key_bits : int
        Key size in bits. Positive for symmetric and asymmetric categories,
        0 for hashes.
    """

    category: Category
    algorithm: str
    mode: Optional[str] = None
    key_bits: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.category, Category):
            object.__setattr__(self, "category", category_from_string(self.category))
        if not self.algorithm:
            raise ValueError("algorithm must be a non-empty identifier")
        object.__setattr__(self, "algorithm", self.algorithm.lower())
        if self.category.is_symmetric:
            if self.mode is None:
                raise ValueError("symmetric primitives require a mode")
            mode = self.mode.lower()
            if mode not in MODES:
                raise ValueError(
                    f"Unknown mode {self.mode!r}. Must be one of "
                    + ", ".join(m.upper() for m in MODES)
                )
            object.__setattr__(self, "mode", mode)
        elif self.mode is not None:
            raise ValueError("mode is only valid for symmetric primitives")
        if self.category.is_hash:
            if self.key_bits != 0:
                raise ValueError("hash primitives do not take a key size")
        elif int(self.key_bits) <= 0:
            raise ValueError("key_bits must be a positive integer")

    @property
    def block_capacity(self) -> int:
        """Plaintext bytes per asymmetric invocation, key_bits/8 - 11"""
        if not self.category.is_asymmetric:
            raise ValueError("block capacity is only defined for asymmetric primitives")
        return self.key_bits // 8 - 11

    @property
    def label(self) -> str:
        """Spec string of the form CAT:ALG[:MODE]:KEYBITS"""
        parts = [self.category.keyword, self.algorithm]
        if self.mode is not None:
            parts.append(self.mode)
        parts.append(str(self.key_bits))
        return ":".join(parts)

    def __str__(self) -> str:
        return self.label


def parse_spec(value: str) -> PrimitiveSpec:
    """
    Parse a primitive spec string

    Parameters
    ----------
    value : str
        ``CAT:ALG[:MODE]:KEYBITS`` where CAT is a DSL keyword (``senc``,
        ``sdec``, ``hash``, ``aenc``, ``adec``) or a registry key, e.g.
        ``senc:aes:cbc:128``, ``hash:sha1:0`` or ``aenc:rsa:2048``.

    Returns
    -------
    PrimitiveSpec
        The parsed primitive
    """
    parts = value.strip().split(":")
    if len(parts) not in (3, 4):
        raise ValueError(
            f"Invalid primitive spec {value!r}. Expected CAT:ALG[:MODE]:KEYBITS"
        )
    category = category_from_string(parts[0])
    mode = parts[2] if len(parts) == 4 else None
    try:
        key_bits = int(parts[-1])
    except ValueError:
        raise ValueError(f"Invalid key size {parts[-1]!r} in {value!r}")
    return PrimitiveSpec(category, parts[1], mode, key_bits)


@dataclass(frozen=True)
class SweepConfig:
    """
    Benchmark sweep configuration

    Parameters
    ----------
    sizes : tuple[int, ...]
        Strictly ascending payload sizes in bytes. Default is the powers of
        two from 16 to 16384.
    repetitions : int
        Number of timed repetitions per size
    warmup : int
        Number of untimed invocations before timing starts
    aggregator : str
        "median" (default) or "mean"
    batch : bool
        Batch several invocations per timing window when a single invocation
        is shorter than 64 clock ticks
    seed : int
        Seed for the payload bytes
    """

    sizes: Tuple[int, ...] = field(default=DEFAULT_SIZES)
    repetitions: int = 32
    warmup: int = 4
    aggregator: str = "median"
    batch: bool = True
    seed: int = 0

    def __post_init__(self) -> None:
        sizes = tuple(int(s) for s in self.sizes)
        object.__setattr__(self, "sizes", sizes)
        if not sizes:
            raise ValueError("sizes must not be empty")
        if any(s < 1 for s in sizes):
            raise ValueError("sizes must all be at least 1")
        if any(b <= a for a, b in zip(sizes[:-1], sizes[1:])):
            raise ValueError("sizes must be strictly ascending")
        if self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")
        if self.warmup < 0:
            raise ValueError("warmup must be non-negative")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.aggregator not in AGGREGATORS:
            raise ValueError(
                f"aggregator must be one of {', '.join(AGGREGATORS)}, got {self.aggregator!r}"
            )
