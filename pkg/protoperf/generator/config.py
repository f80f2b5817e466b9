"""
Configuration of the random protocol generator
"""
from dataclasses import asdict, dataclass, field
import math
from typing import Any, Dict, Iterable, Mapping, Sequence, Tuple, Union

from protoperf.bench.spec import MODES
from protoperf.protocol.model import is_identifier
from protoperf.shared.category import Category, category_from_string
from protoperf.shared.typed_getters import get_float_list, get_int_list, get_string_list

__all__ = ["GenConfig", "KINDS"]

# Order of kind_weights
KINDS: Tuple[str, ...] = tuple(c.keyword for c in Category)

WeightsLike = Union[Sequence[float], Mapping[str, float]]


def _as_tuple(values: Iterable[Any], name: str) -> Tuple[Any, ...]:
    out = tuple(values)
    if not out:
        raise ValueError(f"{name} must not be empty")
    return out


def _range(values: Sequence[int], name: str) -> Tuple[int, int]:
    lo_hi = tuple(int(v) for v in values)
    if len(lo_hi) != 2:
        raise ValueError(f"{name} must be [min, max]")
    if lo_hi[0] < 1 or lo_hi[1] < lo_hi[0]:
        raise ValueError(f"{name} must satisfy 1 <= min <= max, got {list(lo_hi)}")
    return lo_hi[0], lo_hi[1]


def _weights(values: WeightsLike) -> Tuple[float, ...]:
    if isinstance(values, Mapping):
        weights = [0.0] * len(KINDS)
        for key, w in values.items():
            weights[KINDS.index(category_from_string(key).keyword)] = float(w)
    else:
        weights = [float(w) for w in values]
    if len(weights) != len(KINDS):
        raise ValueError(f"kind_weights must have {len(KINDS)} entries ({', '.join(KINDS)})")
    if any(not math.isfinite(w) or w < 0 for w in weights):
        raise ValueError("kind_weights must be finite and non-negative")
    if sum(weights) <= 0:
        raise ValueError("kind_weights must not all be zero")
    return tuple(weights)


@dataclass(frozen=True)
class GenConfig:
    """
    Distribution of generated protocols

    Parameters
    ----------
    steps_range : tuple[int, int]
        Inclusive range of the number of steps per protocol
    ops_per_step_range : tuple[int, int]
        Inclusive range of the number of operations per step
    payload_choices : tuple[int, ...]
        Payload sizes in bytes, drawn uniformly. Asymmetric payloads larger
        than the block capacity of the drawn key are excluded, falling back
        to the capacity itself when no choice fits.
    symmetric_keys : tuple[int, ...]
        Symmetric key sizes
    asymmetric_keys : tuple[int, ...]
        Asymmetric key sizes, each able to hold at least one padded byte
    kind_weights : {tuple[float, ...], Mapping[str, float]}
        Weights of senc, sdec, hash, aenc and adec, in that order, or a
        mapping from keyword or category to weight with missing kinds at 0
    principals : tuple[str, ...]
        At least two distinct principal names
    symmetric_algorithms, symmetric_modes, hash_algorithms,
    asymmetric_algorithms : tuple[str, ...]
        Algorithm and mode pools. Defaults are AES-CBC, SHA-1 and RSA.
    """

    steps_range: Tuple[int, int] = (1, 4)
    ops_per_step_range: Tuple[int, int] = (1, 3)
    payload_choices: Tuple[int, ...] = (10, 16, 80, 128, 300, 512, 1024)
    symmetric_keys: Tuple[int, ...] = (128, 256)
    asymmetric_keys: Tuple[int, ...] = (1024, 2048)
    kind_weights: Tuple[float, ...] = field(default=(1.0, 1.0, 1.0, 1.0, 1.0))
    principals: Tuple[str, ...] = ("A", "B", "S")
    symmetric_algorithms: Tuple[str, ...] = ("aes",)
    symmetric_modes: Tuple[str, ...] = ("cbc",)
    hash_algorithms: Tuple[str, ...] = ("sha1",)
    asymmetric_algorithms: Tuple[str, ...] = ("rsa",)

    def __post_init__(self) -> None:
        setattr_ = object.__setattr__
        setattr_(self, "steps_range", _range(self.steps_range, "steps_range"))
        setattr_(
            self, "ops_per_step_range", _range(self.ops_per_step_range, "ops_per_step_range")
        )
        payloads = _as_tuple((int(v) for v in self.payload_choices), "payload_choices")
        if any(v < 1 for v in payloads):
            raise ValueError("payload_choices must all be positive")
        setattr_(self, "payload_choices", payloads)
        sym_keys = _as_tuple((int(v) for v in self.symmetric_keys), "symmetric_keys")
        if any(v < 1 for v in sym_keys):
            raise ValueError("symmetric_keys must all be positive")
        setattr_(self, "symmetric_keys", sym_keys)
        asym_keys = _as_tuple((int(v) for v in self.asymmetric_keys), "asymmetric_keys")
        if any(k // 8 - 11 < 1 for k in asym_keys):
            raise ValueError("asymmetric_keys must hold at least one padded byte (>= 96 bits)")
        setattr_(self, "asymmetric_keys", asym_keys)
        setattr_(self, "kind_weights", _weights(self.kind_weights))
        principals = _as_tuple(self.principals, "principals")
        if len(set(principals)) < 2:
            raise ValueError("at least two distinct principals are required")
        if not all(is_identifier(p) for p in principals):
            raise ValueError("principals must be identifiers")
        setattr_(self, "principals", principals)
        for name in (
            "symmetric_algorithms",
            "symmetric_modes",
            "hash_algorithms",
            "asymmetric_algorithms",
        ):
            values = tuple(v.lower() for v in _as_tuple(getattr(self, name), name))
            if not all(is_identifier(v) for v in values):
                raise ValueError(f"{name} must be identifiers")
            setattr_(self, name, values)
        if any(m not in MODES for m in self.symmetric_modes):
            raise ValueError("symmetric_modes must be drawn from " + ", ".join(MODES))

    def replace(self, **changes: Any) -> "GenConfig":
        """Copy with some fields changed"""
        values = self.to_dict()
        values.update(changes)
        return GenConfig(**values)

    def to_dict(self) -> Dict[str, Any]:
        """JSON-compatible representation"""
        return {k: list(v) for k, v in asdict(self).items()}

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "GenConfig":
        """
        Construct from a JSON mapping

        Missing fields take their defaults. Mistyped fields raise TypeError.
        """
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError("Unknown GenConfig field(s): " + ", ".join(sorted(unknown)))
        kwargs: Dict[str, Any] = {}
        for key in (
            "steps_range",
            "ops_per_step_range",
            "payload_choices",
            "symmetric_keys",
            "asymmetric_keys",
        ):
            value = get_int_list(d, key)
            if value is not None:
                kwargs[key] = value
        weights = get_float_list(d, "kind_weights")
        if weights is not None:
            kwargs["kind_weights"] = weights
        for key in (
            "principals",
            "symmetric_algorithms",
            "symmetric_modes",
            "hash_algorithms",
            "asymmetric_algorithms",
        ):
            value = get_string_list(d, key)
            if value is not None:
                kwargs[key] = value
        return cls(**kwargs)
