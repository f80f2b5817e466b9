"""
Protocols as ordered sequences of cryptographic operations
"""
from dataclasses import dataclass, field
import re
from typing import Iterator, Optional, Sequence, Tuple

from protoperf.bench.spec import MODES, PrimitiveSpec
from protoperf.shared.category import Category, category_from_string

__all__ = [
    "CryptoOp",
    "Protocol",
    "ProtocolStep",
    "concat",
    "is_identifier",
    "permute_steps",
]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

DEFAULT_MODE = "cbc"
DEFAULT_SYMMETRIC_KEY = 128
DEFAULT_ASYMMETRIC_KEY = 1024


def is_identifier(value: str) -> bool:
    """True if value is a valid DSL identifier"""
    return isinstance(value, str) and _IDENT.match(value) is not None


@dataclass(frozen=True)
class CryptoOp:
    """
    One cryptographic operation of a protocol

    Parameters
    ----------
    category : {Category, str}
        Operation category, a Category or any string accepted by
        ``category_from_string`` such as "senc"
    payload_bytes : int
        Plaintext size in bytes, at least 1
    algorithm : str, optional
        Algorithm identifier. Defaults to "aes", "sha1" or "rsa" by category.
    mode : str, optional
        Block cipher mode, symmetric operations only. Defaults to "cbc".
    key_bits : int, optional
        Key size. Defaults to 128 for symmetric and 1024 for asymmetric
        operations. Hash operations take no key and store 0.
    """

    category: Category
    payload_bytes: int
    algorithm: Optional[str] = None
    mode: Optional[str] = None
    key_bits: Optional[int] = None

    def __post_init__(self) -> None:
        cat = self.category
        if not isinstance(cat, Category):
            cat = category_from_string(cat)
            object.__setattr__(self, "category", cat)
        if isinstance(self.payload_bytes, bool) or int(self.payload_bytes) != self.payload_bytes:
            raise ValueError("payload_bytes must be an integer")
        if self.payload_bytes < 1:
            raise ValueError(f"payload_bytes must be positive, got {self.payload_bytes}")
        object.__setattr__(self, "payload_bytes", int(self.payload_bytes))
        algorithm = cat.default_algorithm if self.algorithm is None else self.algorithm.lower()
        if not is_identifier(algorithm):
            raise ValueError(f"Invalid algorithm identifier {algorithm!r}")
        object.__setattr__(self, "algorithm", algorithm)

        if cat.is_symmetric:
            mode = DEFAULT_MODE if self.mode is None else self.mode.lower()
            if mode not in MODES:
                raise ValueError(
                    f"Unknown mode {self.mode!r}. Must be one of " + ", ".join(MODES)
                )
            object.__setattr__(self, "mode", mode)
        elif self.mode is not None:
            raise ValueError(f"mode is not valid on {cat.keyword} operations")

        if cat.is_hash:
            if self.key_bits not in (None, 0):
                raise ValueError("key is not valid on hash operations")
            object.__setattr__(self, "key_bits", 0)
        else:
            default = DEFAULT_SYMMETRIC_KEY if cat.is_symmetric else DEFAULT_ASYMMETRIC_KEY
            key_bits = default if self.key_bits is None else self.key_bits
            if isinstance(key_bits, bool) or int(key_bits) != key_bits or key_bits < 1:
                raise ValueError(f"key_bits must be a positive integer, got {key_bits}")
            object.__setattr__(self, "key_bits", int(key_bits))

    @property
    def keyword(self) -> str:
        """DSL keyword of the operation"""
        return self.category.keyword

    @property
    def spec(self) -> PrimitiveSpec:
        """Benchmarkable primitive executing this operation"""
        return PrimitiveSpec(self.category, self.algorithm, self.mode, int(self.key_bits or 0))

    @property
    def block_capacity(self) -> int:
        """Plaintext bytes per asymmetric invocation"""
        if not self.category.is_asymmetric:
            raise ValueError("block capacity is only defined for asymmetric operations")
        return int(self.key_bits or 0) // 8 - 11

    @property
    def invocations(self) -> int:
        """
        Number of primitive invocations needed for the payload

        One for symmetric and hash operations. Asymmetric operations process
        one block of at most ``block_capacity`` bytes per invocation.
        """
        if not self.category.is_asymmetric:
            return 1
        capacity = self.block_capacity
        if capacity < 1:
            raise ValueError(
                f"A {self.key_bits}-bit key cannot hold one padded byte "
                "(key_bits/8 - 11 < 1)"
            )
        return -(-self.payload_bytes // capacity)

    def chunks(self) -> Iterator[int]:
        """Plaintext length of each invocation, in order"""
        if not self.category.is_asymmetric:
            yield self.payload_bytes
            return
        remaining = self.payload_bytes
        capacity = self.block_capacity
        for _ in range(self.invocations):
            size = min(remaining, capacity)
            yield size
            remaining -= size


@dataclass(frozen=True)
class ProtocolStep:
    """
    A message from one principal to another and the operations it requires

    Parameters
    ----------
    sender : str
        Sending principal
    receiver : str
        Receiving principal, different from the sender
    ops : Sequence[CryptoOp]
        Non-empty ordered operations
    """

    sender: str
    receiver: str
    ops: Tuple[CryptoOp, ...]

    def __post_init__(self) -> None:
        for name in (self.sender, self.receiver):
            if not is_identifier(name):
                raise ValueError(f"Invalid principal name {name!r}")
        if self.sender == self.receiver:
            raise ValueError(f"sender equals receiver ({self.sender})")
        ops = tuple(self.ops)
        if not ops:
            raise ValueError("a step requires at least one operation")
        if not all(isinstance(op, CryptoOp) for op in ops):
            raise TypeError("ops must be CryptoOp instances")
        object.__setattr__(self, "ops", ops)


@dataclass(frozen=True)
class Protocol:
    """
    A named security protocol

    Parameters
    ----------
    id : str
        Identifier, unique within a corpus
    steps : Sequence[ProtocolStep]
        Non-empty ordered steps
    """

    id: str
    steps: Tuple[ProtocolStep, ...] = field(default=())

    def __post_init__(self) -> None:
        if not is_identifier(self.id):
            raise ValueError(f"Invalid protocol id {self.id!r}")
        steps = tuple(self.steps)
        if not steps:
            raise ValueError(f"protocol {self.id} has no steps")
        object.__setattr__(self, "steps", steps)

    @property
    def ops(self) -> Tuple[CryptoOp, ...]:
        """All operations in execution order"""
        return tuple(op for step in self.steps for op in step.ops)

    @property
    def n_ops(self) -> int:
        """Total number of operations"""
        return sum(len(step.ops) for step in self.steps)

    def __str__(self) -> str:
        from protoperf.protocol.parser import serialize_protocol

        return serialize_protocol(self)


def concat(p: Protocol, q: Protocol, id: Optional[str] = None) -> Protocol:
    """
    Protocol executing the steps of p followed by the steps of q

    Parameters
    ----------
    p, q : Protocol
        Protocols to join
    id : str, optional
        Identifier of the result. Default is ``"{p.id}_{q.id}"``.
    """
    return Protocol(id or f"{p.id}_{q.id}", p.steps + q.steps)


def permute_steps(p: Protocol, order: Sequence[int]) -> Protocol:
    """
    Reorder the steps of a protocol

    Parameters
    ----------
    p : Protocol
        Protocol to reorder
    order : Sequence[int]
        A permutation of ``range(len(p.steps))``

    Returns
    -------
    Protocol
        Protocol with the same id and ``steps[order[i]]`` at position i
    """
    idx = [int(i) for i in order]
    if sorted(idx) != list(range(len(p.steps))):
        raise ValueError("order must be a permutation of the step indices")
    return Protocol(p.id, tuple(p.steps[i] for i in idx))
