"""
Backend contract shared by the synthetic and library adapters
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
import time
from typing import Callable, Dict, Mapping, Optional, Tuple

from protoperf.bench.clock import Timer, clock_resolution
from protoperf.bench.spec import MODES, PrimitiveSpec
from protoperf.shared.category import Category
from protoperf.shared.exceptions import CapabilityError, SelfTestError

__all__ = ["AlgorithmSupport", "Backend", "Capabilities", "KNOWN_DIGESTS"]

# Published digests of the empty string and of b"abc"
KNOWN_DIGESTS: Dict[str, Dict[bytes, str]] = {
    "md5": {
        b"": "d41d8cd98f00b204e9800998ecf8427e",
        b"abc": "900150983cd24fb0d6963f7d28e17f72",
    },
    "sha1": {
        b"": "da39a3ee5e6b4b0d3255bfef95601890afd80709",
        b"abc": "a9993e364706816aba3e25717850c26c9cd0d89d",
    },
    "sha256": {
        b"": "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855",
        b"abc": "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad",
    },
}


@dataclass(frozen=True)
class AlgorithmSupport:
    """Modes and key sizes a backend supports for one algorithm"""

    modes: Tuple[str, ...] = ()
    key_bits: Tuple[int, ...] = (0,)


# family -> algorithm -> support
Capabilities = Mapping[str, Mapping[str, AlgorithmSupport]]


class Backend(ABC):
    """
    Provider of cryptographic operations for the benchmark harness

    Subclasses implement the five primitive operations and report what they
    support through ``capabilities``. Decrypt operations take ciphertext
    produced by the matching encrypt operation; ``prepare`` builds that input
    from a plaintext payload so the harness can time decryption of a known
    plaintext size.

    Notes
    -----
    A backend instance is owned by one timing run at a time and need not be
    thread safe.
    """

    name = "backend"

    def __init__(self) -> None:
        self._self_tested = False

    # Timing hooks
    @property
    def timer(self) -> Timer:
        """Clock returning integer nanoseconds"""
        return time.perf_counter_ns

    @property
    def resolution(self) -> int:
        """Resolution of ``timer`` in nanoseconds"""
        return clock_resolution()

    @abstractmethod
    def capabilities(self) -> Capabilities:
        """Supported algorithms, modes and key sizes per family"""

    @abstractmethod
    def sym_encrypt(self, spec: PrimitiveSpec, payload: bytes) -> bytes:
        ...

    @abstractmethod
    def sym_decrypt(self, spec: PrimitiveSpec, payload: bytes) -> bytes:
        ...

    @abstractmethod
    def hash(self, spec: PrimitiveSpec, payload: bytes) -> bytes:
        ...

    @abstractmethod
    def asym_encrypt(self, spec: PrimitiveSpec, payload: bytes) -> bytes:
        ...

    @abstractmethod
    def asym_decrypt(self, spec: PrimitiveSpec, payload: bytes) -> bytes:
        ...

    def supported_key_bits(self, spec: PrimitiveSpec) -> Tuple[int, ...]:
        """Key sizes supported for the primitive's algorithm"""
        return self._support(spec).key_bits

    def _support(self, spec: PrimitiveSpec) -> AlgorithmSupport:
        family = spec.category.family
        algorithms = self.capabilities().get(family, {})
        if spec.algorithm not in algorithms:
            raise CapabilityError(
                "{0} does not support {1} algorithm {2!r}".format(
                    self.name, family, spec.algorithm
                ),
                sorted(algorithms),
            )
        return algorithms[spec.algorithm]

    def check(self, spec: PrimitiveSpec, payload_len: Optional[int] = None) -> None:
        """
        Verify that a primitive can be executed

        Parameters
        ----------
        spec : PrimitiveSpec
            The primitive
        payload_len : int, optional
            Plaintext length of a single invocation. For asymmetric
            primitives it must not exceed the block capacity.

        Raises
        ------
        CapabilityError
            If the algorithm, mode, key size or payload length is unsupported
        """
        support = self._support(spec)
        if spec.mode is not None and spec.mode not in support.modes:
            raise CapabilityError(
                "{0} does not support mode {1} for {2}".format(
                    self.name, spec.mode.upper(), spec.algorithm
                ),
                [m.upper() for m in support.modes],
            )
        if spec.key_bits not in support.key_bits:
            raise CapabilityError(
                "{0} does not support {1}-bit keys for {2}".format(
                    self.name, spec.key_bits, spec.algorithm
                ),
                [str(k) for k in support.key_bits],
            )
        if spec.category.is_asymmetric:
            capacity = spec.block_capacity
            if capacity < 1:
                raise CapabilityError(
                    f"{spec.key_bits}-bit key cannot hold one padded byte"
                )
            if payload_len is not None and payload_len > capacity:
                raise CapabilityError(
                    "payload of {0} bytes exceeds the block capacity of {1} bytes "
                    "for a {2}-bit key".format(payload_len, capacity, spec.key_bits)
                )

    def operation(self, spec: PrimitiveSpec) -> Callable[[PrimitiveSpec, bytes], bytes]:
        """Bound primitive operation for a category"""
        return {
            Category.SymmetricEncrypt: self.sym_encrypt,
            Category.SymmetricDecrypt: self.sym_decrypt,
            Category.Hash: self.hash,
            Category.AsymmetricEncrypt: self.asym_encrypt,
            Category.AsymmetricDecrypt: self.asym_decrypt,
        }[spec.category]

    def prepare(self, spec: PrimitiveSpec, payload: bytes) -> bytes:
        """
        Input of the timed operation for a plaintext payload

        Returns the payload for encryption and hashing and the matching
        ciphertext for decryption.
        """
        if spec.category is Category.SymmetricDecrypt:
            return self.sym_encrypt(spec, payload)
        if spec.category is Category.AsymmetricDecrypt:
            return self.asym_encrypt(spec, payload)
        return payload

    def execute(self, spec: PrimitiveSpec, data: bytes) -> bytes:
        """Run the primitive of ``spec`` on prepared input"""
        return self.operation(spec)(spec, data)

    def _round_trip(self, spec: PrimitiveSpec, message: bytes) -> None:
        if spec.category.is_symmetric:
            out = self.sym_decrypt(spec, self.sym_encrypt(spec, message))
        else:
            out = self.asym_decrypt(spec, self.asym_encrypt(spec, message))
        if out != message:
            raise SelfTestError(
                "{0}: decrypt(encrypt(m)) != m for {1}".format(self.name, spec.label)
            )

    def self_test(self) -> None:
        """
        Check cipher round trips and known digest vectors

        Raises
        ------
        SelfTestError
            If any check fails. The result of a successful run is cached.
        """
        if self._self_tested:
            return
        caps = self.capabilities()
        message = bytes(range(256)) * 4
        for alg, support in caps.get("symmetric", {}).items():
            for mode in support.modes:
                spec = PrimitiveSpec(
                    Category.SymmetricEncrypt, alg, mode, support.key_bits[0]
                )
                self._round_trip(spec, message)
        for alg, support in caps.get("asymmetric", {}).items():
            key_bits = min(support.key_bits)
            spec = PrimitiveSpec(Category.AsymmetricEncrypt, alg, None, key_bits)
            self._round_trip(spec, message[: spec.block_capacity])
        for alg in caps.get("hash", {}):
            spec = PrimitiveSpec(Category.Hash, alg)
            for msg, expected in KNOWN_DIGESTS.get(alg, {}).items():
                digest = self.hash(spec, msg).hex()
                if digest != expected:
                    raise SelfTestError(
                        "{0}: {1} digest of {2!r} is {3}, expected {4}".format(
                            self.name, alg, msg, digest, expected
                        )
                    )
            if len(self.hash(spec, message)) != len(self.hash(spec, b"")):
                raise SelfTestError(f"{self.name}: {alg} digest length is not fixed")
        self._self_tested = True

    def describe(self) -> Dict[str, str]:
        """Provenance recorded with measurements and reports"""
        return {"backend": self.name}

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name={self.name!r})"
