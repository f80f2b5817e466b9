"""
Synthetic backend with an analytically known cost

Operations are cheap reversible transforms (XOR keystreams, hashlib
digests). Their cost is dictated by one ``PolynomialModel`` per category, in
nanoseconds, and is either simulated on a virtual clock or spent in a
busy-wait on the real monotonic clock.
"""
import hashlib
import math
import time
from typing import Dict, Mapping, Optional, Sequence, Union

import numpy as np

from protoperf.bench.backends.base import AlgorithmSupport, Backend, Capabilities
from protoperf.bench.clock import Timer
from protoperf.bench.spec import MODES, PrimitiveSpec
from protoperf.model.polynomial import PolynomialModel, eval_model
from protoperf.shared.category import Category, category_from_string

__all__ = ["SyntheticBackend", "DEFAULT_COSTS"]

DEFAULT_COSTS: Dict[Category, PolynomialModel] = {
    Category.SymmetricEncrypt: PolynomialModel(2000.0, 4.0, 0.0, 0.0),
    Category.SymmetricDecrypt: PolynomialModel(2200.0, 4.25, 0.0, 0.0),
    Category.Hash: PolynomialModel(1500.0, 2.5, 0.0, 0.0),
    Category.AsymmetricEncrypt: PolynomialModel(20000.0, 12.0, 0.0, 0.0),
    Category.AsymmetricDecrypt: PolynomialModel(100000.0, 0.0, 0.0, 2e-5),
}

TIMING_MODES = ("virtual", "busywait")


def _keystream_byte(spec: PrimitiveSpec) -> int:
    return (sum(spec.algorithm.encode()) + spec.key_bits) % 255 + 1


class SyntheticBackend(Backend):
    """
    Deterministic stand-in for a cryptographic library

    Parameters
    ----------
    timing : str
        "virtual" advances a virtual clock by the exact analytic cost of each
        operation and reads it in whole nanoseconds, so a timed region is
        within 1 ns of its analytic cost and exact for integer costs.
        "busywait" spins on the real monotonic clock for the analytic cost.
    costs : Mapping[{Category, str}, PolynomialModel], optional
        Cost of one invocation in nanoseconds per category, evaluated at the
        payload size (symmetric, hash) or the key size (asymmetric).
        Categories not given use ``DEFAULT_COSTS``.
    asymmetric_keys : Sequence[int]
        Supported RSA key sizes

    Examples
    --------
    >>> from protoperf.bench import SyntheticBackend, PrimitiveSpec, SweepConfig, sweep
    >>> backend = SyntheticBackend()
    >>> spec = PrimitiveSpec("hash", "sha1")
    >>> data = sweep(backend, spec, SweepConfig(repetitions=3, warmup=0))
    >>> data.y[0]
    1540.0
    """

    name = "synthetic"

    def __init__(
        self,
        timing: str = "virtual",
        costs: Optional[Mapping[Union[Category, str], PolynomialModel]] = None,
        asymmetric_keys: Sequence[int] = (1024, 1536, 2048, 3072, 4096),
    ) -> None:
        super().__init__()
        if timing not in TIMING_MODES:
            raise ValueError(f"timing must be one of {', '.join(TIMING_MODES)}")
        self._timing = timing
        self._costs = dict(DEFAULT_COSTS)
        for key, model in (costs or {}).items():
            cat = key if isinstance(key, Category) else category_from_string(key)
            self._costs[cat] = model
        self._asymmetric_keys = tuple(sorted(int(k) for k in asymmetric_keys))
        # exact virtual time; the clock reads its floor
        self._now = 0.0
        self._capabilities = self._build_capabilities()
        if timing == "busywait":
            self.name = "synthetic-busywait"

    @property
    def timing(self) -> str:
        """Timing mode, virtual or busywait"""
        return self._timing

    @property
    def costs(self) -> Dict[Category, PolynomialModel]:
        """Analytic cost models, nanoseconds per invocation"""
        return dict(self._costs)

    @property
    def timer(self) -> Timer:
        if self._timing == "virtual":
            return self._virtual_now
        return time.perf_counter_ns

    @property
    def resolution(self) -> int:
        if self._timing == "virtual":
            return 1
        return super().resolution

    def _virtual_now(self) -> int:
        return math.floor(self._now)

    def cost_ns(self, spec: PrimitiveSpec, payload_len: int) -> float:
        """Analytic cost of one invocation"""
        x = spec.key_bits if spec.category.is_asymmetric else payload_len
        return float(eval_model(self._costs[spec.category], x))

    def _spend(self, spec: PrimitiveSpec, payload_len: int, start: int) -> None:
        # the transform itself runs inside the budget: spin until start + cost
        cost = self.cost_ns(spec, payload_len)
        if self._timing == "virtual":
            self._now += cost
            return
        deadline = start + int(round(cost))
        while time.perf_counter_ns() < deadline:
            pass

    def capabilities(self) -> Capabilities:
        return self._capabilities

    def _build_capabilities(self) -> Capabilities:
        return {
            "symmetric": {
                "aes": AlgorithmSupport(MODES, (128, 192, 256)),
                "tripledes": AlgorithmSupport(("ecb", "cbc", "cfb", "ofb"), (192,)),
            },
            "hash": {
                alg: AlgorithmSupport()
                for alg in ("md5", "sha1", "sha224", "sha256", "sha384", "sha512")
            },
            "asymmetric": {"rsa": AlgorithmSupport((), self._asymmetric_keys)},
        }

    @staticmethod
    def _xor(spec: PrimitiveSpec, payload: bytes) -> bytes:
        k = _keystream_byte(spec)
        return np.bitwise_xor(np.frombuffer(payload, dtype=np.uint8), k).tobytes()

    def sym_encrypt(self, spec: PrimitiveSpec, payload: bytes) -> bytes:
        start = time.perf_counter_ns()
        self.check(spec)
        out = self._xor(spec, payload)
        self._spend(spec, len(payload), start)
        return out

    def sym_decrypt(self, spec: PrimitiveSpec, payload: bytes) -> bytes:
        start = time.perf_counter_ns()
        self.check(spec)
        out = self._xor(spec, payload)
        self._spend(spec, len(payload), start)
        return out

    def hash(self, spec: PrimitiveSpec, payload: bytes) -> bytes:
        start = time.perf_counter_ns()
        self.check(spec)
        out = hashlib.new(spec.algorithm, payload).digest()
        self._spend(spec, len(payload), start)
        return out

    def asym_encrypt(self, spec: PrimitiveSpec, payload: bytes) -> bytes:
        start = time.perf_counter_ns()
        self.check(spec, len(payload))
        block = spec.key_bits // 8
        # length prefix plus zero fill emulates a fixed-size ciphertext block
        framed = len(payload).to_bytes(2, "big") + payload
        framed += b"\x00" * (block - len(framed))
        out = self._xor(spec, framed)
        self._spend(spec, len(payload), start)
        return out

    def asym_decrypt(self, spec: PrimitiveSpec, payload: bytes) -> bytes:
        start = time.perf_counter_ns()
        self.check(spec)
        framed = self._xor(spec, payload)
        n = int.from_bytes(framed[:2], "big")
        self._spend(spec, len(payload), start)
        return framed[2 : 2 + n]

    def describe(self) -> Dict[str, str]:
        return {"backend": self.name, "timing": self._timing}
