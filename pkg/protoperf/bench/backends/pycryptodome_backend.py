"""
Adapter to the optional ``pycryptodome`` package
"""
import hashlib
from typing import Any, Dict, Tuple

from Crypto import __version__ as pycryptodome_version
from Crypto.Cipher import AES, DES3, PKCS1_v1_5
from Crypto.Hash import MD5, SHA1, SHA224, SHA256, SHA384, SHA512
from Crypto.PublicKey import RSA
from Crypto.Util.Padding import pad, unpad

from protoperf.bench.backends.base import AlgorithmSupport, Backend, Capabilities
from protoperf.bench.spec import PrimitiveSpec
from protoperf.shared.exceptions import SelfTestError

__all__ = ["PyCryptodomeBackend"]

HASHES = {
    "md5": MD5,
    "sha1": SHA1,
    "sha224": SHA224,
    "sha256": SHA256,
    "sha384": SHA384,
    "sha512": SHA512,
}

# algorithm -> (module, key sizes, modes)
_CIPHERS: Dict[str, Tuple[Any, Tuple[int, ...], Tuple[str, ...]]] = {
    "aes": (AES, (128, 192, 256), ("ecb", "cbc", "cfb", "ofb", "ctr")),
    "tripledes": (DES3, (192,), ("ecb", "cbc", "cfb", "ofb", "ctr")),
}

RSA_KEYS = (1024, 1536, 2048, 3072, 4096)

_PADDED_MODES = ("ecb", "cbc")


class PyCryptodomeBackend(Backend):
    """
    Production backend using ``pycryptodome``

    Parameters
    ----------
    rsa_keys : tuple[int, ...]
        RSA key sizes to offer, multiples of 256 from 1024. Keys are generated
        on first use and cached.

    Notes
    -----
    Padding follows ``CryptographyBackend``: PKCS#7 for ECB and CBC, PKCS#1
    v1.5 for RSA. CFB uses 128-bit segments so that it is comparable across
    backends.
    """

    name = "pycryptodome"

    def __init__(self, rsa_keys: Tuple[int, ...] = RSA_KEYS) -> None:
        super().__init__()
        self._rsa_keys_supported = tuple(sorted(rsa_keys))
        self._rsa: Dict[int, Any] = {}
        self._capabilities: Capabilities = {
            "symmetric": {
                alg: AlgorithmSupport(mode_names, key_sizes)
                for alg, (_, key_sizes, mode_names) in _CIPHERS.items()
            },
            "hash": {alg: AlgorithmSupport() for alg in HASHES},
            "asymmetric": {"rsa": AlgorithmSupport((), self._rsa_keys_supported)},
        }

    def capabilities(self) -> Capabilities:
        return self._capabilities

    @staticmethod
    def _material(label: str, n: int) -> bytes:
        return hashlib.shake_256(label.encode("utf-8")).digest(n)

    def _key(self, spec: PrimitiveSpec) -> bytes:
        key = self._material(f"{spec.algorithm}-key-{spec.key_bits}", spec.key_bits // 8)
        if spec.algorithm == "tripledes":
            key = DES3.adjust_key_parity(key)
        return key

    def _cipher(self, spec: PrimitiveSpec) -> Any:
        module = _CIPHERS[spec.algorithm][0]
        key = self._key(spec)
        block = module.block_size
        if spec.mode == "ecb":
            return module.new(key, module.MODE_ECB)
        if spec.mode == "ctr":
            return module.new(
                key, module.MODE_CTR, nonce=self._material("ctr-nonce", block // 2)
            )
        iv = self._material(f"{spec.algorithm}-iv", block)
        if spec.mode == "cfb":
            return module.new(key, module.MODE_CFB, iv=iv, segment_size=8 * block)
        if spec.mode == "cbc":
            return module.new(key, module.MODE_CBC, iv=iv)
        return module.new(key, module.MODE_OFB, iv=iv)

    def _rsa_key(self, key_bits: int) -> Any:
        if key_bits not in self._rsa:
            self._rsa[key_bits] = RSA.generate(key_bits)
        return self._rsa[key_bits]

    def sym_encrypt(self, spec: PrimitiveSpec, payload: bytes) -> bytes:
        self.check(spec)
        cipher = self._cipher(spec)
        if spec.mode in _PADDED_MODES:
            payload = pad(payload, cipher.block_size)
        return cipher.encrypt(payload)

    def sym_decrypt(self, spec: PrimitiveSpec, payload: bytes) -> bytes:
        self.check(spec)
        cipher = self._cipher(spec)
        plain = cipher.decrypt(payload)
        if spec.mode in _PADDED_MODES:
            plain = unpad(plain, cipher.block_size)
        return plain

    def hash(self, spec: PrimitiveSpec, payload: bytes) -> bytes:
        self.check(spec)
        return HASHES[spec.algorithm].new(payload).digest()

    def asym_encrypt(self, spec: PrimitiveSpec, payload: bytes) -> bytes:
        self.check(spec, len(payload))
        public_key = self._rsa_key(spec.key_bits).publickey()
        return PKCS1_v1_5.new(public_key).encrypt(payload)

    def asym_decrypt(self, spec: PrimitiveSpec, payload: bytes) -> bytes:
        self.check(spec)
        plain = PKCS1_v1_5.new(self._rsa_key(spec.key_bits)).decrypt(payload, None)
        if plain is None:
            raise SelfTestError(f"{self.name}: PKCS#1 v1.5 padding check failed")
        return plain

    def describe(self) -> Dict[str, str]:
        return {"backend": self.name, "version": pycryptodome_version}
