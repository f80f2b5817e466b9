"""
Adapter to the ``cryptography`` package (OpenSSL)
"""
import hashlib
from typing import Any, Dict, Optional, Tuple

from cryptography import __version__ as cryptography_version
from cryptography.hazmat.primitives import hashes, padding as sym_padding
from cryptography.hazmat.primitives.asymmetric import padding, rsa
from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes

from protoperf.bench.backends.base import AlgorithmSupport, Backend, Capabilities
from protoperf.bench.spec import PrimitiveSpec

try:
    from cryptography.hazmat.decrepit.ciphers import algorithms as decrepit_algorithms
except ImportError:  # cryptography < 43
    decrepit_algorithms = None
try:
    from cryptography.hazmat.decrepit.ciphers import modes as decrepit_modes
except ImportError:
    decrepit_modes = None

__all__ = ["CryptographyBackend"]

HASHES = {
    "md5": hashes.MD5,
    "sha1": hashes.SHA1,
    "sha224": hashes.SHA224,
    "sha256": hashes.SHA256,
    "sha384": hashes.SHA384,
    "sha512": hashes.SHA512,
}

RSA_KEYS = (1024, 1536, 2048, 3072, 4096)


def _find(name: str, *namespaces: Any) -> Optional[Any]:
    # newer releases move legacy ciphers and modes into the decrepit namespace
    for ns in namespaces:
        if ns is not None and hasattr(ns, name):
            return getattr(ns, name)
    return None


_MODE_CLASSES = {
    name.lower(): _find(name, modes, decrepit_modes)
    for name in ("ECB", "CBC", "CFB", "OFB", "CTR")
}

# algorithm -> (cipher class, key sizes, modes)
_CIPHERS: Dict[str, Tuple[Any, Tuple[int, ...], Tuple[str, ...]]] = {
    "aes": (algorithms.AES, (128, 192, 256), ("ecb", "cbc", "cfb", "ofb", "ctr")),
    "camellia": (
        _find("Camellia", algorithms, decrepit_algorithms),
        (128, 192, 256),
        ("ecb", "cbc", "cfb", "ofb"),
    ),
    "tripledes": (
        _find("TripleDES", decrepit_algorithms, algorithms),
        (192,),
        ("ecb", "cbc", "cfb", "ofb"),
    ),
}

_PADDED_MODES = ("ecb", "cbc")


class CryptographyBackend(Backend):
    """
    Production backend using the ``cryptography`` package

    Parameters
    ----------
    rsa_keys : tuple[int, ...]
        RSA key sizes to offer. Keys are generated on first use and cached.

    Notes
    -----
    Block modes ECB and CBC use PKCS#7 padding, so a ciphertext is up to one
    block longer than its plaintext. CFB, OFB and CTR are length preserving.
    RSA uses PKCS#1 v1.5 encryption padding, which reserves 11 bytes of each
    block. Key material and IVs are fixed per backend instance; they only
    need to be valid, not secret.
    """

    name = "cryptography"

    def __init__(self, rsa_keys: Tuple[int, ...] = RSA_KEYS) -> None:
        super().__init__()
        self._rsa_keys_supported = tuple(sorted(rsa_keys))
        self._rsa: Dict[int, rsa.RSAPrivateKey] = {}
        self._capabilities = self._build_capabilities()

    def _build_capabilities(self) -> Capabilities:
        symmetric = {}
        for alg, (cls, key_sizes, mode_names) in _CIPHERS.items():
            if cls is None:
                continue
            available = tuple(m for m in mode_names if _MODE_CLASSES[m] is not None)
            symmetric[alg] = AlgorithmSupport(available, key_sizes)
        return {
            "symmetric": symmetric,
            "hash": {alg: AlgorithmSupport() for alg in HASHES},
            "asymmetric": {"rsa": AlgorithmSupport((), self._rsa_keys_supported)},
        }

    def capabilities(self) -> Capabilities:
        return self._capabilities

    @staticmethod
    def _material(label: str, n: int) -> bytes:
        # deterministic key/IV bytes derived from a label
        return hashlib.shake_256(label.encode("utf-8")).digest(n)

    def _cipher(self, spec: PrimitiveSpec) -> Cipher:
        cls = _CIPHERS[spec.algorithm][0]
        key = self._material(f"{spec.algorithm}-key-{spec.key_bits}", spec.key_bits // 8)
        algorithm = cls(key)
        block = algorithm.block_size // 8
        mode_cls = _MODE_CLASSES[spec.mode]
        if spec.mode == "ecb":
            mode = mode_cls()
        else:
            mode = mode_cls(self._material(f"{spec.algorithm}-iv", block))
        return Cipher(algorithm, mode)

    def _rsa_key(self, key_bits: int) -> rsa.RSAPrivateKey:
        if key_bits not in self._rsa:
            self._rsa[key_bits] = rsa.generate_private_key(
                public_exponent=65537, key_size=key_bits
            )
        return self._rsa[key_bits]

    def sym_encrypt(self, spec: PrimitiveSpec, payload: bytes) -> bytes:
        self.check(spec)
        cipher = self._cipher(spec)
        if spec.mode in _PADDED_MODES:
            padder = sym_padding.PKCS7(cipher.algorithm.block_size).padder()
            payload = padder.update(payload) + padder.finalize()
        encryptor = cipher.encryptor()
        return encryptor.update(payload) + encryptor.finalize()

    def sym_decrypt(self, spec: PrimitiveSpec, payload: bytes) -> bytes:
        self.check(spec)
        cipher = self._cipher(spec)
        decryptor = cipher.decryptor()
        plain = decryptor.update(payload) + decryptor.finalize()
        if spec.mode in _PADDED_MODES:
            unpadder = sym_padding.PKCS7(cipher.algorithm.block_size).unpadder()
            plain = unpadder.update(plain) + unpadder.finalize()
        return plain

    def hash(self, spec: PrimitiveSpec, payload: bytes) -> bytes:
        self.check(spec)
        digest = hashes.Hash(HASHES[spec.algorithm]())
        digest.update(payload)
        return digest.finalize()

    def asym_encrypt(self, spec: PrimitiveSpec, payload: bytes) -> bytes:
        self.check(spec, len(payload))
        public_key = self._rsa_key(spec.key_bits).public_key()
        return public_key.encrypt(payload, padding.PKCS1v15())

    def asym_decrypt(self, spec: PrimitiveSpec, payload: bytes) -> bytes:
        self.check(spec)
        return self._rsa_key(spec.key_bits).decrypt(payload, padding.PKCS1v15())

    def describe(self) -> Dict[str, str]:
        return {"backend": self.name, "version": cryptography_version}
