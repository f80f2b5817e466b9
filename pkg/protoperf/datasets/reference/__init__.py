from protoperf.model.registry import ModelRegistry

DESCR = """
Reference cost models for the five algorithm categories, estimated from
micro-benchmarks of three cryptographic libraries (Cryptlib, OpenSSL 0.9.8h and
Crypto++ 5.5.2) on a 1.8GHz Intel dual core running Windows XP.

symmetric.encrypt        block cipher encryption, x = payload bytes
symmetric.decrypt        block cipher decryption, x = payload bytes
hash.digest              message digest, x = payload bytes
asymmetric.encrypt       public key encryption, x = key bits
asymmetric.decrypt       private key decryption, x = key bits

The time unit of the source coefficients is not stated, so every model carries
the "paper-units" label. Estimates from this registry may be compared with each
other but never with wall-clock measurements. Whether the asymmetric rows take
the key size or the message size as x is also unstated; key bits are assumed.
"""


def load() -> ModelRegistry:
    from protoperf import datasets

    return datasets.load(__file__, "registry.json")
