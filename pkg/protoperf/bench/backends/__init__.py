from typing import Callable, Dict

from protoperf.bench.backends.base import (
    KNOWN_DIGESTS,
    AlgorithmSupport,
    Backend,
    Capabilities,
)
from protoperf.bench.backends.synthetic import DEFAULT_COSTS, SyntheticBackend

__all__ = [
    "AlgorithmSupport",
    "Backend",
    "BACKENDS",
    "Capabilities",
    "DEFAULT_COSTS",
    "KNOWN_DIGESTS",
    "SyntheticBackend",
    "available_backends",
    "get_backend",
]


def _cryptography() -> Backend:
    from protoperf.bench.backends.cryptography_backend import CryptographyBackend

    return CryptographyBackend()


def _pycryptodome() -> Backend:
    from protoperf.bench.backends.pycryptodome_backend import PyCryptodomeBackend

    return PyCryptodomeBackend()


BACKENDS: Dict[str, Callable[[], Backend]] = {
    "synthetic": SyntheticBackend,
    "busywait": lambda: SyntheticBackend(timing="busywait"),
    "cryptography": _cryptography,
    "pycryptodome": _pycryptodome,
}


def get_backend(name: str) -> Backend:
    """
    Construct a backend from its identifier

    Parameters
    ----------
    name : str
        One of "synthetic", "busywait", "cryptography" or "pycryptodome"

    Returns
    -------
    Backend
        A fresh backend instance

    Raises
    ------
    ValueError
        If the name is unknown or the backend's library is not installed
    """
    key = name.strip().lower()
    if key not in BACKENDS:
        raise ValueError(
            "Unknown backend {0!r}. Must be one of {1}".format(name, ", ".join(BACKENDS))
        )
    try:
        return BACKENDS[key]()
    except ImportError as exc:
        raise ValueError(f"Backend {name!r} is not available: {exc}") from exc


def available_backends() -> Dict[str, bool]:
    """Backend identifiers and whether their library can be imported"""
    status = {}
    for key in BACKENDS:
        try:
            get_backend(key)
        except ValueError:
            status[key] = False
        else:
            status[key] = True
    return status
