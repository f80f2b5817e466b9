"""
Algorithm categories shared by the cost models, the benchmark harness and
the protocol language
"""
from enum import Enum
from typing import Dict, Tuple

__all__ = ["Category", "REGISTRY_KEYS", "category_from_string"]


class Category(Enum):
    """
    The five classes of cryptographic operation that carry a cost model.

    Each member knows its registry key (``"symmetric.encrypt"``), its DSL
    keyword (``"senc"``) and the family/operation pair used in CSV files.
    """

    SymmetricEncrypt = "symmetric.encrypt"
    SymmetricDecrypt = "symmetric.decrypt"
    Hash = "hash.digest"
    AsymmetricEncrypt = "asymmetric.encrypt"
    AsymmetricDecrypt = "asymmetric.decrypt"

    @property
    def key(self) -> str:
        """Registry key"""
        return self.value

    @property
    def family(self) -> str:
        """Algorithm family: symmetric, hash or asymmetric"""
        return self.value.split(".")[0]

    @property
    def operation(self) -> str:
        """Operation within the family: encrypt, decrypt or digest"""
        return self.value.split(".")[1]

    @property
    def keyword(self) -> str:
        """DSL keyword"""
        return _KEYWORDS[self]

    @property
    def is_symmetric(self) -> bool:
        return self.family == "symmetric"

    @property
    def is_asymmetric(self) -> bool:
        return self.family == "asymmetric"

    @property
    def is_hash(self) -> bool:
        return self.family == "hash"

    @property
    def default_algorithm(self) -> str:
        return {"symmetric": "aes", "hash": "sha1", "asymmetric": "rsa"}[self.family]

    @classmethod
    def from_family(cls, family: str, operation: str) -> "Category":
        return category_from_string(f"{family}.{operation}")


_KEYWORDS: Dict[Category, str] = {
    Category.SymmetricEncrypt: "senc",
    Category.SymmetricDecrypt: "sdec",
    Category.Hash: "hash",
    Category.AsymmetricEncrypt: "aenc",
    Category.AsymmetricDecrypt: "adec",
}

REGISTRY_KEYS: Tuple[str, ...] = tuple(c.key for c in Category)

_ALIASES: Dict[str, Category] = {}
for _cat in Category:
    _ALIASES[_cat.key] = _cat
    _ALIASES[_cat.keyword] = _cat
    _ALIASES[_cat.name.lower()] = _cat
_ALIASES["hash"] = Category.Hash


def category_from_string(value: str) -> Category:
    """
    Resolve a category from a registry key, DSL keyword or member name

    Parameters
    ----------
    value : str
        One of ``"symmetric.encrypt"``, ``"senc"``, ``"symmetricencrypt"``, ...

    Returns
    -------
    Category
        The matching category
    """
    try:
        return _ALIASES[value.strip().lower()]
    except KeyError:
        raise ValueError(
            f"Unknown algorithm category {value!r}. Must be one of "
            + ", ".join(sorted(set(REGISTRY_KEYS) | set(_KEYWORDS.values())))
        )
