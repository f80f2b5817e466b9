"""
Deterministic random protocol corpora
"""
from dataclasses import dataclass
from itertools import permutations
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from protoperf.generator.config import GenConfig
from protoperf.generator.rng import ALGORITHM_ID, CorpusRandom
from protoperf.protocol.model import CryptoOp, Protocol, ProtocolStep
from protoperf.shared.category import Category
from protoperf.shared.typed_getters import get_int, get_mapping, get_string
from protoperf.typing import PathLike

__all__ = [
    "CorpusInfo",
    "all_ordered_pairs",
    "generate_corpus",
    "read_sidecar",
    "sidecar_path",
    "write_sidecar",
]

logger = logging.getLogger(__name__)

_CATEGORIES = tuple(Category)


def _draw_op(rng: CorpusRandom, cfg: GenConfig) -> CryptoOp:
    category = _CATEGORIES[rng.weighted_index(cfg.kind_weights)]
    if category.is_symmetric:
        return CryptoOp(
            category,
            rng.choice(cfg.payload_choices),
            algorithm=rng.choice(cfg.symmetric_algorithms),
            mode=rng.choice(cfg.symmetric_modes),
            key_bits=rng.choice(cfg.symmetric_keys),
        )
    if category.is_hash:
        return CryptoOp(
            category,
            rng.choice(cfg.payload_choices),
            algorithm=rng.choice(cfg.hash_algorithms),
        )
    algorithm = rng.choice(cfg.asymmetric_algorithms)
    key_bits = rng.choice(cfg.asymmetric_keys)
    capacity = key_bits // 8 - 11
    fitting = [s for s in cfg.payload_choices if s <= capacity]
    size = rng.choice(fitting) if fitting else capacity
    return CryptoOp(category, size, algorithm=algorithm, key_bits=key_bits)


def _draw_step(rng: CorpusRandom, cfg: GenConfig) -> ProtocolStep:
    sender = rng.choice(cfg.principals)
    receiver = rng.choice([p for p in cfg.principals if p != sender])
    n_ops = rng.integer(*cfg.ops_per_step_range)
    return ProtocolStep(sender, receiver, tuple(_draw_op(rng, cfg) for _ in range(n_ops)))


def generate_corpus(seed: int, n: int, cfg: Optional[GenConfig] = None) -> List[Protocol]:
    """
    Generate a reproducible corpus of random protocols

    Parameters
    ----------
    seed : int
        Seed in [0, 2**64)
    n : int
        Number of protocols, at least 1
    cfg : GenConfig, optional
        Distribution of the protocols. Default is ``GenConfig()``.

    Returns
    -------
    list[Protocol]
        Protocols with ids ``p0000``, ``p0001``, ... (wider when n exceeds
        10000)

    Notes
    -----
    All draws come from a single ``CorpusRandom`` in a fixed order: for each
    protocol the number of steps, then for each step the sender, the
    receiver and the number of operations, then for each operation its kind
    followed by the attributes of that kind. The result is a pure function of
    (seed, n, cfg).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    cfg = GenConfig() if cfg is None else cfg
    rng = CorpusRandom(seed)
    width = max(4, len(str(n - 1)))
    corpus = []
    for i in range(n):
        n_steps = rng.integer(*cfg.steps_range)
        steps = tuple(_draw_step(rng, cfg) for _ in range(n_steps))
        corpus.append(Protocol(f"p{i:0{width}d}", steps))
    logger.info("Generated %d protocols from seed %d", n, seed)
    return corpus


def all_ordered_pairs(corpus: Sequence[Protocol]) -> List[Tuple[Protocol, Protocol]]:
    """
    All ordered pairs of distinct protocols

    Parameters
    ----------
    corpus : Sequence[Protocol]
        At least two protocols with distinct ids

    Returns
    -------
    list[tuple[Protocol, Protocol]]
        ``n * (n - 1)`` pairs in lexicographic id order, each unordered pair
        appearing once per orientation
    """
    if len(corpus) < 2:
        raise ValueError("At least two protocols are required to form pairs")
    ordered = sorted(corpus, key=lambda p: p.id)
    ids = [p.id for p in ordered]
    if len(set(ids)) != len(ids):
        raise ValueError("Protocol ids must be unique within a corpus")
    return list(permutations(ordered, 2))


@dataclass(frozen=True)
class CorpusInfo:
    """Provenance of a generated corpus, stored in its sidecar file"""

    seed: int
    n: int
    config: GenConfig
    algorithm: str = ALGORITHM_ID

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "n": self.n,
            "config": self.config.to_dict(),
            "algorithm": self.algorithm,
        }


def sidecar_path(corpus_path: PathLike) -> Path:
    """Sidecar of a corpus file: the same path with a ``.json`` suffix"""
    return Path(corpus_path).with_suffix(".json")


def write_sidecar(path: PathLike, info: CorpusInfo) -> None:
    """Write corpus provenance as JSON"""
    text = json.dumps(info.to_dict(), indent=2, sort_keys=True) + "\n"
    with open(path, "w", encoding="utf-8", newline="\n") as out:
        out.write(text)


def read_sidecar(path: PathLike) -> CorpusInfo:
    """
    Read corpus provenance

    Raises
    ------
    ValueError
        If the file is not JSON or a field is missing
    TypeError
        If a field has the wrong type
    """
    try:
        d = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"Corpus sidecar {path} is not valid JSON: {exc}") from exc
    seed = get_int(d, "seed")
    n = get_int(d, "n")
    config = get_mapping(d, "config")
    algorithm = get_string(d, "algorithm")
    if seed is None or n is None or config is None or algorithm is None:
        raise ValueError("Corpus sidecar requires seed, n, config and algorithm")
    return CorpusInfo(seed, n, GenConfig.from_dict(config), algorithm)
