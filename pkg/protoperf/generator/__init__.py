from protoperf.generator.config import KINDS, GenConfig
from protoperf.generator.corpus import (
    CorpusInfo,
    all_ordered_pairs,
    generate_corpus,
    read_sidecar,
    sidecar_path,
    write_sidecar,
)
from protoperf.generator.rng import ALGORITHM_ID, CorpusRandom

__all__ = [
    "ALGORITHM_ID",
    "CorpusInfo",
    "CorpusRandom",
    "GenConfig",
    "KINDS",
    "all_ordered_pairs",
    "generate_corpus",
    "read_sidecar",
    "sidecar_path",
    "write_sidecar",
]
