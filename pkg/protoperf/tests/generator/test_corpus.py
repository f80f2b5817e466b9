import json

import pytest

from protoperf.generator.config import GenConfig
from protoperf.generator.corpus import (
    CorpusInfo,
    all_ordered_pairs,
    generate_corpus,
    read_sidecar,
    sidecar_path,
    write_sidecar,
)
from protoperf.protocol.parser import read_corpus, write_corpus
from protoperf.shared.category import Category


def test_deterministic():
    a = generate_corpus(7, 50)
    b = generate_corpus(7, 50)
    assert a == b
    assert write_corpus(a) == write_corpus(b)
    assert generate_corpus(8, 50) != a


def test_prefix_stable():
    # a longer corpus from the same seed starts with the shorter one
    assert generate_corpus(3, 200)[:20] == generate_corpus(3, 20)


def test_ids():
    corpus = generate_corpus(0, 12)
    assert [p.id for p in corpus] == [f"p{i:04d}" for i in range(12)]
    assert generate_corpus(0, 10001)[-1].id == "p10000"


def test_respects_config():
    cfg = GenConfig(
        steps_range=(2, 3),
        ops_per_step_range=(1, 2),
        payload_choices=(10, 80, 300),
        asymmetric_keys=(1024,),
        principals=("Alice", "Bob"),
    )
    corpus = generate_corpus(11, 300, cfg)
    for p in corpus:
        assert 2 <= len(p.steps) <= 3
        for step in p.steps:
            assert 1 <= len(step.ops) <= 2
            assert {step.sender, step.receiver} == {"Alice", "Bob"}
            for op in step.ops:
                if op.category.is_asymmetric:
                    # 300 bytes do not fit one 1024-bit block
                    assert op.payload_bytes in (10, 80)
                    assert op.key_bits == 1024
                    assert op.invocations == 1
                else:
                    assert op.payload_bytes in (10, 80, 300)
    kinds = {op.category for p in corpus for op in p.ops}
    assert kinds == set(Category)


def test_capacity_fallback():
    cfg = GenConfig(payload_choices=(4096,), kind_weights={"aenc": 1.0})
    corpus = generate_corpus(5, 20, cfg)
    for op in (op for p in corpus for op in p.ops):
        assert op.payload_bytes == op.block_capacity


def test_kind_weights():
    cfg = GenConfig(kind_weights={"hash": 1.0})
    corpus = generate_corpus(1, 50, cfg)
    assert {op.category for p in corpus for op in p.ops} == {Category.Hash}


def test_serialization_round_trip():
    corpus = generate_corpus(99, 100)
    assert read_corpus(write_corpus(corpus)) == corpus


def test_invalid_n():
    with pytest.raises(ValueError):
        generate_corpus(0, 0)


def test_all_ordered_pairs():
    corpus = generate_corpus(0, 30)
    pairs = all_ordered_pairs(list(reversed(corpus)))
    assert len(pairs) == 30 * 29
    assert pairs[0][0].id == "p0000"
    assert pairs[0][1].id == "p0001"
    ids = {(p.id, q.id) for p, q in pairs}
    assert len(ids) == 30 * 29
    assert all((q, p) in ids for p, q in ids)
    assert all(p != q for p, q in ids)
    with pytest.raises(ValueError, match="two protocols"):
        all_ordered_pairs(corpus[:1])
    with pytest.raises(ValueError, match="unique"):
        all_ordered_pairs([corpus[0], corpus[0]])


@pytest.mark.slow
def test_all_ordered_pairs_thousand():
    assert len(all_ordered_pairs(generate_corpus(0, 1000))) == 999000


def test_sidecar(tmp_path):
    corpus_file = tmp_path / "corpus.txt"
    path = sidecar_path(corpus_file)
    assert path == tmp_path / "corpus.json"
    info = CorpusInfo(123, 10, GenConfig(steps_range=(1, 2)))
    write_sidecar(path, info)
    content = json.loads(path.read_text())
    assert content["seed"] == 123
    assert content["algorithm"] == info.algorithm
    loaded = read_sidecar(path)
    assert loaded == info
    assert generate_corpus(loaded.seed, loaded.n, loaded.config) == generate_corpus(
        123, 10, GenConfig(steps_range=(1, 2))
    )


def test_sidecar_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{")
    with pytest.raises(ValueError, match="not valid JSON"):
        read_sidecar(path)
    path.write_text(json.dumps({"seed": 1, "n": 2}))
    with pytest.raises(ValueError, match="requires"):
        read_sidecar(path)
    path.write_text(json.dumps({"seed": "1", "n": 2, "config": {}, "algorithm": "x"}))
    with pytest.raises(TypeError):
        read_sidecar(path)
