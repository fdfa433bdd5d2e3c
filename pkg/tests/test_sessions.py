import hashlib

import numpy as np
import pytest

from maskprobe.assets import DEFAULT_CORPUS_DIR
from maskprobe.errors import (
    CorpusKeyError,
    SessionNotFoundError,
    ShapeMismatchError,
    UpstreamFetchError,
)
from maskprobe.image import ImageBuffer, encode_image_png
from maskprobe.masking import FillPolicy, Mask, encode_mask, new_mask
from maskprobe.service import SessionManager, Settings


def make_settings(tmp_path, **overrides) -> Settings:
    s = Settings(store_dir=tmp_path / "store", corpus_dir=DEFAULT_CORPUS_DIR)
    for key, value in overrides.items():
        setattr(s, key, value)
    return s


def make_corpus(tmp_path, images: dict) -> None:
    corpus = tmp_path / "corpus"
    corpus.mkdir(exist_ok=True)
    for name, buf in images.items():
        (corpus / f"{name}.png").write_bytes(encode_image_png(buf))


def top_pairs(response):
    return [(r.class_index, r.confidence) for r in response.top]


def test_create_session_has_baseline_record(tmp_path):
    manager = SessionManager(make_settings(tmp_path))
    session = manager.create_session("local_corpus", "golden_retriever")
    assert len(session.records) == 1
    baseline = session.records[0]
    assert baseline.iteration == 0
    assert baseline.coverage == 0.0
    assert baseline.response.top
    assert session.image_ref["locator"] == "golden_retriever"


def test_unknown_corpus_key(tmp_path):
    manager = SessionManager(make_settings(tmp_path))
    with pytest.raises(CorpusKeyError):
        manager.create_session("local_corpus", "no_such_key")
    assert manager.list_sessions() == []


def test_unreachable_remote_api_leaves_no_session(tmp_path):
    # Port 1 on localhost refuses connections immediately.
    settings = make_settings(tmp_path, remote_image_url="http://127.0.0.1:1/{selector}",
                             remote_timeout=2.0)
    manager = SessionManager(settings)
    with pytest.raises(UpstreamFetchError, match="retry"):
        manager.create_session("remote_api", "anything")
    assert manager.list_sessions() == []
    assert not list((tmp_path / "store" / "sessions").glob("*.jsonl"))


def test_empty_mask_reproduces_baseline(tmp_path):
    manager = SessionManager(make_settings(tmp_path))
    session = manager.create_session("local_corpus", "soccer_ball", k=3)
    empty = encode_mask(new_mask(session.width, session.height))
    record = manager.classify_masked(session.session_id, empty)
    assert record.iteration == 1
    assert record.coverage == 0.0
    assert top_pairs(record.response) == top_pairs(session.records[0].response)


def test_mask_dimension_mismatch(tmp_path):
    manager = SessionManager(make_settings(tmp_path))
    session = manager.create_session("local_corpus", "coffee_mug")
    tiny = encode_mask(new_mask(100, 100))
    with pytest.raises(ShapeMismatchError):
        manager.classify_masked(session.session_id, tiny)


def test_unknown_session(tmp_path):
    manager = SessionManager(make_settings(tmp_path))
    with pytest.raises(SessionNotFoundError):
        manager.get_session("doesnotexist")
    with pytest.raises(SessionNotFoundError):
        manager.classify_masked("doesnotexist", b"")


def test_full_mask_is_image_independent(tmp_path, rng):
    w, h = 96, 64
    make_corpus(
        tmp_path,
        {
            "img_a": ImageBuffer.from_array(rng.integers(0, 256, (h, w, 3), dtype=np.uint8)),
            "img_b": ImageBuffer.from_array(rng.integers(0, 256, (h, w, 3), dtype=np.uint8)),
        },
    )
    manager = SessionManager(make_settings(tmp_path, corpus_dir=tmp_path / "corpus"))
    full = encode_mask(Mask.from_array(np.ones((h, w), dtype=np.uint8)))
    fill = FillPolicy.dataset_mean()
    session_a = manager.create_session("local_corpus", "img_a", k=5)
    session_b = manager.create_session("local_corpus", "img_b", k=5)
    rec_a = manager.classify_masked(session_a.session_id, full, fill=fill)
    rec_b = manager.classify_masked(session_b.session_id, full, fill=fill)
    assert top_pairs(rec_a.response) == top_pairs(rec_b.response)
    assert rec_a.coverage == 1.0


def test_history_grows_gaplessly(tmp_path):
    manager = SessionManager(make_settings(tmp_path))
    session = manager.create_session("local_corpus", "bakery")
    assert len(manager.get_session(session.session_id).records) == 1
    empty = encode_mask(new_mask(session.width, session.height))
    manager.classify_masked(session.session_id, empty)
    manager.classify_masked(session.session_id, empty)
    history = manager.get_session(session.session_id)
    assert [r.iteration for r in history.records] == [0, 1, 2]


def test_history_snapshot_is_immutable(tmp_path):
    manager = SessionManager(make_settings(tmp_path))
    session = manager.create_session("local_corpus", "cinema")
    snapshot = manager.get_session(session.session_id)
    empty = encode_mask(new_mask(session.width, session.height))
    manager.classify_masked(session.session_id, empty)
    assert len(snapshot.records) == 1  # unaffected by later appends


def test_persist_restore_round_trip(tmp_path):
    settings = make_settings(tmp_path)
    manager = SessionManager(settings)
    ids = {}
    for key in ("golden_retriever", "soccer_ball", "cinema"):
        session = manager.create_session("local_corpus", key)
        empty = encode_mask(new_mask(session.width, session.height))
        manager.classify_masked(session.session_id, empty)
        ids[session.session_id] = 2

    # Fresh manager over the same store simulates a process restart.
    restored = SessionManager(make_settings(tmp_path))
    assert sorted(restored.list_sessions()) == sorted(ids)
    for session_id, count in ids.items():
        history = restored.get_session(session_id)
        assert len(history.records) == count
        for before, after in zip(
            manager.get_session(session_id).records, history.records
        ):
            assert before.mask_hash == after.mask_hash
            assert top_pairs(before.response) == top_pairs(after.response)


def test_restored_hashes_match_blob_recomputation(tmp_path):
    manager = SessionManager(make_settings(tmp_path))
    session = manager.create_session("local_corpus", "coffee_mug")
    restored = SessionManager(make_settings(tmp_path))
    for record in restored.get_session(session.session_id).records:
        blob = restored.store.get_blob(record.mask_blob)
        assert record.mask_hash == "sha256:" + hashlib.sha256(blob).hexdigest()


def test_classify_composited_unchanged_image_is_baseline(tmp_path):
    manager = SessionManager(make_settings(tmp_path))
    session = manager.create_session("local_corpus", "golden_retriever")
    original, _ = manager.get_image(session.session_id)
    record = manager.classify_composited(session.session_id, original)
    assert record.coverage == 0.0
    assert top_pairs(record.response) == top_pairs(session.records[0].response)


def test_classify_composited_detects_changed_pixels(tmp_path):
    manager = SessionManager(make_settings(tmp_path))
    session = manager.create_session("local_corpus", "soccer_ball")
    image = manager._image(manager._get(session.session_id))
    pixels = np.array(image.pixels)
    pixels[:16, :16] = (124, 116, 104)
    edited = ImageBuffer.from_array(pixels)
    record = manager.classify_composited(session.session_id, encode_image_png(edited))
    expected = np.count_nonzero((pixels != image.pixels).any(axis=2)) / (
        session.width * session.height
    )
    assert record.coverage == pytest.approx(expected)
    assert record.coverage > 0


def test_session_ttl_expiry(tmp_path):
    manager = SessionManager(make_settings(tmp_path, session_ttl_seconds=0.0))
    session = manager.create_session("local_corpus", "bakery")
    with pytest.raises(SessionNotFoundError):
        manager.get_session(session.session_id)
