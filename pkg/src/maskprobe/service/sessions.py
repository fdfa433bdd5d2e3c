"""Session lifecycle: baseline classification, masked iterations, history.

A session pins one source image; every interaction appends a record holding
the mask hash, its coverage, the fill policy the model actually saw, and
the classification response. Record 0 is always the unmasked baseline.
"""

from __future__ import annotations

import logging
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional

import numpy as np

from ..errors import SessionNotFoundError, ShapeMismatchError
from ..image import ImageBuffer, decode_image, sniff_media_type
from ..inference import ClassificationResponse, classify, load_model
from ..masking import (
    FillPolicy,
    Mask,
    composite,
    decode_mask,
    encode_mask,
    mask_coverage,
    new_mask,
)
from .config import Settings
from .corpus import fetch_local, fetch_remote, list_corpus
from .store import SessionStore

logger = logging.getLogger(__name__)


def _utcnow() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass
class InteractionRecord:
    """One iteration of the mask-classify-observe loop."""

    iteration: int
    mask_hash: str
    mask_blob: str
    coverage: float
    response: ClassificationResponse
    fill: FillPolicy
    timestamp: str

    def as_dict(self) -> dict:
        return {
            "type": "record",
            "iteration": self.iteration,
            "mask_hash": self.mask_hash,
            "mask_blob": self.mask_blob,
            "coverage": self.coverage,
            "response": self.response.as_dict(),
            "fill": self.fill.as_dict(),
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "InteractionRecord":
        return cls(
            iteration=int(data["iteration"]),
            mask_hash=str(data["mask_hash"]),
            mask_blob=str(data["mask_blob"]),
            coverage=float(data["coverage"]),
            response=ClassificationResponse.from_dict(data["response"]),
            fill=FillPolicy.from_dict(data["fill"]),
            timestamp=str(data["timestamp"]),
        )


@dataclass
class Session:
    session_id: str
    image_ref: dict
    created_at: str
    width: int
    height: int
    image_blob: str
    k: int
    records: list[InteractionRecord] = field(default_factory=list)

    def header_dict(self) -> dict:
        return {
            "type": "session",
            "session_id": self.session_id,
            "image_ref": self.image_ref,
            "created_at": self.created_at,
            "width": self.width,
            "height": self.height,
            "image_blob": self.image_blob,
            "k": self.k,
        }

    def snapshot(self) -> "Session":
        return Session(
            session_id=self.session_id,
            image_ref=dict(self.image_ref),
            created_at=self.created_at,
            width=self.width,
            height=self.height,
            image_blob=self.image_blob,
            k=self.k,
            records=list(self.records),
        )


class SessionManager:
    """Owns the model, the store, and every live session.

    Per-session appends are serialized with a per-session lock; sessions are
    independent, so classification across sessions runs in parallel.
    """

    def __init__(self, settings: Optional[Settings] = None) -> None:
        self.settings = settings or Settings()
        self.store = SessionStore(self.settings.store_dir)
        self.model = load_model(
            self.settings.model_path,
            self.settings.labels_path,
            reproducible=self.settings.reproducible,
        )
        self._sessions: dict[str, Session] = {}
        self._images: dict[str, ImageBuffer] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        self._restore()

    # -- internals ---------------------------------------------------------

    def _restore(self) -> None:
        for session_id, documents in self.store.load_all().items():
            try:
                header, *record_docs = documents
                session = Session(
                    session_id=header["session_id"],
                    image_ref=dict(header["image_ref"]),
                    created_at=header["created_at"],
                    width=int(header["width"]),
                    height=int(header["height"]),
                    image_blob=header["image_blob"],
                    k=int(header.get("k", self.settings.default_k)),
                    records=[InteractionRecord.from_dict(d) for d in record_docs],
                )
                iterations = [r.iteration for r in session.records]
                if iterations != list(range(len(iterations))):
                    raise ValueError(f"non-contiguous iterations {iterations}")
            except (KeyError, ValueError, TypeError) as exc:
                logger.warning("skipping unrestorable session %s: %s", session_id, exc)
                continue
            self._sessions[session.session_id] = session
            self._locks[session.session_id] = threading.Lock()
        if self._sessions:
            logger.info("restored %d session(s)", len(self._sessions))

    def _expired(self, session: Session) -> bool:
        ttl = self.settings.session_ttl_seconds
        if ttl is None:
            return False
        created = datetime.fromisoformat(session.created_at)
        return (datetime.now(timezone.utc) - created).total_seconds() > ttl

    def _get(self, session_id: str) -> Session:
        session = self._sessions.get(session_id)
        if session is None or self._expired(session):
            raise SessionNotFoundError(f"no session {session_id!r}")
        return session

    def _image(self, session: Session) -> ImageBuffer:
        cached = self._images.get(session.session_id)
        if cached is None:
            cached = decode_image(self.store.get_blob(session.image_blob))
            self._images[session.session_id] = cached
        return cached

    def _append(self, session: Session, mask: Mask, fill: FillPolicy,
                response: ClassificationResponse) -> InteractionRecord:
        canonical = encode_mask(mask)
        blob = self.store.put_blob(canonical)
        record = InteractionRecord(
            iteration=len(session.records),
            mask_hash=f"sha256:{blob}",
            mask_blob=blob,
            coverage=mask_coverage(mask),
            response=response,
            fill=fill,
            timestamp=_utcnow(),
        )
        self.store.append_line(session.session_id, record.as_dict())
        session.records.append(record)
        return record

    # -- operations exposed over HTTP ---------------------------------------

    def create_session(
        self, source: str, selector: str, k: Optional[int] = None
    ) -> Session:
        """Fetch the image, compute the baseline classification, persist both."""
        if source == "local_corpus":
            image_bytes = fetch_local(self.settings.corpus_dir, selector)
        elif source == "remote_api":
            image_bytes = fetch_remote(
                selector, self.settings.remote_image_url, timeout=self.settings.remote_timeout
            )
        else:
            raise ValueError(f"unknown image source {source!r}")

        image = decode_image(image_bytes)
        k = k or self.settings.default_k
        image_blob = self.store.put_blob(image_bytes)
        session = Session(
            session_id=uuid.uuid4().hex,
            image_ref={"kind": source, "locator": selector, "sha256": image_blob},
            created_at=_utcnow(),
            width=image.width,
            height=image.height,
            image_blob=image_blob,
            k=k,
        )
        baseline = classify(
            self.model, image, k=k, resize_variant=self.settings.resize_variant
        )
        with self._registry_lock:
            self._sessions[session.session_id] = session
            self._images[session.session_id] = image
            self._locks[session.session_id] = threading.Lock()
        self.store.append_line(session.session_id, session.header_dict())
        self._append(session, new_mask(image.width, image.height), FillPolicy.dataset_mean(),
                     baseline)
        return session.snapshot()

    def classify_masked(
        self,
        session_id: str,
        mask_bytes: bytes,
        fill: Optional[FillPolicy] = None,
        k: Optional[int] = None,
    ) -> InteractionRecord:
        session = self._get(session_id)
        mask = decode_mask(mask_bytes)
        if (mask.width, mask.height) != (session.width, session.height):
            raise ShapeMismatchError(
                f"mask is {mask.width}x{mask.height} but session image is "
                f"{session.width}x{session.height}"
            )
        fill = fill or FillPolicy.dataset_mean()
        image = self._image(session)
        with self._locks[session_id]:
            masked = composite(image, mask, fill)
            response = classify(
                self.model, masked, k=k or session.k,
                resize_variant=self.settings.resize_variant,
            )
            return self._append(session, mask, fill, response)

    def classify_composited(
        self,
        session_id: str,
        image_bytes: bytes,
        fill: Optional[FillPolicy] = None,
        k: Optional[int] = None,
    ) -> InteractionRecord:
        """Paper-parity path: the client sends the already-masked RGB image.

        The model sees exactly the uploaded pixels; the implied mask is
        recovered as the per-pixel difference from the session original, so
        the record keeps the same shape as the mask route.
        """
        session = self._get(session_id)
        uploaded = decode_image(image_bytes)
        if (uploaded.width, uploaded.height) != (session.width, session.height):
            raise ShapeMismatchError(
                f"image is {uploaded.width}x{uploaded.height} but session image is "
                f"{session.width}x{session.height}"
            )
        original = self._image(session)
        differs = (uploaded.pixels != original.pixels).any(axis=2)
        derived = Mask.from_array(differs.astype(np.uint8))
        fill = fill or FillPolicy.dataset_mean()
        with self._locks[session_id]:
            response = classify(
                self.model, uploaded, k=k or session.k,
                resize_variant=self.settings.resize_variant,
            )
            return self._append(session, derived, fill, response)

    def get_session(self, session_id: str) -> Session:
        return self._get(session_id).snapshot()

    def get_image(self, session_id: str) -> tuple[bytes, str]:
        session = self._get(session_id)
        data = self.store.get_blob(session.image_blob)
        return data, sniff_media_type(data)

    def get_mask_bytes(self, session_id: str, iteration: int) -> bytes:
        session = self._get(session_id)
        if not 0 <= iteration < len(session.records):
            raise SessionNotFoundError(f"session {session_id!r} has no iteration {iteration}")
        return self.store.get_blob(session.records[iteration].mask_blob)

    def list_sessions(self) -> list[str]:
        return sorted(self._sessions)

    def corpus_keys(self) -> list[str]:
        return list_corpus(self.settings.corpus_dir)
