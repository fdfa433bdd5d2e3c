"""Pydantic request/response models for the HTTP API.

Confidences cross the wire as fractions in [0, 1]; rendering as a
percentage is the client's job.
"""

from __future__ import annotations

from typing import Literal, Optional, Tuple

from pydantic import BaseModel, Field

from ..inference import ClassificationResponse
from ..masking import FillPolicy
from .sessions import InteractionRecord, Session


class FillModel(BaseModel):
    kind: Literal["constant_color", "dataset_mean"] = "dataset_mean"
    color: Optional[Tuple[int, int, int]] = None

    def to_policy(self) -> FillPolicy:
        return FillPolicy(kind=self.kind, color=self.color)

    @classmethod
    def from_policy(cls, fill: FillPolicy) -> "FillModel":
        return cls(kind=fill.kind, color=fill.color)


class ClassifyParams(BaseModel):
    """JSON part of the multipart classify requests."""

    fill: FillModel = Field(default_factory=FillModel)
    k: Optional[int] = Field(default=None, ge=1, le=1000)


class CreateSessionRequest(BaseModel):
    source: Literal["local_corpus", "remote_api"] = "local_corpus"
    selector: str
    k: Optional[int] = Field(default=None, ge=1, le=1000)


class ClassificationResultModel(BaseModel):
    class_index: int
    label: str
    confidence: float


class ClassificationResponseModel(BaseModel):
    top: list[ClassificationResultModel]
    model_id: str
    inference_millis: float

    @classmethod
    def from_domain(cls, response: ClassificationResponse) -> "ClassificationResponseModel":
        return cls(**response.as_dict())


class InteractionRecordModel(BaseModel):
    iteration: int
    mask_hash: str
    coverage: float
    response: ClassificationResponseModel
    fill: FillModel
    timestamp: str

    @classmethod
    def from_domain(cls, record: InteractionRecord) -> "InteractionRecordModel":
        return cls(
            iteration=record.iteration,
            mask_hash=record.mask_hash,
            coverage=record.coverage,
            response=ClassificationResponseModel.from_domain(record.response),
            fill=FillModel.from_policy(record.fill),
            timestamp=record.timestamp,
        )


class ImageRefModel(BaseModel):
    kind: str
    locator: str
    sha256: str


class SessionModel(BaseModel):
    session_id: str
    image_ref: ImageRefModel
    created_at: str
    width: int
    height: int
    records: list[InteractionRecordModel]

    @classmethod
    def from_domain(cls, session: Session) -> "SessionModel":
        return cls(
            session_id=session.session_id,
            image_ref=ImageRefModel(**session.image_ref),
            created_at=session.created_at,
            width=session.width,
            height=session.height,
            records=[InteractionRecordModel.from_domain(r) for r in session.records],
        )


class CreateSessionResponse(BaseModel):
    session_id: str
    image_url: str
    width: int
    height: int
    baseline: ClassificationResponseModel


class CorpusListing(BaseModel):
    selectors: list[str]


class HealthResponse(BaseModel):
    status: str
    model_id: str
    sessions: int
