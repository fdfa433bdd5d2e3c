"""FastAPI application wiring the session manager to the HTTP contract."""

from __future__ import annotations

import json
from typing import Optional

from fastapi import FastAPI, File, Form, Request, Response, UploadFile, status
from fastapi.responses import JSONResponse
from fastapi.middleware.cors import CORSMiddleware
from pydantic import ValidationError

from ..errors import (
    CorpusKeyError,
    ImageDecodeError,
    InvalidMaskError,
    MaskParseError,
    MaskProbeError,
    SessionNotFoundError,
    ShapeMismatchError,
    UpstreamFetchError,
)
from .config import Settings
from .schemas import (
    ClassifyParams,
    CorpusListing,
    CreateSessionRequest,
    CreateSessionResponse,
    ClassificationResponseModel,
    HealthResponse,
    InteractionRecordModel,
    SessionModel,
)
from .sessions import SessionManager

_ERROR_STATUS = {
    SessionNotFoundError: status.HTTP_404_NOT_FOUND,
    CorpusKeyError: status.HTTP_404_NOT_FOUND,
    ShapeMismatchError: status.HTTP_400_BAD_REQUEST,
    MaskParseError: status.HTTP_400_BAD_REQUEST,
    InvalidMaskError: status.HTTP_400_BAD_REQUEST,
    ImageDecodeError: status.HTTP_400_BAD_REQUEST,
    UpstreamFetchError: status.HTTP_502_BAD_GATEWAY,
}


def _parse_params(raw: Optional[str]) -> ClassifyParams:
    if raw is None or raw == "":
        return ClassifyParams()
    try:
        return ClassifyParams.model_validate(json.loads(raw))
    except (json.JSONDecodeError, ValidationError) as exc:
        raise MaskParseError(f"bad params JSON: {exc}") from exc


def create_app(
    settings: Optional[Settings] = None, manager: Optional[SessionManager] = None
) -> FastAPI:
    settings = settings or Settings.from_env()
    manager = manager or SessionManager(settings)

    app = FastAPI(title="maskprobe", version="0.1.0")
    app.state.manager = manager
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(MaskProbeError)
    async def domain_error_handler(request: Request, exc: MaskProbeError):
        code = status.HTTP_500_INTERNAL_SERVER_ERROR
        for error_type, mapped in _ERROR_STATUS.items():
            if isinstance(exc, error_type):
                code = mapped
                break
        # KeyError subclasses repr their message; unwrap args instead.
        detail = exc.args[0] if exc.args else str(exc)
        return JSONResponse(status_code=code, content={"detail": str(detail)})

    @app.get("/healthz", response_model=HealthResponse)
    def healthz():
        return HealthResponse(
            status="ok",
            model_id=manager.model.model_id,
            sessions=len(manager.list_sessions()),
        )

    @app.get("/corpus", response_model=CorpusListing)
    def corpus():
        return CorpusListing(selectors=manager.corpus_keys())

    @app.post(
        "/sessions",
        response_model=CreateSessionResponse,
        status_code=status.HTTP_201_CREATED,
    )
    def create_session(body: CreateSessionRequest):
        session = manager.create_session(body.source, body.selector, k=body.k)
        return CreateSessionResponse(
            session_id=session.session_id,
            image_url=f"/sessions/{session.session_id}/image",
            width=session.width,
            height=session.height,
            baseline=ClassificationResponseModel.from_domain(session.records[0].response),
        )

    @app.get("/sessions/{session_id}", response_model=SessionModel)
    def get_session(session_id: str):
        return SessionModel.from_domain(manager.get_session(session_id))

    @app.get("/sessions/{session_id}/image")
    def get_image(session_id: str):
        data, media_type = manager.get_image(session_id)
        return Response(content=data, media_type=media_type)

    @app.post("/sessions/{session_id}/classify", response_model=InteractionRecordModel)
    def classify_masked(
        session_id: str,
        mask: UploadFile = File(...),
        params: Optional[str] = Form(None),
    ):
        parsed = _parse_params(params)
        record = manager.classify_masked(
            session_id,
            mask.file.read(),
            fill=parsed.fill.to_policy(),
            k=parsed.k,
        )
        return InteractionRecordModel.from_domain(record)

    @app.post(
        "/sessions/{session_id}/classify-composited",
        response_model=InteractionRecordModel,
    )
    def classify_composited(
        session_id: str,
        image: UploadFile = File(...),
        params: Optional[str] = Form(None),
    ):
        parsed = _parse_params(params)
        record = manager.classify_composited(
            session_id,
            image.file.read(),
            fill=parsed.fill.to_policy(),
            k=parsed.k,
        )
        return InteractionRecordModel.from_domain(record)

    if settings.ui_dir and settings.ui_dir.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=settings.ui_dir, html=True), name="ui")

    return app
