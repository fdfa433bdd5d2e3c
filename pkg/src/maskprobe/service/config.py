"""Service configuration: CLI flags override environment, which overrides
bundled defaults."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..assets import DEFAULT_CORPUS_DIR, DEFAULT_LABELS_PATH, DEFAULT_STUB_MODEL_PATH

ENV_MODEL = "XAI_MODEL_PATH"
ENV_LABELS = "XAI_LABELS_PATH"
ENV_CORPUS = "XAI_CORPUS_DIR"
ENV_STORE = "XAI_STORE_DIR"
ENV_BIND = "XAI_BIND"
ENV_REMOTE_URL = "XAI_REMOTE_IMAGE_URL"
ENV_UI_DIR = "XAI_UI_DIR"


@dataclass
class Settings:
    model_path: Path = field(default_factory=lambda: Path(DEFAULT_STUB_MODEL_PATH))
    labels_path: Path = field(default_factory=lambda: Path(DEFAULT_LABELS_PATH))
    corpus_dir: Path = field(default_factory=lambda: Path(DEFAULT_CORPUS_DIR))
    store_dir: Path = field(default_factory=lambda: Path("xai-store"))
    bind_host: str = "127.0.0.1"
    bind_port: int = 8000
    remote_image_url: Optional[str] = None
    ui_dir: Optional[Path] = None
    default_k: int = 1
    resize_variant: str = "direct"
    reproducible: bool = True
    remote_timeout: float = 10.0
    session_ttl_seconds: Optional[float] = None

    @classmethod
    def from_env(cls) -> "Settings":
        s = cls()
        if os.environ.get(ENV_MODEL):
            s.model_path = Path(os.environ[ENV_MODEL])
        if os.environ.get(ENV_LABELS):
            s.labels_path = Path(os.environ[ENV_LABELS])
        if os.environ.get(ENV_CORPUS):
            s.corpus_dir = Path(os.environ[ENV_CORPUS])
        if os.environ.get(ENV_STORE):
            s.store_dir = Path(os.environ[ENV_STORE])
        if os.environ.get(ENV_BIND):
            bind = os.environ[ENV_BIND]
            host, _, port = bind.rpartition(":")
            if host and port.isdigit():
                s.bind_host, s.bind_port = host, int(port)
            else:
                s.bind_host = bind
        if os.environ.get(ENV_REMOTE_URL):
            s.remote_image_url = os.environ[ENV_REMOTE_URL]
        if os.environ.get(ENV_UI_DIR):
            s.ui_dir = Path(os.environ[ENV_UI_DIR])
        return s
