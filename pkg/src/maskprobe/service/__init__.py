"""HTTP session service: serve images, accept masks, return classifications."""

from .config import Settings
from .sessions import InteractionRecord, Session, SessionManager
from .app import create_app

__all__ = ["Settings", "Session", "InteractionRecord", "SessionManager", "create_app"]
