"""Image sources: the bundled local corpus and a pluggable remote API."""

from __future__ import annotations

from pathlib import Path
from typing import Optional

import httpx

from ..errors import CorpusKeyError, UpstreamFetchError

_IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg", ".bmp", ".gif", ".webp")


def list_corpus(corpus_dir: Path) -> list[str]:
    """Selectors available in the local corpus (file stems, sorted)."""
    if not corpus_dir.is_dir():
        return []
    return sorted(
        p.stem for p in corpus_dir.iterdir() if p.suffix.lower() in _IMAGE_SUFFIXES
    )


def fetch_local(corpus_dir: Path, selector: str) -> bytes:
    for suffix in _IMAGE_SUFFIXES:
        candidate = corpus_dir / f"{selector}{suffix}"
        if candidate.is_file():
            return candidate.read_bytes()
    available = ", ".join(list_corpus(corpus_dir)) or "(none)"
    raise CorpusKeyError(f"no corpus image named {selector!r}; available: {available}")


def fetch_remote(selector: str, url_template: Optional[str], timeout: float = 10.0) -> bytes:
    """Single attempt against the configured image API; no retries.

    ``url_template`` may contain ``{selector}``; without a template the
    selector itself must be a full URL.
    """
    if url_template:
        url = url_template.replace("{selector}", selector)
    else:
        url = selector
    if not url.startswith(("http://", "https://")):
        raise UpstreamFetchError(
            f"remote fetch needs a URL, got {url!r}; configure an image API template"
        )
    try:
        response = httpx.get(url, timeout=timeout, follow_redirects=True)
        response.raise_for_status()
    except httpx.HTTPError as exc:
        raise UpstreamFetchError(
            f"image API fetch failed ({exc}); the request is safe to retry"
        ) from exc
    return response.content
