"""Durable session storage.

Layout under the store root:

    sessions/<session_id>.jsonl   one JSON document per line; line 0 is the
                                  session header, later lines are records,
                                  appended and flushed before a response
                                  leaves the service
    blobs/<sha256>                content-addressed payloads (original image
                                  bytes, canonical mask encodings)

Appends are atomic at line granularity: a crash can lose only the torn tail
line, never corrupt earlier records. On restore a torn tail is dropped; a
file corrupt anywhere else is quarantined (renamed aside) with a warning
and the service starts without it.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import time
from pathlib import Path

logger = logging.getLogger(__name__)


class SessionStore:
    def __init__(self, root: Path) -> None:
        self.root = Path(root)
        self.sessions_dir = self.root / "sessions"
        self.blobs_dir = self.root / "blobs"
        try:
            self.sessions_dir.mkdir(parents=True, exist_ok=True)
            self.blobs_dir.mkdir(parents=True, exist_ok=True)
            probe = self.root / ".write-probe"
            probe.write_bytes(b"")
            probe.unlink()
        except OSError as exc:
            raise RuntimeError(f"session store path {self.root} is not writable: {exc}") from exc

    # -- blobs ------------------------------------------------------------

    def put_blob(self, data: bytes) -> str:
        digest = hashlib.sha256(data).hexdigest()
        path = self.blobs_dir / digest
        if not path.exists():
            tmp = path.with_name(f".{digest}.tmp.{os.getpid()}")
            tmp.write_bytes(data)
            os.replace(tmp, path)
        return digest

    def get_blob(self, digest: str) -> bytes:
        return (self.blobs_dir / digest).read_bytes()

    # -- session logs ------------------------------------------------------

    def append_line(self, session_id: str, document: dict) -> None:
        path = self.sessions_dir / f"{session_id}.jsonl"
        line = json.dumps(document, separators=(",", ":"), sort_keys=True)
        with path.open("a", encoding="utf-8") as fh:
            fh.write(line + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    def _quarantine(self, path: Path, reason: str) -> None:
        target = path.with_name(f"{path.name}.corrupt-{int(time.time())}")
        logger.warning("quarantining corrupt session log %s (%s) -> %s", path, reason, target.name)
        os.replace(path, target)

    def load_all(self) -> dict[str, list[dict]]:
        """Parse every session log. Returns {session_id: [header, record...]}."""
        out: dict[str, list[dict]] = {}
        for path in sorted(self.sessions_dir.glob("*.jsonl")):
            raw_lines = path.read_text(encoding="utf-8").split("\n")
            if raw_lines and raw_lines[-1] == "":
                raw_lines.pop()
            documents = []
            corrupt_at = None
            for i, raw in enumerate(raw_lines):
                try:
                    documents.append(json.loads(raw))
                except json.JSONDecodeError:
                    corrupt_at = i
                    break
            if corrupt_at is not None:
                if corrupt_at == len(raw_lines) - 1 and documents:
                    logger.warning(
                        "dropping torn final record in %s (crash during append)", path.name
                    )
                    # Repair the log so future appends continue a clean file.
                    tmp = path.with_name(path.name + ".repair")
                    tmp.write_text(
                        "".join(line + "\n" for line in raw_lines[:-1]), encoding="utf-8"
                    )
                    os.replace(tmp, path)
                else:
                    self._quarantine(path, f"unparseable line {corrupt_at}")
                    continue
            if not documents or documents[0].get("type") != "session":
                self._quarantine(path, "missing session header")
                continue
            out[path.stem] = documents
        return out
