"""Class label table loading."""

from __future__ import annotations

from pathlib import Path

from ..errors import ModelFileError


def load_labels(path: str | Path) -> list[str]:
    """Read a UTF-8 label file, one class name per line, index = line number."""
    path = Path(path)
    if not path.is_file():
        raise ModelFileError(f"labels file not found: {path}")
    text = path.read_text(encoding="utf-8")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines = lines[:-1]
    return [line.rstrip("\r") for line in lines]
