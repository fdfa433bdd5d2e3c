"""Experiment manifests: which images, which masks, in what order."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..errors import ManifestError
from ..masking import FillPolicy


@dataclass
class ManifestInteraction:
    label: str
    mask_path: Path


@dataclass
class ManifestEntry:
    name: str
    image_path: Path
    interactions: list[ManifestInteraction] = field(default_factory=list)


@dataclass
class ExperimentManifest:
    entries: list[ManifestEntry]
    fill: FillPolicy = field(default_factory=FillPolicy.dataset_mean)
    k: int = 1


def load_manifest(path: str | Path, fill_override: Optional[FillPolicy] = None) -> ExperimentManifest:
    """Parse and validate a manifest file.

    Relative image/mask paths resolve against the manifest's directory.
    Every referenced file must exist; interaction labels must be unique per
    entry. Violations raise ManifestError with the offending path or label.
    """
    path = Path(path)
    if not path.is_file():
        raise ManifestError(f"manifest not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ManifestError(f"cannot parse manifest {path}: {exc}") from exc

    base = path.parent
    try:
        fill = fill_override or FillPolicy.from_dict(data.get("fill", {}))
        k = int(data.get("k", 1))
        entries = []
        for raw_entry in data.get("entries", []):
            entry = ManifestEntry(
                name=str(raw_entry["name"]),
                image_path=_resolve(base, raw_entry["image_path"]),
                interactions=[
                    ManifestInteraction(
                        label=str(raw["label"]),
                        mask_path=_resolve(base, raw["mask_path"]),
                    )
                    for raw in raw_entry.get("interactions", [])
                ],
            )
            entries.append(entry)
    except (KeyError, TypeError, ValueError) as exc:
        raise ManifestError(f"malformed manifest {path}: {exc}") from exc

    manifest = ExperimentManifest(entries=entries, fill=fill, k=k)
    _validate(manifest)
    return manifest


def _resolve(base: Path, raw: str) -> Path:
    p = Path(raw)
    return p if p.is_absolute() else (base / p)


def _validate(manifest: ExperimentManifest) -> None:
    if not 1 <= manifest.k <= 1000:
        raise ManifestError(f"k must be in [1, 1000], got {manifest.k}")
    for entry in manifest.entries:
        if not entry.image_path.is_file():
            raise ManifestError(f"entry {entry.name!r}: image not found: {entry.image_path}")
        labels = [i.label for i in entry.interactions]
        if len(set(labels)) != len(labels):
            raise ManifestError(f"entry {entry.name!r}: duplicate interaction labels {labels}")
        for interaction in entry.interactions:
            if not interaction.mask_path.is_file():
                raise ManifestError(
                    f"entry {entry.name!r}, interaction {interaction.label!r}: "
                    f"mask not found: {interaction.mask_path}"
                )
