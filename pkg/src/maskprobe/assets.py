"""Locations of bundled assets: labels, stub model, sample corpus, manifest."""

from __future__ import annotations

from pathlib import Path

ASSETS_DIR = Path(__file__).resolve().parent / "assets"

DEFAULT_LABELS_PATH = ASSETS_DIR / "imagenet_labels.txt"
DEFAULT_STUB_MODEL_PATH = ASSETS_DIR / "stub_model.json"
DEFAULT_CORPUS_DIR = ASSETS_DIR / "corpus"
DEFAULT_MANIFEST_PATH = ASSETS_DIR / "manifest.json"
MASKS_DIR = ASSETS_DIR / "masks"
