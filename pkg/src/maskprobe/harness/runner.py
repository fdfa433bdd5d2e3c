"""Replay a manifest: per image, one baseline plus each masked interaction.

Each row captures the top-1 class and confidence; ``delta`` is the row's
top-1 confidence minus the entry's baseline top-1 confidence (0.0 on the
baseline row itself). Per-interaction failures (mask/image dimension
mismatch, unreadable mask) are recorded as error rows and the run
continues; missing files abort before any classification starts.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from ..errors import ImageDecodeError, InvalidMaskError, MaskParseError, ShapeMismatchError
from ..image import decode_image
from ..inference import ModelHandle, classify
from ..masking import composite, decode_mask, mask_coverage
from .manifest import ExperimentManifest

logger = logging.getLogger(__name__)

BASELINE_LABEL = "baseline"


@dataclass
class ReportRow:
    name: str
    interaction: str
    coverage: float
    class_index: Optional[int]
    label: Optional[str]
    confidence: Optional[float]
    delta: Optional[float]
    error: Optional[str] = None


@dataclass
class ExperimentReport:
    rows: list[ReportRow] = field(default_factory=list)
    environment: dict = field(default_factory=dict)


def run_experiment(
    manifest: ExperimentManifest,
    model: ModelHandle,
    resize_variant: str = "direct",
) -> ExperimentReport:
    report = ExperimentReport(
        environment={
            "model_id": model.model_id,
            "fill": manifest.fill.as_dict(),
            "resize_variant": resize_variant,
            "k": manifest.k,
        }
    )
    for entry in manifest.entries:
        try:
            image = decode_image(entry.image_path.read_bytes())
        except (OSError, ImageDecodeError) as exc:
            # The manifest validated existence up front; a read failure here
            # is an asset problem worth aborting on, with the path attached.
            raise ImageDecodeError(f"entry {entry.name!r}: {entry.image_path}: {exc}") from exc

        baseline = classify(model, image, k=manifest.k, resize_variant=resize_variant)
        baseline_confidence = baseline.top[0].confidence
        report.rows.append(
            ReportRow(
                name=entry.name,
                interaction=BASELINE_LABEL,
                coverage=0.0,
                class_index=baseline.top[0].class_index,
                label=baseline.top[0].label,
                confidence=baseline_confidence,
                delta=0.0,
            )
        )

        for interaction in entry.interactions:
            try:
                mask = decode_mask(interaction.mask_path.read_bytes())
                if (mask.width, mask.height) != (image.width, image.height):
                    raise ShapeMismatchError(
                        f"mask is {mask.width}x{mask.height}, image is "
                        f"{image.width}x{image.height}"
                    )
            except (OSError, MaskParseError, InvalidMaskError, ShapeMismatchError) as exc:
                logger.warning("entry %s / %s failed: %s", entry.name, interaction.label, exc)
                report.rows.append(
                    ReportRow(
                        name=entry.name,
                        interaction=interaction.label,
                        coverage=0.0,
                        class_index=None,
                        label=None,
                        confidence=None,
                        delta=None,
                        error=str(exc),
                    )
                )
                continue

            response = classify(
                model,
                composite(image, mask, manifest.fill),
                k=manifest.k,
                resize_variant=resize_variant,
            )
            top = response.top[0]
            report.rows.append(
                ReportRow(
                    name=entry.name,
                    interaction=interaction.label,
                    coverage=mask_coverage(mask),
                    class_index=top.class_index,
                    label=top.label,
                    confidence=top.confidence,
                    delta=top.confidence - baseline_confidence,
                )
            )
    return report
