"""Systematic grid occlusion: slide one filled square patch over the image
and record how the baseline class's confidence responds at each position."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..image import ImageBuffer
from ..inference import ModelHandle, classify, infer, normalize, resize_to_input, softmax
from ..masking import FillPolicy, Mask, composite


@dataclass
class OcclusionHeatmap:
    """Grid of baseline-class confidences, one cell per patch position."""

    baseline_class_index: int
    baseline_label: str
    baseline_confidence: float
    patch_size: int
    stride: int
    fill: FillPolicy
    model_id: str
    grid: np.ndarray  # (grid_h, grid_w) float64


def patch_mask(width: int, height: int, x0: int, y0: int, patch: int) -> Mask:
    bits = np.zeros((height, width), dtype=np.uint8)
    bits[y0 : y0 + patch, x0 : x0 + patch] = 1
    return Mask.from_array(bits)


def occlusion_sweep(
    image: ImageBuffer,
    model: ModelHandle,
    patch_size: int,
    stride: int,
    fill: FillPolicy | None = None,
    resize_variant: str = "direct",
) -> OcclusionHeatmap:
    if patch_size < 1:
        raise ValueError(f"patch_size must be >= 1, got {patch_size}")
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    if patch_size > image.width or patch_size > image.height:
        raise ValueError(
            f"patch {patch_size} exceeds image {image.width}x{image.height}"
        )
    fill = fill or FillPolicy.dataset_mean()

    baseline = classify(model, image, k=1, resize_variant=resize_variant)
    base_idx = baseline.top[0].class_index

    grid_w = (image.width - patch_size) // stride + 1
    grid_h = (image.height - patch_size) // stride + 1
    grid = np.zeros((grid_h, grid_w), dtype=np.float64)
    for gy in range(grid_h):
        for gx in range(grid_w):
            mask = patch_mask(image.width, image.height, gx * stride, gy * stride, patch_size)
            occluded = composite(image, mask, fill)
            tensor = normalize(resize_to_input(occluded, variant=resize_variant))
            probs = softmax(infer(model, tensor))
            grid[gy, gx] = probs[base_idx]

    return OcclusionHeatmap(
        baseline_class_index=base_idx,
        baseline_label=baseline.top[0].label,
        baseline_confidence=baseline.top[0].confidence,
        patch_size=patch_size,
        stride=stride,
        fill=fill,
        model_id=model.model_id,
        grid=grid,
    )
