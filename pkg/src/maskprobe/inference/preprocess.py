"""Resizing and normalization for ImageNet-style classifier input.

The default protocol is a direct bilinear resize to 224x224 with no crop,
so user-painted regions at the frame edges are never silently discarded.
The classic resize-256 / center-crop-224 variant stays available behind
``variant="crop"`` for parity studies.
"""

from __future__ import annotations

from typing import Literal

import numpy as np
from PIL import Image

from ..errors import ShapeMismatchError
from ..image import ImageBuffer

INPUT_SIZE = 224
_CROP_RESIZE = 256

IMAGENET_MEAN = (0.485, 0.456, 0.406)
IMAGENET_STD = (0.229, 0.224, 0.225)

ResizeVariant = Literal["direct", "crop"]


def resize_to_input(image: ImageBuffer, variant: ResizeVariant = "direct") -> ImageBuffer:
    """Produce the 224x224 RGB8 buffer the model consumes."""
    if variant == "direct":
        if image.width == INPUT_SIZE and image.height == INPUT_SIZE:
            return image
        resized = image.to_pil().resize((INPUT_SIZE, INPUT_SIZE), Image.BILINEAR)
        return ImageBuffer.from_array(np.asarray(resized))
    if variant == "crop":
        scale = _CROP_RESIZE / min(image.width, image.height)
        new_w = max(INPUT_SIZE, round(image.width * scale))
        new_h = max(INPUT_SIZE, round(image.height * scale))
        resized = image.to_pil().resize((new_w, new_h), Image.BILINEAR)
        left = (new_w - INPUT_SIZE) // 2
        top = (new_h - INPUT_SIZE) // 2
        cropped = resized.crop((left, top, left + INPUT_SIZE, top + INPUT_SIZE))
        return ImageBuffer.from_array(np.asarray(cropped))
    raise ValueError(f"unknown resize variant {variant!r}")


def normalize(image: ImageBuffer) -> np.ndarray:
    """Map a 224x224 RGB8 buffer to a (1, 3, 224, 224) float32 tensor.

    Per channel c: value = (pixel / 255 - mean_c) / std_c. Computed in
    float64 and cast once, so results are bit-deterministic for identical
    input bytes.
    """
    if image.width != INPUT_SIZE or image.height != INPUT_SIZE:
        raise ShapeMismatchError(
            f"normalize expects {INPUT_SIZE}x{INPUT_SIZE} input, got "
            f"{image.width}x{image.height}"
        )
    arr = image.pixels.astype(np.float64) / 255.0
    mean = np.asarray(IMAGENET_MEAN, dtype=np.float64)
    std = np.asarray(IMAGENET_STD, dtype=np.float64)
    arr = (arr - mean) / std
    tensor = arr.transpose(2, 0, 1)[np.newaxis].astype(np.float32)
    return np.ascontiguousarray(tensor)
