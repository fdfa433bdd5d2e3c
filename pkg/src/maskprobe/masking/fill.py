"""Fill policies and mask compositing.

What occluded pixels become is the one knob the classifier actually sees.
The default is the ImageNet channel means scaled to 8 bits, which maps to
approximately zero in every channel after normalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional, Tuple

import numpy as np

from ..errors import ShapeMismatchError
from ..image import ImageBuffer
from .mask import Mask

FillKind = Literal["constant_color", "dataset_mean"]

DATASET_MEAN_RGB: Tuple[int, int, int] = (124, 116, 104)


@dataclass(frozen=True)
class FillPolicy:
    """Rule for the pixel values occluded regions take before inference."""

    kind: FillKind = "dataset_mean"
    color: Optional[Tuple[int, int, int]] = None

    def __post_init__(self) -> None:
        if self.kind not in ("constant_color", "dataset_mean"):
            raise ValueError(f"unknown fill kind {self.kind!r}")
        if self.kind == "constant_color":
            if self.color is None:
                raise ValueError("constant_color fill requires a color")
            color = tuple(int(c) for c in self.color)
            if len(color) != 3 or any(c < 0 or c > 255 for c in color):
                raise ValueError(f"fill color must be an RGB triple in [0, 255], got {self.color}")
            object.__setattr__(self, "color", color)
        elif self.color is not None:
            object.__setattr__(self, "color", None)

    def resolve(self) -> Tuple[int, int, int]:
        if self.kind == "dataset_mean":
            return DATASET_MEAN_RGB
        assert self.color is not None
        return self.color

    @classmethod
    def dataset_mean(cls) -> "FillPolicy":
        return cls(kind="dataset_mean")

    @classmethod
    def constant(cls, color: Tuple[int, int, int]) -> "FillPolicy":
        return cls(kind="constant_color", color=color)

    @classmethod
    def parse(cls, text: str) -> "FillPolicy":
        """Parse CLI spellings: ``mean``, ``black``, or ``#RRGGBB``."""
        text = text.strip().lower()
        if text in ("mean", "dataset_mean"):
            return cls.dataset_mean()
        if text == "black":
            return cls.constant((0, 0, 0))
        if text.startswith("#") and len(text) == 7:
            try:
                rgb = tuple(int(text[i : i + 2], 16) for i in (1, 3, 5))
            except ValueError as exc:
                raise ValueError(f"bad hex color {text!r}") from exc
            return cls.constant(rgb)  # type: ignore[arg-type]
        raise ValueError(f"unrecognized fill spec {text!r}; use mean, black, or #RRGGBB")

    def as_dict(self) -> dict:
        return {"kind": self.kind, "color": list(self.color) if self.color else None}

    @classmethod
    def from_dict(cls, data: dict) -> "FillPolicy":
        kind = data.get("kind", "dataset_mean")
        color = data.get("color")
        return cls(kind=kind, color=tuple(color) if color is not None else None)


def composite(image: ImageBuffer, mask: Mask, fill: FillPolicy) -> ImageBuffer:
    """Replace painted pixels with the fill color; visible pixels pass through
    bit-exactly."""
    if (image.width, image.height) != (mask.width, mask.height):
        raise ShapeMismatchError(
            f"image is {image.width}x{image.height} but mask is {mask.width}x{mask.height}"
        )
    out = np.array(image.pixels)
    out[mask.bits == 1] = np.asarray(fill.resolve(), dtype=np.uint8)
    return ImageBuffer(width=image.width, height=image.height, pixels=out)
