"""The binary occlusion grid and its basic queries."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import InvalidDimensionError


@dataclass
class Mask:
    """Per-pixel occlusion grid aligned to an image: 1 = painted, 0 = visible.

    ``bits`` is an (height, width) uint8 array frozen after construction;
    every editing operation returns a new Mask.
    """

    width: int
    height: int
    bits: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise InvalidDimensionError(
                f"mask dimensions must be >= 1, got {self.width}x{self.height}"
            )
        self.bits = np.ascontiguousarray(self.bits, dtype=np.uint8)
        if self.bits.shape != (self.height, self.width):
            raise InvalidDimensionError(
                f"bit array shape {self.bits.shape} does not match "
                f"{self.height}x{self.width}"
            )
        if not np.isin(self.bits, (0, 1)).all():
            raise InvalidDimensionError("mask cells must be exactly 0 or 1")
        self.bits.flags.writeable = False

    @classmethod
    def from_array(cls, bits: np.ndarray) -> "Mask":
        bits = np.asarray(bits)
        if bits.ndim != 2:
            raise InvalidDimensionError(f"expected (H, W) array, got shape {bits.shape}")
        return cls(width=bits.shape[1], height=bits.shape[0], bits=bits)


def new_mask(width: int, height: int) -> Mask:
    """All-zero mask of the given dimensions."""
    if width < 1 or height < 1:
        raise InvalidDimensionError(f"mask dimensions must be >= 1, got {width}x{height}")
    return Mask(width=width, height=height, bits=np.zeros((height, width), dtype=np.uint8))


def mask_coverage(mask: Mask) -> float:
    """Fraction of painted cells, in [0, 1]."""
    return float(np.count_nonzero(mask.bits)) / (mask.width * mask.height)
