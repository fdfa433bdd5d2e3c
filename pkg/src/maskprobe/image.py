"""RGB image buffers and raster container decoding."""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import ImageDecodeError, InvalidDimensionError


@dataclass
class ImageBuffer:
    """A decoded RGB raster at canvas resolution.

    ``pixels`` is an (height, width, 3) uint8 array, frozen after
    construction so buffers can be shared across threads.
    """

    width: int
    height: int
    pixels: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise InvalidDimensionError(
                f"image dimensions must be >= 1, got {self.width}x{self.height}"
            )
        self.pixels = np.ascontiguousarray(self.pixels, dtype=np.uint8)
        if self.pixels.shape != (self.height, self.width, 3):
            raise InvalidDimensionError(
                f"pixel array shape {self.pixels.shape} does not match "
                f"{self.height}x{self.width}x3"
            )
        self.pixels.flags.writeable = False

    @classmethod
    def from_array(cls, pixels: np.ndarray) -> "ImageBuffer":
        pixels = np.asarray(pixels)
        if pixels.ndim != 3 or pixels.shape[2] != 3:
            raise InvalidDimensionError(f"expected (H, W, 3) array, got {pixels.shape}")
        return cls(width=pixels.shape[1], height=pixels.shape[0], pixels=pixels)

    def to_pil(self) -> Image.Image:
        return Image.fromarray(np.asarray(self.pixels), mode="RGB")


def decode_image(data: bytes) -> ImageBuffer:
    """Decode raster container bytes into an RGB8 buffer.

    Alpha, when present, is composited over white so transparent regions
    read as background rather than black.
    """
    try:
        img = Image.open(io.BytesIO(data))
        img.load()
    except (UnidentifiedImageError, OSError, ValueError) as exc:
        raise ImageDecodeError(f"cannot decode image bytes: {exc}") from exc

    if img.mode in ("RGBA", "LA", "PA") or (img.mode == "P" and "transparency" in img.info):
        rgba = img.convert("RGBA")
        background = Image.new("RGBA", rgba.size, (255, 255, 255, 255))
        img = Image.alpha_composite(background, rgba).convert("RGB")
    elif img.mode != "RGB":
        img = img.convert("RGB")
    return ImageBuffer.from_array(np.asarray(img))


def encode_image_png(image: ImageBuffer) -> bytes:
    """Encode a buffer as PNG (used for cached originals and fixtures)."""
    buf = io.BytesIO()
    image.to_pil().save(buf, format="PNG")
    return buf.getvalue()


def sniff_media_type(data: bytes) -> str:
    """Best-effort content type for serving stored image bytes."""
    if data[:8] == b"\x89PNG\r\n\x1a\n":
        return "image/png"
    if data[:3] == b"\xff\xd8\xff":
        return "image/jpeg"
    if data[:6] in (b"GIF87a", b"GIF89a"):
        return "image/gif"
    if data[:4] == b"RIFF" and data[8:12] == b"WEBP":
        return "image/webp"
    if data[:2] in (b"BM",):
        return "image/bmp"
    return "application/octet-stream"
