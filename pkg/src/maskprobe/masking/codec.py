"""Mask transport: a canonical single-channel PNG encoding.

Wire format: 8-bit grayscale, 0 = visible, 255 = painted; any other channel
value is rejected on decode. The encoder is deliberately hand-rolled and
fully pinned — grayscale color type 0, filter byte 0 on every row, one IDAT
whose zlib stream uses stored (uncompressed) deflate blocks — so any client
can reproduce the exact bytes and content hashes stay stable across
runtimes. Decoding accepts any conforming single-channel 8-bit PNG, not
just our own output.
"""

from __future__ import annotations

import hashlib
import io
import struct
import zlib

import numpy as np
from PIL import Image, UnidentifiedImageError

from ..errors import InvalidMaskError, MaskParseError
from .mask import Mask

_PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"
_STORED_BLOCK_MAX = 65535


def _chunk(tag: bytes, payload: bytes) -> bytes:
    return (
        struct.pack(">I", len(payload))
        + tag
        + payload
        + struct.pack(">I", zlib.crc32(tag + payload) & 0xFFFFFFFF)
    )


def _zlib_stored(raw: bytes) -> bytes:
    """zlib container holding only stored deflate blocks (no compression)."""
    out = bytearray(b"\x78\x01")
    n = len(raw)
    pos = 0
    while True:
        block = raw[pos : pos + _STORED_BLOCK_MAX]
        pos += len(block)
        final = pos >= n
        out.append(0x01 if final else 0x00)
        out += struct.pack("<H", len(block))
        out += struct.pack("<H", len(block) ^ 0xFFFF)
        out += block
        if final:
            break
    out += struct.pack(">I", zlib.adler32(raw) & 0xFFFFFFFF)
    return bytes(out)


def encode_mask(mask: Mask) -> bytes:
    """Serialize a mask to the canonical PNG byte stream."""
    ihdr = struct.pack(">IIBBBBB", mask.width, mask.height, 8, 0, 0, 0, 0)
    gray = (mask.bits * np.uint8(255)).astype(np.uint8)
    filtered = bytearray()
    for row in gray:
        filtered.append(0)
        filtered += row.tobytes()
    return (
        _PNG_SIGNATURE
        + _chunk(b"IHDR", ihdr)
        + _chunk(b"IDAT", _zlib_stored(bytes(filtered)))
        + _chunk(b"IEND", b"")
    )


def decode_mask(data: bytes) -> Mask:
    """Parse mask bytes back into a Mask.

    Raises MaskParseError for malformed containers and InvalidMaskError for
    well-formed rasters that are not single-channel 8-bit binary.
    """
    if not data:
        raise MaskParseError("empty mask payload")
    try:
        img = Image.open(io.BytesIO(data))
        img.load()
    except (UnidentifiedImageError, OSError, ValueError) as exc:
        raise MaskParseError(f"cannot decode mask bytes: {exc}") from exc

    if img.mode != "L":
        raise InvalidMaskError(
            f"mask must be a single-channel 8-bit raster, got mode {img.mode!r}"
        )
    arr = np.asarray(img, dtype=np.uint8)
    offending = arr[(arr != 0) & (arr != 255)]
    if offending.size:
        raise InvalidMaskError(
            f"mask channel values must be 0 or 255, found {int(offending[0])}"
        )
    return Mask.from_array((arr == 255).astype(np.uint8))


def mask_hash(mask: Mask) -> str:
    """Content hash over the canonical encoding, prefixed with the algorithm."""
    return "sha256:" + hashlib.sha256(encode_mask(mask)).hexdigest()
