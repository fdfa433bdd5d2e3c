import io

import numpy as np
import pytest
from PIL import Image

from maskprobe.errors import ImageDecodeError, InvalidDimensionError
from maskprobe.image import ImageBuffer, decode_image, encode_image_png, sniff_media_type


def png_bytes(img):
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


def test_decode_single_pixel():
    img = Image.new("RGB", (1, 1), (10, 20, 30))
    out = decode_image(png_bytes(img))
    assert (out.width, out.height) == (1, 1)
    assert out.pixels.tolist() == [[[10, 20, 30]]]


def test_truncated_stream_is_decode_error():
    data = png_bytes(Image.new("RGB", (16, 16), (1, 2, 3)))
    with pytest.raises(ImageDecodeError):
        decode_image(data[:20])


def test_garbage_is_decode_error():
    with pytest.raises(ImageDecodeError):
        decode_image(b"\x00\x01\x02 nothing rasterish")


def test_transparent_pixel_composited_over_white():
    img = Image.new("RGBA", (1, 1), (0, 0, 0, 0))
    out = decode_image(png_bytes(img))
    assert out.pixels.tolist() == [[[255, 255, 255]]]


def test_half_alpha_composites_with_alpha_over_white_formula():
    # alpha-over-white: out = round(a*fg + (1-a)*255) for a = 128/255.
    img = Image.new("RGBA", (1, 1), (0, 0, 0, 128))
    out = decode_image(png_bytes(img))
    value = out.pixels[0, 0, 0]
    assert abs(int(value) - round((1 - 128 / 255) * 255)) <= 1


def test_grayscale_promoted_to_rgb():
    img = Image.new("L", (2, 2), 77)
    out = decode_image(png_bytes(img))
    assert (out.pixels == 77).all()


def test_jpeg_container_supported():
    img = Image.new("RGB", (8, 8), (200, 100, 50))
    buf = io.BytesIO()
    img.save(buf, format="JPEG")
    out = decode_image(buf.getvalue())
    assert (out.width, out.height) == (8, 8)


def test_buffer_shape_validation():
    with pytest.raises(InvalidDimensionError):
        ImageBuffer(width=2, height=2, pixels=np.zeros((2, 3, 3), dtype=np.uint8))
    with pytest.raises(InvalidDimensionError):
        ImageBuffer.from_array(np.zeros((2, 2), dtype=np.uint8))


def test_encode_round_trip():
    rng = np.random.default_rng(9)
    img = ImageBuffer.from_array(rng.integers(0, 256, (11, 13, 3), dtype=np.uint8))
    back = decode_image(encode_image_png(img))
    assert np.array_equal(back.pixels, img.pixels)


def test_sniff_media_type():
    assert sniff_media_type(png_bytes(Image.new("RGB", (1, 1)))) == "image/png"
    buf = io.BytesIO()
    Image.new("RGB", (1, 1)).save(buf, format="JPEG")
    assert sniff_media_type(buf.getvalue()) == "image/jpeg"
    assert sniff_media_type(b"????????") == "application/octet-stream"
