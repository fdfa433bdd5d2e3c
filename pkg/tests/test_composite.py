import numpy as np
import pytest

from maskprobe.errors import ShapeMismatchError
from maskprobe.image import ImageBuffer
from maskprobe.masking import DATASET_MEAN_RGB, FillPolicy, Mask, composite, new_mask

from oracles import composite_pixel


def random_image(rng, w, h):
    return ImageBuffer.from_array(rng.integers(0, 256, size=(h, w, 3), dtype=np.uint8))


def test_dataset_mean_resolves_to_imagenet_8bit_means():
    assert FillPolicy.dataset_mean().resolve() == (124, 116, 104)
    assert DATASET_MEAN_RGB == (124, 116, 104)


def test_constant_color_requires_color():
    with pytest.raises(ValueError):
        FillPolicy(kind="constant_color")


def test_constant_color_range_checked():
    with pytest.raises(ValueError):
        FillPolicy.constant((256, 0, 0))


def test_parse_fill_spellings():
    assert FillPolicy.parse("mean").kind == "dataset_mean"
    assert FillPolicy.parse("black").resolve() == (0, 0, 0)
    assert FillPolicy.parse("#ff8000").resolve() == (255, 128, 0)
    with pytest.raises(ValueError):
        FillPolicy.parse("#zzz")
    with pytest.raises(ValueError):
        FillPolicy.parse("chartreuse")


def test_zero_mask_is_identity():
    rng = np.random.default_rng(1)
    img = random_image(rng, 9, 7)
    out = composite(img, new_mask(9, 7), FillPolicy.dataset_mean())
    assert np.array_equal(out.pixels, img.pixels)


def test_full_mask_gives_constant_image():
    rng = np.random.default_rng(2)
    img = random_image(rng, 6, 5)
    ones = Mask.from_array(np.ones((5, 6), dtype=np.uint8))
    out = composite(img, ones, FillPolicy.constant((0, 0, 0)))
    assert (out.pixels == 0).all()


def test_two_by_two_mean_fill_example():
    # Frozen by enumerating all four pixels with the per-pixel oracle.
    r, g, b, w = (255, 0, 0), (0, 255, 0), (0, 0, 255), (255, 255, 255)
    img = ImageBuffer.from_array(np.array([[r, g], [b, w]], dtype=np.uint8))
    mask = Mask.from_array(np.array([[1, 0], [0, 0]], dtype=np.uint8))
    out = composite(img, mask, FillPolicy.dataset_mean())
    assert out.pixels.tolist() == [[[124, 116, 104], list(g)], [list(b), list(w)]]


def test_dimension_mismatch_rejected():
    rng = np.random.default_rng(3)
    with pytest.raises(ShapeMismatchError):
        composite(random_image(rng, 4, 4), new_mask(5, 4), FillPolicy.dataset_mean())


def test_composite_partition_property():
    # Every output pixel is either the input pixel or the fill, keyed by the
    # mask bit — checked cell by cell against the scalar oracle.
    rng = np.random.default_rng(4)
    for _ in range(25):
        w, h = int(rng.integers(1, 20)), int(rng.integers(1, 20))
        img = random_image(rng, w, h)
        bits = (rng.random((h, w)) < 0.5).astype(np.uint8)
        fill = FillPolicy.constant(tuple(int(c) for c in rng.integers(0, 256, 3)))
        out = composite(img, Mask.from_array(bits), fill)
        for y in range(h):
            for x in range(w):
                expected = composite_pixel(
                    tuple(img.pixels[y, x]), int(bits[y, x]), fill.resolve()
                )
                assert tuple(out.pixels[y, x]) == tuple(expected)


def test_input_image_never_mutated():
    rng = np.random.default_rng(5)
    img = random_image(rng, 8, 8)
    before = img.pixels.copy()
    ones = Mask.from_array(np.ones((8, 8), dtype=np.uint8))
    composite(img, ones, FillPolicy.constant((1, 2, 3)))
    assert np.array_equal(img.pixels, before)
