import numpy as np
import pytest

from maskprobe.assets import DEFAULT_LABELS_PATH, DEFAULT_STUB_MODEL_PATH
from maskprobe.image import ImageBuffer
from maskprobe.inference import load_model


@pytest.fixture(scope="session")
def stub_model():
    return load_model(DEFAULT_STUB_MODEL_PATH, DEFAULT_LABELS_PATH, reproducible=True)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240500)


def make_image(rng, w, h):
    return ImageBuffer.from_array(rng.integers(0, 256, size=(h, w, 3), dtype=np.uint8))
