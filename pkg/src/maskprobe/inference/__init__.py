"""Image preprocessing, model loading, and classification."""

from .preprocess import (
    IMAGENET_MEAN,
    IMAGENET_STD,
    INPUT_SIZE,
    normalize,
    resize_to_input,
)
from .labels import load_labels
from .models import ModelHandle, infer, load_model
from .classify import (
    ClassificationResult,
    ClassificationResponse,
    classify,
    softmax,
    top_k,
)

__all__ = [
    "INPUT_SIZE",
    "IMAGENET_MEAN",
    "IMAGENET_STD",
    "resize_to_input",
    "normalize",
    "load_labels",
    "ModelHandle",
    "load_model",
    "infer",
    "softmax",
    "top_k",
    "classify",
    "ClassificationResult",
    "ClassificationResponse",
]
