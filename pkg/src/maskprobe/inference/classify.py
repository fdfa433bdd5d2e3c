"""Logits to ranked results, and the full image-to-response pipeline."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from ..errors import NumericError
from ..image import ImageBuffer
from .models import ModelHandle, infer
from .preprocess import ResizeVariant, normalize, resize_to_input


@dataclass(frozen=True)
class ClassificationResult:
    """One ranked class: index, human label, softmax confidence."""

    class_index: int
    label: str
    confidence: float


@dataclass
class ClassificationResponse:
    """Top-k results plus provenance; confidences are fractions in [0, 1]."""

    top: list[ClassificationResult]
    model_id: str
    inference_millis: float = field(default=0.0)

    def as_dict(self) -> dict:
        return {
            "top": [
                {"class_index": r.class_index, "label": r.label, "confidence": r.confidence}
                for r in self.top
            ],
            "model_id": self.model_id,
            "inference_millis": self.inference_millis,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ClassificationResponse":
        return cls(
            top=[
                ClassificationResult(
                    class_index=int(r["class_index"]),
                    label=str(r["label"]),
                    confidence=float(r["confidence"]),
                )
                for r in data["top"]
            ],
            model_id=str(data["model_id"]),
            inference_millis=float(data.get("inference_millis", 0.0)),
        )


def softmax(logits: np.ndarray) -> np.ndarray:
    """Numerically stable softmax: shift by the max, exponentiate, normalize."""
    arr = np.asarray(logits, dtype=np.float64).reshape(-1)
    if arr.size == 0:
        raise NumericError("softmax of an empty vector")
    if not np.isfinite(arr).all():
        raise NumericError("softmax input contains non-finite values")
    # Shift can underflow to -inf for astronomically spread logits; exp(-inf)
    # is exactly the 0 we want, so silence the spurious warning.
    with np.errstate(over="ignore"):
        shifted = arr - arr.max()
        exps = np.exp(shifted)
    return exps / exps.sum()


def top_k(probs: np.ndarray, k: int, labels: list[str]) -> list[ClassificationResult]:
    """The k highest-confidence classes, ties broken by ascending index."""
    probs = np.asarray(probs).reshape(-1)
    if len(labels) != probs.size:
        raise ValueError(f"{len(labels)} labels for {probs.size} probabilities")
    if not 1 <= k <= probs.size:
        raise ValueError(f"k must be in [1, {probs.size}], got {k}")
    # lexsort: last key is primary, so this sorts by -prob then index.
    order = np.lexsort((np.arange(probs.size), -probs))[:k]
    return [
        ClassificationResult(class_index=int(i), label=labels[int(i)], confidence=float(probs[i]))
        for i in order
    ]


def classify(
    model: ModelHandle,
    image: ImageBuffer,
    k: int = 1,
    resize_variant: ResizeVariant = "direct",
) -> ClassificationResponse:
    """resize -> normalize -> infer -> softmax -> top_k, with timing."""
    tensor = normalize(resize_to_input(image, variant=resize_variant))
    start = time.perf_counter()
    logits = infer(model, tensor)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    probs = softmax(logits)
    return ClassificationResponse(
        top=top_k(probs, k, model.labels),
        model_id=model.model_id,
        inference_millis=elapsed_ms,
    )
