"""Model loading and raw inference.

Two on-disk formats are recognized:

* ``*.onnx`` — a serialized network with a static 1x3x224x224 input and
  1000 outputs, executed through onnxruntime (an optional dependency;
  loading raises a distinct error when the runtime is absent).
* ``*.json`` — a deterministic stub: a fixed linear map from mean patch
  intensities to logits. It needs no ML runtime, reacts to occlusion the
  way tests require, and is what CI runs on.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol

import numpy as np

from ..errors import (
    BackendUnavailableError,
    InferenceError,
    LabelCountError,
    ModelFileError,
    ModelLoadError,
    ModelShapeError,
)
from .labels import load_labels
from .preprocess import INPUT_SIZE

INPUT_SHAPE = (1, 3, INPUT_SIZE, INPUT_SIZE)
OUTPUT_SIZE = 1000


class InferenceBackend(Protocol):
    def run(self, x: np.ndarray) -> np.ndarray: ...


class PatchLinearStub:
    """Fixed linear map from per-patch mean intensities to logits.

    The input tensor is cut into a grid x grid lattice of patches; the mean
    of each (channel, patch) block forms the feature vector. Weights come
    from a seeded generator, so the map is a build-time constant.
    """

    def __init__(self, seed: int, grid: int, outputs: int = OUTPUT_SIZE) -> None:
        if INPUT_SIZE % grid != 0:
            raise ModelShapeError(f"stub grid {grid} must divide {INPUT_SIZE}")
        self.grid = grid
        self.outputs = outputs
        n_features = grid * grid * 3
        rng = np.random.default_rng(seed)
        self._weights = rng.standard_normal((outputs, n_features)) / np.sqrt(n_features)
        self._bias = rng.standard_normal(outputs) * 0.01

    def run(self, x: np.ndarray) -> np.ndarray:
        g = self.grid
        patch = INPUT_SIZE // g
        feats = x[0].reshape(3, g, patch, g, patch).mean(axis=(2, 4)).reshape(-1)
        return (self._weights @ feats + self._bias).astype(np.float32)


class OnnxBackend:
    """onnxruntime-backed execution of a serialized network."""

    def __init__(self, path: Path, reproducible: bool) -> None:
        try:
            import onnxruntime as ort
        except ImportError as exc:
            raise BackendUnavailableError(
                "onnxruntime is not installed; install the 'onnx' extra to load .onnx models"
            ) from exc

        options = ort.SessionOptions()
        if reproducible:
            options.intra_op_num_threads = 1
            options.inter_op_num_threads = 1
            options.execution_mode = ort.ExecutionMode.ORT_SEQUENTIAL
        try:
            self._session = ort.InferenceSession(
                str(path), options, providers=["CPUExecutionProvider"]
            )
        except Exception as exc:
            raise ModelLoadError(f"onnxruntime failed to load {path}: {exc}") from exc

        inputs = self._session.get_inputs()
        outputs = self._session.get_outputs()
        if len(inputs) != 1 or len(outputs) != 1:
            raise ModelShapeError(
                f"expected exactly one input and one output, got "
                f"{len(inputs)} inputs / {len(outputs)} outputs"
            )
        declared = tuple(inputs[0].shape)
        if declared != INPUT_SHAPE:
            raise ModelShapeError(
                f"model declares input shape {declared}, need static {INPUT_SHAPE}"
            )
        out_shape = [d for d in outputs[0].shape if d != 1]
        if out_shape != [OUTPUT_SIZE]:
            raise ModelShapeError(
                f"model declares output shape {tuple(outputs[0].shape)}, "
                f"need {OUTPUT_SIZE} classes"
            )
        self._input_name = inputs[0].name
        self._output_name = outputs[0].name

    def run(self, x: np.ndarray) -> np.ndarray:
        out = self._session.run([self._output_name], {self._input_name: x})[0]
        return np.asarray(out, dtype=np.float32).reshape(-1)


@dataclass
class ModelHandle:
    """A loaded model plus its label table; immutable and share-safe."""

    model_id: str
    labels: list[str]
    backend: InferenceBackend = field(repr=False)
    input_shape: tuple[int, int, int, int] = INPUT_SHAPE
    output_size: int = OUTPUT_SIZE


def _load_stub(path: Path) -> tuple[PatchLinearStub, str]:
    try:
        spec = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ModelFileError(f"cannot read stub model {path}: {exc}") from exc
    if spec.get("format") != "maskprobe-stub" or spec.get("kind") != "patch_linear":
        raise ModelLoadError(f"unrecognized stub model description in {path}")
    seed = int(spec.get("seed", 0))
    grid = int(spec.get("grid", 8))
    outputs = int(spec.get("outputs", OUTPUT_SIZE))
    if outputs != OUTPUT_SIZE:
        raise ModelShapeError(f"model declares {outputs} outputs, need {OUTPUT_SIZE}")
    return PatchLinearStub(seed=seed, grid=grid, outputs=outputs), f"stub:patch-linear:g{grid}:s{seed}"


def _file_digest(path: Path) -> str:
    h = hashlib.sha256()
    with path.open("rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def load_model(
    model_path: str | Path,
    labels_path: str | Path,
    reproducible: bool = False,
) -> ModelHandle:
    """Load a model and its label table, validating shapes against the
    pipeline contract before anything is served."""
    model_path = Path(model_path)
    if not model_path.is_file():
        raise ModelFileError(f"model file not found: {model_path}")

    if model_path.suffix == ".json":
        backend, model_id = _load_stub(model_path)
    elif model_path.suffix == ".onnx":
        backend = OnnxBackend(model_path, reproducible=reproducible)
        model_id = f"onnx:{model_path.stem}:{_file_digest(model_path)[:12]}"
    else:
        raise ModelLoadError(
            f"unsupported model format {model_path.suffix!r}; expected .onnx or .json"
        )

    labels = load_labels(labels_path)
    if len(labels) != OUTPUT_SIZE:
        raise LabelCountError(
            f"labels file has {len(labels)} entries, model has {OUTPUT_SIZE} outputs"
        )
    return ModelHandle(model_id=model_id, labels=labels, backend=backend)


def infer(model: ModelHandle, input_tensor: np.ndarray) -> np.ndarray:
    """Run the model on a preprocessed tensor and return the raw logits."""
    x = np.asarray(input_tensor)
    if x.shape != model.input_shape:
        raise InferenceError(f"input tensor shape {x.shape}, expected {model.input_shape}")
    if not np.isfinite(x).all():
        raise InferenceError("input tensor contains non-finite values")
    x = np.ascontiguousarray(x, dtype=np.float32)
    try:
        logits = model.backend.run(x)
    except InferenceError:
        raise
    except Exception as exc:
        raise InferenceError(f"inference backend failed: {exc}") from exc
    logits = np.asarray(logits, dtype=np.float32).reshape(-1)
    if logits.size != model.output_size:
        raise InferenceError(
            f"backend returned {logits.size} logits, expected {model.output_size}"
        )
    if not np.isfinite(logits).all():
        raise InferenceError("backend returned non-finite logits")
    return logits
