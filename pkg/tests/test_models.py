import importlib.util
import json

import numpy as np
import pytest

from maskprobe.assets import DEFAULT_LABELS_PATH, DEFAULT_STUB_MODEL_PATH
from maskprobe.errors import (
    BackendUnavailableError,
    InferenceError,
    LabelCountError,
    ModelFileError,
    ModelLoadError,
    ModelShapeError,
)
from maskprobe.inference import ModelHandle, infer, load_model
from maskprobe.inference.models import INPUT_SHAPE

HAVE_ONNXRUNTIME = importlib.util.find_spec("onnxruntime") is not None


def write_stub(tmp_path, **overrides):
    spec = {"format": "maskprobe-stub", "kind": "patch_linear", "seed": 1, "grid": 8,
            "outputs": 1000}
    spec.update(overrides)
    path = tmp_path / "model.json"
    path.write_text(json.dumps(spec))
    return path


def write_labels(tmp_path, n):
    path = tmp_path / "labels.txt"
    path.write_text("\n".join(f"class {i}" for i in range(n)) + "\n")
    return path


def test_load_bundled_stub():
    handle = load_model(DEFAULT_STUB_MODEL_PATH, DEFAULT_LABELS_PATH)
    assert handle.output_size == 1000
    assert len(handle.labels) == 1000
    assert handle.labels[207] == "golden retriever"
    assert handle.model_id.startswith("stub:patch-linear:")


def test_missing_model_file(tmp_path):
    with pytest.raises(ModelFileError):
        load_model(tmp_path / "nope.onnx", DEFAULT_LABELS_PATH)


def test_missing_labels_file(tmp_path):
    with pytest.raises(ModelFileError):
        load_model(write_stub(tmp_path), tmp_path / "nope.txt")


def test_wrong_output_count_is_shape_error(tmp_path):
    model = write_stub(tmp_path, outputs=10)
    labels = write_labels(tmp_path, 1000)
    with pytest.raises(ModelShapeError):
        load_model(model, labels)


def test_short_label_file_is_label_count_error(tmp_path):
    model = write_stub(tmp_path)
    labels = write_labels(tmp_path, 999)
    with pytest.raises(LabelCountError):
        load_model(model, labels)


def test_unknown_format_rejected(tmp_path):
    path = tmp_path / "weights.bin"
    path.write_bytes(b"\x00" * 16)
    with pytest.raises(ModelLoadError):
        load_model(path, DEFAULT_LABELS_PATH)


def test_unrecognized_stub_json(tmp_path):
    path = tmp_path / "model.json"
    path.write_text(json.dumps({"something": "else"}))
    with pytest.raises(ModelLoadError):
        load_model(path, DEFAULT_LABELS_PATH)


@pytest.mark.skipif(HAVE_ONNXRUNTIME, reason="onnxruntime present; error path not reachable")
def test_onnx_without_runtime_raises_distinct_error(tmp_path):
    path = tmp_path / "resnet50.onnx"
    path.write_bytes(b"onnx")
    with pytest.raises(BackendUnavailableError):
        load_model(path, DEFAULT_LABELS_PATH)


def test_stub_inference_is_deterministic(stub_model):
    rng = np.random.default_rng(0)
    x = rng.normal(0, 1, size=INPUT_SHAPE).astype(np.float32)
    a = infer(stub_model, x)
    b = infer(stub_model, x)
    assert np.array_equal(a, b)
    assert a.shape == (1000,)
    assert np.isfinite(a).all()


def test_stub_reacts_to_input_changes(stub_model):
    x = np.zeros(INPUT_SHAPE, dtype=np.float32)
    y = np.ones(INPUT_SHAPE, dtype=np.float32)
    assert not np.array_equal(infer(stub_model, x), infer(stub_model, y))


def test_fixed_vector_backend_passthrough():
    # A backend that ignores input and returns a constant vector comes back
    # unchanged through infer().
    v = np.linspace(-1, 1, 1000, dtype=np.float32)

    class Fixed:
        def run(self, x):
            return v

    handle = ModelHandle(model_id="fixed", labels=[str(i) for i in range(1000)], backend=Fixed())
    out = infer(handle, np.zeros(INPUT_SHAPE, dtype=np.float32))
    assert np.array_equal(out, v)


def test_nan_input_rejected(stub_model):
    x = np.zeros(INPUT_SHAPE, dtype=np.float32)
    x[0, 0, 0, 0] = np.nan
    with pytest.raises(InferenceError):
        infer(stub_model, x)


def test_wrong_input_shape_rejected(stub_model):
    with pytest.raises(InferenceError):
        infer(stub_model, np.zeros((1, 3, 224, 223), dtype=np.float32))


def test_backend_failure_wrapped():
    class Broken:
        def run(self, x):
            raise RuntimeError("backend exploded")

    handle = ModelHandle(model_id="broken", labels=[str(i) for i in range(1000)], backend=Broken())
    with pytest.raises(InferenceError, match="backend exploded"):
        infer(handle, np.zeros(INPUT_SHAPE, dtype=np.float32))


def test_backend_bad_output_size_rejected():
    class Short:
        def run(self, x):
            return np.zeros(10, dtype=np.float32)

    handle = ModelHandle(model_id="short", labels=[str(i) for i in range(1000)], backend=Short())
    with pytest.raises(InferenceError):
        infer(handle, np.zeros(INPUT_SHAPE, dtype=np.float32))
