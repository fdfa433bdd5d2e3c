"""Exception hierarchy shared by every maskprobe layer.

Each error class maps to one failure the public contracts name, so callers
(HTTP handlers, the CLI) can translate by type instead of parsing messages.
"""


class MaskProbeError(Exception):
    """Base class for all maskprobe errors."""


class InvalidDimensionError(MaskProbeError, ValueError):
    """Raster dimensions are zero or negative."""


class InvalidStrokeError(MaskProbeError, ValueError):
    """Stroke violates its contract (empty points, non-positive radius)."""


class ShapeMismatchError(MaskProbeError, ValueError):
    """Two rasters that must share dimensions do not."""


class MaskParseError(MaskProbeError, ValueError):
    """Mask bytes are not a readable single-channel raster."""


class InvalidMaskError(MaskProbeError, ValueError):
    """Decoded mask contains channel values other than 0 and 255."""


class ImageDecodeError(MaskProbeError, ValueError):
    """Image bytes are not a supported/well-formed raster container."""


class ModelLoadError(MaskProbeError):
    """Model could not be loaded. Subclasses pin down why."""


class ModelFileError(ModelLoadError):
    """Model file missing or unreadable."""


class ModelShapeError(ModelLoadError):
    """Declared model input/output shapes do not match the pipeline contract."""


class LabelCountError(ModelLoadError):
    """Label table does not contain exactly one name per model output."""


class BackendUnavailableError(ModelLoadError):
    """The inference runtime required by this model format is not installed."""


class InferenceError(MaskProbeError):
    """Inference backend failed at run time; carries backend diagnostics."""


class NumericError(MaskProbeError, ValueError):
    """Numeric routine received values it cannot process (NaN/inf)."""


class SessionNotFoundError(MaskProbeError, KeyError):
    """No session with the requested id."""


class CorpusKeyError(MaskProbeError, KeyError):
    """Local corpus has no image under the requested key."""


class UpstreamFetchError(MaskProbeError):
    """Remote image API fetch failed; safe to retry."""


class ManifestError(MaskProbeError, ValueError):
    """Experiment manifest is malformed or references missing files."""
