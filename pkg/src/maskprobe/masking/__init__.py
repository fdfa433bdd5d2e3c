"""Binary occlusion masks: creation, stroke editing, compositing, transport."""

from .mask import Mask, mask_coverage, new_mask
from .stroke import Stroke, apply_stroke
from .fill import DATASET_MEAN_RGB, FillPolicy, composite
from .codec import decode_mask, encode_mask, mask_hash

__all__ = [
    "Mask",
    "Stroke",
    "FillPolicy",
    "DATASET_MEAN_RGB",
    "new_mask",
    "mask_coverage",
    "apply_stroke",
    "composite",
    "encode_mask",
    "decode_mask",
    "mask_hash",
]
