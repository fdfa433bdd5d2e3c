"""Brush stroke rasterization.

A stroke covers every cell whose center lies within ``brush_radius`` of the
stroke polyline: a Euclidean disk stamped at each point plus the capsule
hull around each consecutive segment. Cell (x, y) has its center exactly at
coordinates (x, y), which is what makes the geometry brute-force checkable.

The web client reimplements this routine; both sides use the same float64
operation order so borderline cells (distance exactly equal to the radius)
land identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from ..errors import InvalidStrokeError
from .mask import Mask

StrokeMode = Literal["paint", "erase"]


@dataclass
class Stroke:
    """One paint or erase gesture: a brush dragged along a polyline."""

    mode: StrokeMode
    brush_radius: float
    points: list[tuple[float, float]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.mode not in ("paint", "erase"):
            raise InvalidStrokeError(f"unknown stroke mode {self.mode!r}")
        if not self.points:
            raise InvalidStrokeError("stroke needs at least one point")
        radius = float(self.brush_radius)
        if not math.isfinite(radius) or radius <= 0:
            raise InvalidStrokeError(f"brush_radius must be a positive finite number, got {radius}")
        self.brush_radius = radius
        cleaned = []
        for p in self.points:
            x, y = float(p[0]), float(p[1])
            if not (math.isfinite(x) and math.isfinite(y)):
                raise InvalidStrokeError(f"stroke point ({x}, {y}) is not finite")
            cleaned.append((x, y))
        self.points = cleaned


def _disk_coverage(cov: np.ndarray, cx: float, cy: float, r: float) -> None:
    """Mark cells whose center is within r of (cx, cy). Mutates cov in place."""
    h, w = cov.shape
    x0 = max(0, math.ceil(cx - r))
    x1 = min(w - 1, math.floor(cx + r))
    y0 = max(0, math.ceil(cy - r))
    y1 = min(h - 1, math.floor(cy + r))
    if x0 > x1 or y0 > y1:
        return
    px = np.arange(x0, x1 + 1, dtype=np.float64)[None, :]
    py = np.arange(y0, y1 + 1, dtype=np.float64)[:, None]
    dx = px - cx
    dy = py - cy
    cov[y0 : y1 + 1, x0 : x1 + 1] |= (dx * dx + dy * dy) <= r * r


def _capsule_coverage(
    cov: np.ndarray, ax: float, ay: float, bx: float, by: float, r: float
) -> None:
    """Mark cells within r of segment (a, b). Degenerate segments are skipped
    because the endpoint disks already cover them."""
    abx = bx - ax
    aby = by - ay
    len2 = abx * abx + aby * aby
    if len2 == 0.0:
        return
    h, w = cov.shape
    x0 = max(0, math.ceil(min(ax, bx) - r))
    x1 = min(w - 1, math.floor(max(ax, bx) + r))
    y0 = max(0, math.ceil(min(ay, by) - r))
    y1 = min(h - 1, math.floor(max(ay, by) + r))
    if x0 > x1 or y0 > y1:
        return
    px = np.arange(x0, x1 + 1, dtype=np.float64)[None, :]
    py = np.arange(y0, y1 + 1, dtype=np.float64)[:, None]
    t = ((px - ax) * abx + (py - ay) * aby) / len2
    np.clip(t, 0.0, 1.0, out=t)
    dx = px - (ax + t * abx)
    dy = py - (ay + t * aby)
    cov[y0 : y1 + 1, x0 : x1 + 1] |= (dx * dx + dy * dy) <= r * r


def stroke_coverage(width: int, height: int, stroke: Stroke) -> np.ndarray:
    """Boolean (height, width) array of cells the stroke touches."""
    cov = np.zeros((height, width), dtype=bool)
    r = stroke.brush_radius
    pts = stroke.points
    for x, y in pts:
        _disk_coverage(cov, x, y, r)
    for (ax, ay), (bx, by) in zip(pts, pts[1:]):
        _capsule_coverage(cov, ax, ay, bx, by, r)
    return cov


def apply_stroke(mask: Mask, stroke: Stroke) -> Mask:
    """Return a new mask with the stroke painted (1) or erased (0).

    Coverage falling outside the mask bounds is clipped; a stroke entirely
    off-canvas leaves the mask unchanged.
    """
    cov = stroke_coverage(mask.width, mask.height, stroke)
    bits = np.array(mask.bits)
    if stroke.mode == "paint":
        bits[cov] = 1
    else:
        bits[cov] = 0
    return Mask(width=mask.width, height=mask.height, bits=bits)


def points_from_sequence(raw: Sequence[Sequence[float]]) -> list[tuple[float, float]]:
    """Coerce [[x, y], ...] (e.g. parsed JSON) into stroke points."""
    return [(float(p[0]), float(p[1])) for p in raw]
