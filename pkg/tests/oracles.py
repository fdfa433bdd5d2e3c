"""Independent scalar reference implementations the tests check against.

Everything here is deliberately written as straight-line Python over single
cells/pixels — no numpy, no shared code with the package — so a disagreement
always means the fast path is wrong, not the yardstick.
"""

from __future__ import annotations

import math


def stroke_covers_cell(px: float, py: float, points: list[tuple[float, float]], radius: float) -> bool:
    """Is the cell centered at (px, py) within radius of the polyline?"""
    r2 = radius * radius
    for ax, ay in points:
        dx = px - ax
        dy = py - ay
        if dx * dx + dy * dy <= r2:
            return True
    for (ax, ay), (bx, by) in zip(points, points[1:]):
        abx = bx - ax
        aby = by - ay
        len2 = abx * abx + aby * aby
        if len2 == 0.0:
            continue
        t = ((px - ax) * abx + (py - ay) * aby) / len2
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
        dx = px - (ax + t * abx)
        dy = py - (ay + t * aby)
        if dx * dx + dy * dy <= r2:
            return True
    return False


def brute_force_coverage(width: int, height: int, points, radius: float) -> list[list[bool]]:
    """Full-grid scalar evaluation of stroke coverage."""
    return [
        [stroke_covers_cell(float(x), float(y), points, radius) for x in range(width)]
        for y in range(height)
    ]


def apply_stroke_brute_force(bits: list[list[int]], mode: str, points, radius: float) -> list[list[int]]:
    height = len(bits)
    width = len(bits[0])
    value = 1 if mode == "paint" else 0
    out = [row[:] for row in bits]
    for y in range(height):
        for x in range(width):
            if stroke_covers_cell(float(x), float(y), points, radius):
                out[y][x] = value
    return out


def composite_pixel(pixel: tuple[int, int, int], bit: int, fill: tuple[int, int, int]):
    """The whole compositing contract, one pixel at a time."""
    return fill if bit == 1 else pixel


def softmax_scalar(values: list[float]) -> list[float]:
    m = max(values)
    exps = [math.exp(v - m) for v in values]
    total = sum(exps)
    return [e / total for e in exps]


def normalize_scalar(value: int, channel: int) -> float:
    mean = (0.485, 0.456, 0.406)[channel]
    std = (0.229, 0.224, 0.225)[channel]
    return (value / 255.0 - mean) / std
