"""Axis-aligned bounding-box arithmetic: IoU, GIoU, center distance, enclosing box.

Boxes are continuous real-valued rectangles in (x, y, w, h) form with the
origin at the top-left corner.  Boxes touching on an edge have IoU 0; all
operations are total, degenerate (zero-area) boxes are legal input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class BBox:
    """Axis-aligned rectangle: left edge, top edge, width, height (pixels)."""

    x: float
    y: float
    w: float
    h: float

    def __post_init__(self):
        for name in ("x", "y", "w", "h"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"BBox.{name} must be finite, got {v!r}")
        if self.w < 0 or self.h < 0:
            raise ValueError(f"BBox width/height must be >= 0, got {self.w}x{self.h}")

    @property
    def area(self) -> float:
        return self.w * self.h

    @property
    def center(self) -> tuple[float, float]:
        return (self.x + self.w / 2.0, self.y + self.h / 2.0)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x, self.y, self.w, self.h)


def intersection_area(a: BBox, b: BBox) -> float:
    iw = min(a.x + a.w, b.x + b.w) - max(a.x, b.x)
    ih = min(a.y + a.h, b.y + b.h) - max(a.y, b.y)
    if iw <= 0 or ih <= 0:
        return 0.0
    return iw * ih


def iou(a: BBox, b: BBox) -> float:
    """Intersection over union in [0, 1]; 0 when the union has zero area."""
    inter = intersection_area(a, b)
    union = a.area + b.area - inter
    if union <= 0:
        return 0.0
    # (x + w) - x can round a hair above w; keep the ratio in bounds
    return min(1.0, inter / union)


def _covering_extent(lo: float, hi: float) -> float:
    # hi - lo can round down a hair; widen so lo + extent >= hi holds in floats
    extent = hi - lo
    while lo + extent < hi:
        extent = math.nextafter(extent, math.inf)
    return extent


def enclosing_box(a: BBox, b: BBox) -> BBox:
    """Smallest axis-aligned box containing both inputs."""
    x1 = min(a.x, b.x)
    y1 = min(a.y, b.y)
    x2 = max(a.x + a.w, b.x + b.w)
    y2 = max(a.y + a.h, b.y + b.h)
    return BBox(x1, y1, _covering_extent(x1, x2), _covering_extent(y1, y2))


def giou(a: BBox, b: BBox) -> float:
    """Generalized IoU in [-1, 1].

    GIoU = IoU - |C \\ (a u b)| / |C| with C the smallest enclosing box.
    Equals IoU when one box contains the other; tends to -1 as disjoint
    boxes separate.  Returns 0 when both boxes are degenerate and the
    enclosing box has zero area.
    """
    i = iou(a, b)
    inter = intersection_area(a, b)
    union = a.area + b.area - inter
    c = enclosing_box(a, b).area
    if c <= 0:
        return i
    # c >= union >= 0 mathematically; clamp so rounding cannot push the
    # excess ratio outside [0, 1] and giou outside [iou - 1, iou]
    excess_ratio = min(1.0, max(0.0, (c - union) / c))
    return i - excess_ratio


def center_distance(a: BBox, b: BBox) -> float:
    """Euclidean distance between box centers, in pixels."""
    ax, ay = a.center
    bx, by = b.center
    return math.hypot(ax - bx, ay - by)


def contains(outer: BBox, inner: BBox) -> bool:
    """True iff `inner` lies entirely within `outer` (boundaries included)."""
    return (
        outer.x <= inner.x
        and outer.y <= inner.y
        and inner.x + inner.w <= outer.x + outer.w
        and inner.y + inner.h <= outer.y + outer.h
    )


def iou_xywh(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise IoU of (..., 4) arrays in (x, y, w, h) form.

    Broadcasts like any numpy binary op; zero-union pairs give 0.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    ix = np.maximum(a[..., 0], b[..., 0])
    iy = np.maximum(a[..., 1], b[..., 1])
    ix2 = np.minimum(a[..., 0] + a[..., 2], b[..., 0] + b[..., 2])
    iy2 = np.minimum(a[..., 1] + a[..., 3], b[..., 1] + b[..., 3])
    inter = np.clip(ix2 - ix, 0.0, None) * np.clip(iy2 - iy, 0.0, None)
    union = a[..., 2] * a[..., 3] + b[..., 2] * b[..., 3] - inter
    out = np.zeros(np.broadcast(inter, union).shape, dtype=np.float64)
    np.divide(inter, union, out=out, where=union > 0)
    return np.clip(out, 0.0, 1.0, out=out)
