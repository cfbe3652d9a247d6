"""Longest Subsequence Measure and its 20x20 slack/threshold extension.

LSM at slack x and IoU threshold tau is the length of the longest contiguous
window in which at least a fraction x of the frames have IoU >= tau,
normalized by sequence length.  The extension evaluates every (x, tau) on
the grid {0.05, 0.10, ..., 1.00}^2; its mean is a single scalar score and
the grid renders directly as a grayscale heatmap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import EmptySeries
from .trace import OverlapSeries

GRID_STEPS = 20
GRID = tuple(k / GRID_STEPS for k in range(1, GRID_STEPS + 1))


@dataclass(frozen=True)
class LsmParams:
    slack: float
    iou_threshold: float

    def __post_init__(self):
        if not 0.0 < self.slack <= 1.0:
            raise ValueError(f"slack must be in (0,1], got {self.slack}")
        if not 0.0 < self.iou_threshold <= 1.0:
            raise ValueError(f"iou_threshold must be in (0,1], got {self.iou_threshold}")


@dataclass(frozen=True)
class LsmMatrix:
    """20x20 grid of LSM values; rows walk slack 0.05..1.00, columns IoU 0.05..1.00."""

    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (GRID_STEPS, GRID_STEPS):
            raise ValueError(f"expected 20x20 matrix, got {self.values.shape}")


class _SpanWorkspace:
    """Reusable buffers so the 400-cell matrix loop stays allocation-light."""

    def __init__(self, n: int):
        self.running_min = np.empty(n, dtype=np.int64)
        self.suffix_max_rev = np.empty(n, dtype=np.int64)
        self.is_cand = np.empty(n, dtype=bool)


def _longest_nonneg_span(q: np.ndarray, ws: _SpanWorkspace | None = None) -> int:
    """Max j - i with q[j] >= q[i] over an integer prefix array.

    Candidate left ends are the strictly-decreasing prefix minima of q; for
    each candidate the rightmost usable j is found on the suffix-maximum
    array, which is non-increasing and hence binary-searchable.
    """
    n = len(q)
    if ws is None:
        ws = _SpanWorkspace(n)
    running_min = np.minimum.accumulate(q, out=ws.running_min)
    is_cand = ws.is_cand
    is_cand[0] = True
    np.less(q[1:], running_min[:-1], out=is_cand[1:])
    cand = np.flatnonzero(is_cand)
    suffix_max_rev = np.maximum.accumulate(q[::-1], out=ws.suffix_max_rev)
    pos = np.searchsorted(suffix_max_rev, q[cand], side="left")
    j = n - 1 - pos
    return int((j - cand).max(initial=0))


def _slack_fraction(x: float) -> Fraction:
    # users mean decimal slacks (0.8 = 4/5); recover the intended rational so
    # windows whose success fraction equals x exactly are counted
    return Fraction(x).limit_denominator(10**9)


def lsm(s: OverlapSeries, x: float, tau: float) -> float:
    """Longest-subsequence ratio in [0, 1] at slack x and IoU threshold tau."""
    LsmParams(x, tau)  # validates ranges
    n = len(s)
    if n == 0:
        raise EmptySeries("empty overlap series")
    b = s.values >= tau
    prefix = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(b, out=prefix[1:])
    frac = _slack_fraction(x)
    k = np.arange(n + 1, dtype=np.int64)
    q = frac.denominator * prefix - frac.numerator * k
    return _longest_nonneg_span(q) / n


def lsm_matrix(s: OverlapSeries) -> LsmMatrix:
    """LSM over the full 20x20 (slack, threshold) grid."""
    n = len(s)
    if n == 0:
        raise EmptySeries("empty overlap series")
    k = np.arange(n + 1, dtype=np.int64)
    slack_ramps = [(r + 1) * k for r in range(GRID_STEPS)]
    ws = _SpanWorkspace(n + 1)
    q = np.empty(n + 1, dtype=np.int64)
    prefix = np.zeros(n + 1, dtype=np.int64)
    out = np.empty((GRID_STEPS, GRID_STEPS), dtype=np.float64)
    for c in range(GRID_STEPS):
        tau = (c + 1) / GRID_STEPS
        b = s.values >= tau
        if b.all():
            out[:, c] = 1.0
            continue
        np.cumsum(b, out=prefix[1:])
        scaled = GRID_STEPS * prefix
        for r in range(GRID_STEPS):
            np.subtract(scaled, slack_ramps[r], out=q)
            span = _longest_nonneg_span(q, ws)
            out[r, c] = span / n
            if span == 0:
                # lsm is non-increasing in slack: the rest of the column is 0
                out[r + 1 :, c] = 0.0
                break
    return LsmMatrix(out)


def lsm_3d(m: LsmMatrix) -> float:
    """Mean of the 400 matrix entries."""
    return float(m.values.mean())


def export_heatmap(m: LsmMatrix, scale: int = 1) -> bytes:
    """Binary portable graymap (P5) rendering of the matrix.

    Columns run IoU threshold ascending left to right, rows slack ascending
    top to bottom; each cell is scale x scale pixels with intensity
    round(255 * value), halves rounded up.  Output bytes are deterministic.
    """
    if scale < 1:
        raise ValueError(f"scale must be >= 1, got {scale}")
    gray = np.floor(255.0 * m.values + 0.5).astype(np.uint8)
    gray = np.repeat(np.repeat(gray, scale, axis=0), scale, axis=1)
    h, w = gray.shape
    return f"P5\n{w} {h}\n255\n".encode("ascii") + gray.tobytes()


def matrix_csv(m: LsmMatrix) -> str:
    """CSV dump of the raw matrix, 4-decimal values, rows in heatmap order."""
    lines = [",".join(f"{v:.4f}" for v in row) for row in m.values]
    return "\n".join(lines) + "\n"
