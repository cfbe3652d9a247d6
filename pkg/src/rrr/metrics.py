"""Frame-pooled tracking metrics: success rate/curve, precision, dataset mean."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EmptyDataset, EmptySeries, LengthMismatch
from .trace import AbsentPolicy, OverlapSeries, Track

# threshold comparisons are non-strict (>=) throughout, so a perfect tracker
# scores 100 at tau = 1 and recovery "reaches 0.5" includes exact 0.5


@dataclass(frozen=True)
class MetricConfig:
    iou_threshold: float = 0.5
    precision_threshold: float = 20.0
    absent_policy: AbsentPolicy = "zero"

    def __post_init__(self):
        if not 0.0 <= self.iou_threshold <= 1.0:
            raise ValueError(f"iou_threshold must be in [0,1], got {self.iou_threshold}")
        if self.precision_threshold <= 0:
            raise ValueError(
                f"precision_threshold must be > 0, got {self.precision_threshold}"
            )


def success_rate(s: OverlapSeries, tau: float) -> float:
    """Percentage of included frames with IoU >= tau."""
    included = ~s.excluded
    n = int(included.sum())
    if n == 0:
        raise EmptySeries("no included frames")
    hits = int((s.values[included] >= tau).sum())
    return 100.0 * hits / n


def success_curve(
    s: OverlapSeries, step: float = 0.05
) -> tuple[list[tuple[float, float]], float]:
    """Success rate sampled at every multiple of step in [0, 1]; AUC is the sample mean."""
    if not 0.0 < step <= 1.0:
        raise ValueError(f"step must be in (0,1], got {step}")
    taus = []
    k = 0
    while True:
        tau = k * step
        if tau > 1.0 + 1e-9:
            break
        taus.append(min(tau, 1.0))
        k += 1
    samples = [(tau, success_rate(s, tau)) for tau in taus]
    auc = float(np.mean([r for _, r in samples]))
    return samples, auc


def precision_rate(
    gt: Track, pred: Track, d: float, absent_policy: AbsentPolicy = "zero"
) -> float:
    """Percentage of included frames whose center distance is <= d pixels.

    Frames where either box is absent count as failures; under policy
    ``exclude`` frames with absent ground truth leave the denominator.
    """
    if len(gt) != len(pred):
        raise LengthMismatch(len(gt), len(pred))
    g, g_present = gt.as_arrays()
    p, p_present = pred.as_arrays()
    gc = g[:, :2] + g[:, 2:] / 2.0
    pc = p[:, :2] + p[:, 2:] / 2.0
    dist = np.hypot(gc[:, 0] - pc[:, 0], gc[:, 1] - pc[:, 1])
    ok = (dist <= d) & g_present & p_present
    included = np.ones(len(gt), dtype=bool)
    if absent_policy == "exclude":
        included = g_present
    n = int(included.sum())
    if n == 0:
        raise EmptySeries("no included frames")
    return 100.0 * int(ok[included].sum()) / n


def dataset_average(per_sequence: Sequence[float]) -> float:
    """Arithmetic mean of per-sequence percentages."""
    if len(per_sequence) == 0:
        raise EmptyDataset("no sequences")
    return float(np.mean(per_sequence))
