"""Chance-based recovery analysis: alternate-object tracking and frozen trackers.

Two failure-then-luck patterns are detected on aligned traces.  A tracker
may latch onto a wrong object and recover only because that object meets
the target (alternate recovery), or it may freeze on background until the
target happens to walk into its box (static recovery).  Both are recoveries
the tracker did not earn; zeroing the overlap signal from the first such
event gives a worst-case performance bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Mapping, Optional, Sequence

import numpy as np

from .errors import EmptyDataset, EmptySeries, LengthMismatch
from .geometry import iou_xywh
from .metrics import success_rate
from .trace import Detection, OverlapSeries, Track

PERSISTENCE_FRAMES = 60
STATIONARY_WINDOW = 200
STATIONARY_SIMILARITY = 0.5
ALTERNATE_IOU = 0.5


@dataclass(frozen=True)
class RecoveryEvent:
    """A zero-to-nonzero target overlap transition that persisted 60 frames."""

    frame: int
    kind: Literal["alternate", "static"]


@dataclass(frozen=True)
class AlternateStats:
    pct_alternate_frames: float
    recoveries: tuple[RecoveryEvent, ...]
    original_success: float
    reduced_success: float


@dataclass(frozen=True)
class StaticStats:
    recoveries: int
    chances: int
    original_success: float
    reduced_success: float

    @property
    def had_static_recovery(self) -> bool:
        return self.recoveries >= 1


@dataclass(frozen=True)
class AlternateAggregate:
    mean_pct: float
    mean_recoveries: float
    mean_original: float
    mean_reduced: float


@dataclass(frozen=True)
class StaticAggregate:
    mean_recoveries: float
    mean_chances: float
    sequences_with_recovery: int
    mean_original: Optional[float]
    mean_reduced: Optional[float]


def alternate_overlap_series(
    pred: Track, detections: Mapping[int, Sequence[Detection]], gt: Track
) -> np.ndarray:
    """Per-frame best IoU between the prediction and any detection disjoint
    from the target; 0 where no such detection exists.

    An absent ground-truth frame makes every detection "disjoint from the
    target" for that frame.
    """
    if len(pred) != len(gt):
        raise LengthMismatch(len(pred), len(gt))
    n = len(pred)
    p, p_present = pred.as_arrays()
    g, g_present = gt.as_arrays()
    out = np.zeros(n, dtype=np.float64)
    for frame, dets in detections.items():
        if not 1 <= frame <= n or not dets:
            continue
        i = frame - 1
        if not p_present[i]:
            continue
        boxes = np.array([d.box.as_tuple() for d in dets], dtype=np.float64)
        if g_present[i]:
            disjoint = iou_xywh(boxes, g[i]) == 0.0
            if not disjoint.any():
                continue
            boxes = boxes[disjoint]
        out[i] = iou_xywh(boxes, p[i]).max()
    return out


def pct_alternate_tracked(alt_series: np.ndarray, gt_overlap: OverlapSeries) -> float:
    """Percentage of frames spent locked (IoU >= 0.5) on an alternate object
    while having zero target overlap."""
    n = len(gt_overlap)
    if n == 0:
        raise EmptySeries("empty overlap series")
    if len(alt_series) != n:
        raise LengthMismatch(len(alt_series), n)
    hits = (alt_series >= ALTERNATE_IOU) & (gt_overlap.values == 0.0)
    return 100.0 * int(hits.sum()) / n


def _persists(values: np.ndarray, i: int) -> bool:
    # 0-based start; the full 60-frame window must fit inside the series
    if i + PERSISTENCE_FRAMES > len(values):
        return False
    return bool((values[i : i + PERSISTENCE_FRAMES] > 0.0).all())


def _zero_to_nonzero(values: np.ndarray) -> np.ndarray:
    """0-based indices i >= 1 where values turns from 0 to > 0."""
    nz = values > 0.0
    return np.flatnonzero(nz[1:] & ~nz[:-1]) + 1


def detect_alternate_recoveries(
    alt_series: np.ndarray, gt_overlap: OverlapSeries
) -> list[RecoveryEvent]:
    """Recoveries that happen while the tracker sits on an alternate object.

    An event fires at frame t when the target overlap turns nonzero at t,
    stays nonzero for 60 frames, and the alternate overlap was >= 0.5 at
    t - 1 (the last frame before target contact).
    """
    if len(alt_series) != len(gt_overlap):
        raise LengthMismatch(len(alt_series), len(gt_overlap))
    values = gt_overlap.values
    events = []
    for i in _zero_to_nonzero(values):
        if alt_series[i - 1] >= ALTERNATE_IOU and _persists(values, i):
            events.append(RecoveryEvent(frame=int(i) + 1, kind="alternate"))
    return events


def reduced_success(
    s: OverlapSeries,
    first_event_frame: Optional[int],
    tau: float = 0.5,
) -> float:
    """Success rate after zeroing all overlap from the first chance recovery on."""
    if first_event_frame is None:
        return success_rate(s, tau)
    values = s.values.copy()
    values[first_event_frame - 1 :] = 0.0
    return success_rate(OverlapSeries(values, s.absent_mask, s.excluded), tau)


def is_stationary(
    pred: Track,
    gt_overlap: OverlapSeries,
    t: int,
    window: int = STATIONARY_WINDOW,
    sim: float = STATIONARY_SIMILARITY,
) -> bool:
    """True when the prediction at 1-based frame t overlaps each of its
    previous ``window`` predictions by more than ``sim`` while having zero
    target overlap; frames with absent predictions never qualify."""
    if t <= window or t > len(pred):
        return False
    p, present = pred.as_arrays()
    i = t - 1
    if not present[i] or not present[i - window : i].all():
        return False
    if gt_overlap.values[i] != 0.0:
        return False
    return bool((iou_xywh(p[i - window : i], p[i]) > sim).all())


def detect_static_recoveries(
    pred: Track, gt_overlap: OverlapSeries
) -> tuple[list[RecoveryEvent], int]:
    """(static recovery events, chance count).

    A chance is a maximal nonzero-overlap episode that begins while the
    tracker is stationary; it is also a recovery when the overlap stays
    nonzero for the full 60-frame window.
    """
    if len(pred) != len(gt_overlap):
        raise LengthMismatch(len(pred), len(gt_overlap))
    values = gt_overlap.values
    events = []
    chances = 0
    for i in _zero_to_nonzero(values):
        # the transition is at 1-based frame i+1; stationarity is required
        # on the frame before it, whose 1-based number is i
        if not is_stationary(pred, gt_overlap, int(i)):
            continue
        chances += 1
        if _persists(values, i):
            events.append(RecoveryEvent(frame=int(i) + 1, kind="static"))
    return events, chances


def analyze_alternate(
    gt: Track,
    pred: Track,
    detections: Mapping[int, Sequence[Detection]],
    gt_overlap: OverlapSeries,
    tau: float = 0.5,
) -> AlternateStats:
    """Full alternate-object analysis of one sequence."""
    alt = alternate_overlap_series(pred, detections, gt)
    events = detect_alternate_recoveries(alt, gt_overlap)
    first = events[0].frame if events else None
    return AlternateStats(
        pct_alternate_frames=pct_alternate_tracked(alt, gt_overlap),
        recoveries=tuple(events),
        original_success=success_rate(gt_overlap, tau),
        reduced_success=reduced_success(gt_overlap, first, tau),
    )


def analyze_static(pred: Track, gt_overlap: OverlapSeries, tau: float = 0.5) -> StaticStats:
    """Full frozen-tracker analysis of one sequence."""
    events, chances = detect_static_recoveries(pred, gt_overlap)
    first = events[0].frame if events else None
    return StaticStats(
        recoveries=len(events),
        chances=chances,
        original_success=success_rate(gt_overlap, tau),
        reduced_success=reduced_success(gt_overlap, first, tau),
    )


def aggregate_chance(
    per_sequence: Sequence[AlternateStats] | Sequence[StaticStats],
    mode: Literal["alternate", "static"],
) -> AlternateAggregate | StaticAggregate:
    """Dataset-level aggregation of per-sequence chance statistics.

    Alternate mode averages every column over the supplied (subset)
    sequences.  Static mode averages recovery/chance counts over all
    sequences but success columns only over the sequences that actually
    had a static recovery; those columns are None when no sequence did.
    """
    if len(per_sequence) == 0:
        raise EmptyDataset("no sequences to aggregate")
    if mode == "alternate":
        return AlternateAggregate(
            mean_pct=float(np.mean([s.pct_alternate_frames for s in per_sequence])),
            mean_recoveries=float(np.mean([len(s.recoveries) for s in per_sequence])),
            mean_original=float(np.mean([s.original_success for s in per_sequence])),
            mean_reduced=float(np.mean([s.reduced_success for s in per_sequence])),
        )
    if mode == "static":
        with_rec = [s for s in per_sequence if s.had_static_recovery]
        return StaticAggregate(
            mean_recoveries=float(np.mean([s.recoveries for s in per_sequence])),
            mean_chances=float(np.mean([s.chances for s in per_sequence])),
            sequences_with_recovery=len(with_rec),
            mean_original=(
                float(np.mean([s.original_success for s in with_rec])) if with_rec else None
            ),
            mean_reduced=(
                float(np.mean([s.reduced_success for s in with_rec])) if with_rec else None
            ),
        )
    raise ValueError(f"unknown mode {mode!r}")
