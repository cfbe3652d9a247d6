"""Deterministic synthetic tracks and tracker behaviours for tests and demos.

Every generator is a pure function of its arguments and produces integer
box coordinates, so overlap comparisons against 0 and 0.5 are exact.  Each
bundled scenario declares the outputs its construction guarantees; the
integration suite replays them through the real evaluation code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import FrameOutOfRange
from .geometry import BBox
from .redetect import CutSpec, apply_cut, plan_cut
from .trace import Detection, Track


def gen_linear_gt(
    n: int, start: BBox, velocity: tuple[float, float] = (0.0, 0.0)
) -> Track:
    """Track of n present frames moving at a constant velocity per frame."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    vx, vy = velocity
    return Track.from_boxes(
        [BBox(start.x + i * vx, start.y + i * vy, start.w, start.h) for i in range(n)]
    )


def sim_frozen(gt: Track, freeze_at: int) -> Track:
    """Prediction that follows gt, then freezes on gt's box at freeze_at."""
    if not 1 <= freeze_at <= len(gt):
        raise FrameOutOfRange(f"freeze_at {freeze_at} outside 1..{len(gt)}")
    frozen = gt.box(freeze_at)
    return Track.from_boxes(
        [e.box if e.frame < freeze_at else frozen for e in gt]
    )


def sim_distractor_switch(
    gt: Track, distractor: Track, switch_at: int, return_at: int
) -> tuple[Track, dict[int, list[Detection]]]:
    """Prediction that jumps to a distractor on [switch_at, return_at).

    Also returns the distractor boxes as per-frame detections, the way a
    detector pass over the sequence would report them.
    """
    n = len(gt)
    if len(distractor) != n:
        raise FrameOutOfRange(f"distractor length {len(distractor)} != {n}")
    if not 1 <= switch_at <= return_at <= n:
        raise FrameOutOfRange(
            f"need 1 <= switch_at <= return_at <= {n}, got {switch_at}, {return_at}"
        )
    boxes = []
    for e in gt:
        if switch_at <= e.frame < return_at:
            boxes.append(distractor.box(e.frame))
        else:
            boxes.append(e.box)
    detections = {
        e.frame: [Detection(e.frame, "distractor", 1.0, e.box)]
        for e in distractor
        if e.box is not None
    }
    return Track.from_boxes(boxes), detections


def sim_teleport(gt: Track, spec: CutSpec, reacquire_after: int) -> Track:
    """Prediction on the spliced sequence that follows gt through the init
    window, sits on the last pre-cut box for reacquire_after - 1 frames,
    then snaps back onto gt."""
    if not 1 <= reacquire_after <= spec.eval_len:
        raise FrameOutOfRange(
            f"reacquire_after must be in 1..{spec.eval_len}, got {reacquire_after}"
        )
    spliced = apply_cut(gt, spec)
    init_len = spec.init_len
    hold = spliced.box(init_len)
    boxes = []
    for e in spliced:
        if init_len < e.frame < init_len + reacquire_after:
            boxes.append(hold)
        else:
            boxes.append(e.box)
    return Track.from_boxes(boxes)


@dataclass(frozen=True)
class Scenario:
    """A named fixture: tracks, optional detections/redetect trace, and the
    outputs the construction guarantees (computed from its parameters, not
    measured)."""

    name: str
    gt: Track
    pred: Track
    detections: Optional[dict[int, list[Detection]]] = None
    cut: Optional[CutSpec] = None
    redetect_pred: Optional[Track] = None
    expected: dict = field(default_factory=dict)


def _scenario_perfect() -> Scenario:
    n = 400
    gt = gen_linear_gt(n, BBox(0, 0, 40, 40), (2, 0))
    # a far-away parked object the detector sees every frame
    dets = {
        t: [Detection(t, "parked", 1.0, BBox(5000, 5000, 40, 40))] for t in range(1, n + 1)
    }
    return Scenario(
        name="perfect",
        gt=gt,
        pred=gt,
        detections=dets,
        expected={
            "success_at_0.5": 100.0,
            "pct_alternate": 0.0,
            "alternate_events": 0,
            "static_chances": 0,
            "static_events": 0,
            "lsm_3d": 1.0,
        },
    )


def _frozen_track(return_frames: int) -> tuple[Track, Track, int]:
    """gt that leaves a frozen tracker and comes back for return_frames."""
    home = BBox(0, 0, 40, 40)
    away = BBox(1000, 0, 40, 40)
    n = 520
    leave_at = 101
    back_at = 401
    boxes = []
    for t in range(1, n + 1):
        if t < leave_at or back_at <= t < back_at + return_frames:
            boxes.append(home)
        else:
            boxes.append(away)
    gt = Track.from_boxes(boxes)
    pred = sim_frozen(gt, leave_at - 1)
    return gt, pred, back_at


def _scenario_frozen(name: str, return_frames: int) -> Scenario:
    gt, pred, back_at = _frozen_track(return_frames)
    n = len(gt)
    on_target = (100 + return_frames) / n  # pre-freeze frames + the comeback
    return Scenario(
        name=name,
        gt=gt,
        pred=pred,
        expected={
            "success_at_0.5": 100.0 * on_target,
            "static_chances": 1,
            "static_events": 1 if return_frames >= 60 else 0,
            "static_event_frame": back_at if return_frames >= 60 else None,
            "reduced_success": (
                100.0 * 100 / n if return_frames >= 60 else 100.0 * on_target
            ),
        },
    )


def _scenario_distractor_switch() -> Scenario:
    n = 400
    switch_at, return_at = 150, 300
    gt = gen_linear_gt(n, BBox(0, 0, 40, 40))
    distractor = gen_linear_gt(n, BBox(500, 0, 40, 40))
    pred, dets = sim_distractor_switch(gt, distractor, switch_at, return_at)
    on_target = n - (return_at - switch_at)
    return Scenario(
        name="distractor_switch",
        gt=gt,
        pred=pred,
        detections=dets,
        expected={
            "success_at_0.5": 100.0 * on_target / n,
            "pct_alternate": 100.0 * (return_at - switch_at) / n,
            "alternate_events": 1,
            "alternate_event_frame": return_at,
            "reduced_success": 100.0 * (switch_at - 1) / n,
        },
    )


def _scenario_teleport() -> Scenario:
    gt = gen_linear_gt(700, BBox(1, 0, 10, 10), (1, 0))
    spec = plan_cut(gt)
    reacquire = 25
    return Scenario(
        name="teleport_quick",
        gt=gt,
        pred=gt,
        cut=spec,
        redetect_pred=sim_teleport(gt, spec, reacquire),
        expected={
            "success_at_0.5": 100.0,
            "cut_start": 101,
            "frames_to_recover": reacquire,
            "quick": True,
        },
    )


def _scenario_never_recover() -> Scenario:
    gt = gen_linear_gt(700, BBox(0, 3, 12, 12), (0, 2))
    spec = plan_cut(gt)
    spliced = apply_cut(gt, spec)
    # freeze one frame before the jump: the eval window never sees the target
    frozen = sim_frozen(spliced, spec.init_len)
    return Scenario(
        name="never_recover",
        gt=gt,
        pred=gt,
        cut=spec,
        redetect_pred=frozen,
        expected={
            "success_at_0.5": 100.0,
            "recovered": False,
        },
    )


_BUILDERS = {
    "perfect": _scenario_perfect,
    "frozen_graze": lambda: _scenario_frozen("frozen_graze", 1),
    "frozen_dwell": lambda: _scenario_frozen("frozen_dwell", 60),
    "distractor_switch": _scenario_distractor_switch,
    "teleport_quick": _scenario_teleport,
    "never_recover": _scenario_never_recover,
}

SCENARIO_NAMES = tuple(_BUILDERS)


def build_scenario(name: str) -> Scenario:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise KeyError(
            f"unknown scenario {name!r}; available: {', '.join(SCENARIO_NAMES)}"
        ) from None
    return builder()


def build_all() -> list[Scenario]:
    return [build_scenario(name) for name in SCENARIO_NAMES]
