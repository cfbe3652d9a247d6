"""Track/detection data model and line-oriented file parsers.

File grammar (UTF-8, one record per line, comma separated):

* ground truth / prediction: ``frame,x,y,w,h[,absent]`` with ``absent`` in
  {0,1}, optional, default 0.  Prediction files may instead use the bare
  ``x,y,w,h`` form, in which case frames are numbered 1..N implicitly.
* detections: ``frame,label,score,x,y,w,h`` with score in [0,1]; frames may
  repeat (several detections per frame) and may be sparse.

Frame indices must be exactly 1, 2, ..., N with no gaps; detection frames
must be non-decreasing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Literal, Mapping, Optional, Sequence

import numpy as np

from .errors import LengthMismatch, MalformedLine, NonMonotoneFrames
from .geometry import BBox, iou_xywh

AbsentPolicy = Literal["zero", "exclude"]
ABSENT_POLICIES = ("zero", "exclude")


@dataclass(frozen=True)
class FrameBox:
    """One annotated frame: the target box, or None when the target is absent."""

    frame: int
    box: Optional[BBox]

    @property
    def absent(self) -> bool:
        return self.box is None


@dataclass(frozen=True)
class Detection:
    """One detector output at a frame."""

    frame: int
    label: str
    score: float
    box: BBox


class Track:
    """Per-frame sequence of optional boxes, frames numbered 1..N with no gaps.

    Immutable after construction; frame-indexed access is 1-based via
    :meth:`box`, Python indexing over :attr:`entries` is 0-based.
    """

    def __init__(self, entries: Iterable[FrameBox]):
        entries = tuple(entries)
        for i, e in enumerate(entries):
            if e.frame != i + 1:
                raise ValueError(
                    f"track frames must be 1..N contiguous, entry {i} has frame {e.frame}"
                )
        self.entries = entries

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> FrameBox:
        return self.entries[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Track) and self.entries == other.entries

    def box(self, frame: int) -> Optional[BBox]:
        """Box at a 1-based frame index, None when absent."""
        return self.entries[frame - 1].box

    @classmethod
    def from_boxes(cls, boxes: Sequence[Optional[BBox]]) -> "Track":
        return cls(FrameBox(i + 1, b) for i, b in enumerate(boxes))

    @cached_property
    def _arrays(self) -> tuple[np.ndarray, np.ndarray]:
        n = len(self.entries)
        xywh = np.zeros((n, 4), dtype=np.float64)
        present = np.zeros(n, dtype=bool)
        for i, e in enumerate(self.entries):
            if e.box is not None:
                xywh[i] = e.box.as_tuple()
                present[i] = True
        return xywh, present

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(N,4) float64 xywh array and (N,) present mask; absent rows are zeros."""
        return self._arrays


@dataclass(frozen=True)
class OverlapSeries:
    """Aligned per-frame ground-truth/prediction IoU signal.

    ``excluded`` marks frames dropped from metric denominators (only set
    under the ``exclude`` absent policy); ``absent_mask`` marks frames
    where the ground truth target was absent.
    """

    values: np.ndarray
    absent_mask: np.ndarray
    excluded: np.ndarray

    def __len__(self) -> int:
        return len(self.values)

    @classmethod
    def from_values(cls, values: Sequence[float]) -> "OverlapSeries":
        v = np.asarray(values, dtype=np.float64)
        return cls(v, np.zeros(len(v), bool), np.zeros(len(v), bool))


def _parse_number(token: str, line_no: int, what: str) -> float:
    try:
        v = float(token)
    except ValueError:
        raise MalformedLine(line_no, f"non-numeric {what} {token!r}") from None
    if not np.isfinite(v):
        raise MalformedLine(line_no, f"non-finite {what} {token!r}")
    return v


def _parse_frame(token: str, line_no: int) -> int:
    try:
        f = int(token)
    except ValueError:
        raise MalformedLine(line_no, f"non-integer frame index {token!r}") from None
    if f < 1:
        raise MalformedLine(line_no, f"frame index must be >= 1, got {f}")
    return f


def _parse_box(fields: Sequence[str], line_no: int) -> BBox:
    x = _parse_number(fields[0], line_no, "x")
    y = _parse_number(fields[1], line_no, "y")
    w = _parse_number(fields[2], line_no, "w")
    h = _parse_number(fields[3], line_no, "h")
    if w < 0 or h < 0:
        raise MalformedLine(line_no, f"negative box size {w}x{h}")
    return BBox(x, y, w, h)


def parse_track(text: str, format: Literal["gt", "pred"] = "gt") -> Track:
    """Parse an annotation file into a Track.

    ``format="pred"`` additionally accepts the bare ``x,y,w,h`` layout with
    implicit frame numbering.  Field count must be consistent across lines.
    """
    entries: list[FrameBox] = []
    nfields = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split(",")]
        if nfields is None:
            nfields = len(fields)
            bare = nfields == 4 and format == "pred"
            allowed = (4, 5, 6) if format == "pred" else (5, 6)
            if nfields not in allowed:
                raise MalformedLine(
                    line_no,
                    f"expected {' or '.join(map(str, allowed))} fields, got {nfields}",
                )
        elif len(fields) != nfields:
            raise MalformedLine(
                line_no, f"expected {nfields} fields, got {len(fields)}"
            )
        if bare:
            frame = len(entries) + 1
            box_fields = fields
            absent_tok = "0"
        else:
            frame = _parse_frame(fields[0], line_no)
            box_fields = fields[1:5]
            absent_tok = fields[5] if len(fields) == 6 else "0"
        if frame != len(entries) + 1:
            raise NonMonotoneFrames(line_no)
        if absent_tok not in ("0", "1"):
            raise MalformedLine(line_no, f"absent flag must be 0 or 1, got {absent_tok!r}")
        if absent_tok == "1":
            entries.append(FrameBox(frame, None))
        else:
            entries.append(FrameBox(frame, _parse_box(box_fields, line_no)))
    return Track(entries)


def parse_detections(text: str) -> dict[int, list[Detection]]:
    """Parse a detection file, grouped by frame in file order."""
    out: dict[int, list[Detection]] = {}
    last_frame = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != 7:
            raise MalformedLine(line_no, f"expected 7 fields, got {len(fields)}")
        frame = _parse_frame(fields[0], line_no)
        if frame < last_frame:
            raise NonMonotoneFrames(line_no)
        last_frame = frame
        label = fields[1]
        score = _parse_number(fields[2], line_no, "score")
        if not 0.0 <= score <= 1.0:
            raise MalformedLine(line_no, f"score out of range: {score}")
        box = _parse_box(fields[3:7], line_no)
        out.setdefault(frame, []).append(Detection(frame, label, score, box))
    return out


def _fmt_num(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))


def serialize_track(track: Track) -> str:
    """Canonical text form of a track; absent frames carry a zero box and flag 1."""
    lines = []
    for e in track:
        if e.box is None:
            lines.append(f"{e.frame},0,0,0,0,1")
        else:
            b = e.box
            coords = ",".join(_fmt_num(v) for v in (b.x, b.y, b.w, b.h))
            lines.append(f"{e.frame},{coords},0")
    return "\n".join(lines) + ("\n" if lines else "")


def serialize_detections(dets: Mapping[int, Sequence[Detection]]) -> str:
    lines = []
    for frame in sorted(dets):
        for d in dets[frame]:
            b = d.box
            coords = ",".join(_fmt_num(v) for v in (b.x, b.y, b.w, b.h))
            lines.append(f"{frame},{d.label},{_fmt_num(d.score)},{coords}")
    return "\n".join(lines) + ("\n" if lines else "")


def overlap_series(
    gt: Track, pred: Track, absent_policy: AbsentPolicy = "zero"
) -> OverlapSeries:
    """Per-frame IoU of aligned tracks.

    Frames with absent ground truth contribute IoU 0 under policy ``zero``
    and are dropped from metric denominators under ``exclude``; absent
    predictions against a present target always score 0.
    """
    if len(gt) != len(pred):
        raise LengthMismatch(len(gt), len(pred))
    if absent_policy not in ABSENT_POLICIES:
        raise ValueError(f"unknown absent policy {absent_policy!r}")
    g, g_present = gt.as_arrays()
    p, p_present = pred.as_arrays()
    values = iou_xywh(g, p)
    values[~(g_present & p_present)] = 0.0
    absent_mask = ~g_present
    if absent_policy == "exclude":
        excluded = absent_mask.copy()
    else:
        excluded = np.zeros(len(values), dtype=bool)
    return OverlapSeries(values, absent_mask, excluded)
