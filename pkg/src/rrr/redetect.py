"""Simulated-cut planning, track splicing and re-detection scoring.

A cut removes a contiguous block of frames so the target jumps abruptly.
The planner places the cut where the GIoU between the boxes on either side
of the removed block is smallest, i.e. where the jump is largest; a tracker
re-run on the spliced sequence is then scored on whether and how fast it
reacquires the target.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import (
    EmptyInput,
    LengthMismatch,
    NoFeasibleCut,
    SequenceTooShort,
    SpecOutOfRange,
)
from .geometry import giou, iou
from .trace import FrameBox, Track

RECOVERY_IOU = 0.5
QUICK_RECOVERY_FRAMES = 30

CUTSPEC_HEADER = "sequence,init_start,cut_start,cut_len,eval_len,boundary_giou"


@dataclass(frozen=True)
class CutSpec:
    """A planned cut: init window start, removed block, and evaluation window."""

    init_start: int
    cut_start: int
    cut_len: int
    eval_len: int
    boundary_giou: float

    def __post_init__(self):
        if self.init_start < 1 or self.cut_start <= self.init_start:
            raise ValueError(
                f"need 1 <= init_start < cut_start, got {self.init_start}, {self.cut_start}"
            )
        if self.cut_len < 0 or self.eval_len < 1:
            raise ValueError(
                f"need cut_len >= 0 and eval_len >= 1, got {self.cut_len}, {self.eval_len}"
            )

    @property
    def init_len(self) -> int:
        return self.cut_start - self.init_start

    @property
    def last_frame(self) -> int:
        """Last original frame the spliced sequence draws from."""
        return self.cut_start + self.cut_len + self.eval_len - 1


@dataclass(frozen=True)
class RedetectOutcome:
    recovered: bool
    frames_to_recover: Optional[int] = None

    @property
    def quick(self) -> bool:
        return self.recovered and self.frames_to_recover <= QUICK_RECOVERY_FRAMES


def plan_cut(
    gt: Track,
    cut_len: int = 300,
    init_len: int = 100,
    eval_len: int = 200,
    forbidden: Sequence[tuple[int, int]] = (),
) -> CutSpec:
    """Exhaustively pick the cut start minimizing the boundary GIoU.

    Candidate cut starts run from init_len+1 to N - cut_len - eval_len + 1;
    candidates whose boundary frames (the last kept frame before the cut and
    the first kept frame after it) have an absent target are skipped, as are
    cut starts inside any ``forbidden`` inclusive range.  Ties go to the
    earliest cut start.
    """
    n = len(gt)
    required = init_len + cut_len + eval_len
    if n < required:
        raise SequenceTooShort(n, required)
    best: Optional[tuple[float, int]] = None
    for cut_start in range(init_len + 1, n - cut_len - eval_len + 2):
        if any(lo <= cut_start <= hi for lo, hi in forbidden):
            continue
        before = gt.box(cut_start - 1)
        after = gt.box(cut_start + cut_len)
        if before is None or after is None:
            continue
        g = giou(before, after)
        if best is None or g < best[0]:
            best = (g, cut_start)
    if best is None:
        raise NoFeasibleCut("all candidate boundaries have absent ground truth")
    g, cut_start = best
    return CutSpec(cut_start - init_len, cut_start, cut_len, eval_len, g)


def apply_cut(track: Track, spec: CutSpec) -> Track:
    """Splice a track: init window then eval window, renumbered from 1."""
    if spec.last_frame > len(track):
        raise SpecOutOfRange(
            f"spec needs frames up to {spec.last_frame}, track has {len(track)}"
        )
    pre = track.entries[spec.init_start - 1 : spec.cut_start - 1]
    post = track.entries[spec.cut_start + spec.cut_len - 1 : spec.last_frame]
    return Track(
        FrameBox(i + 1, e.box) for i, e in enumerate(list(pre) + list(post))
    )


def score_redetection(gt_post: Track, pred_post: Track) -> RedetectOutcome:
    """Score the evaluation window: recovery is the first frame with IoU >= 0.5."""
    if len(gt_post) != len(pred_post):
        raise LengthMismatch(len(gt_post), len(pred_post))
    for t, (g, p) in enumerate(zip(gt_post, pred_post), start=1):
        if g.box is not None and p.box is not None and iou(g.box, p.box) >= RECOVERY_IOU:
            return RedetectOutcome(recovered=True, frames_to_recover=t)
    return RedetectOutcome(recovered=False)


def aggregate_redetection(
    outcomes: Sequence[RedetectOutcome],
) -> tuple[int, int, Optional[float]]:
    """(quick count, total recoveries, mean frames-to-recover over recoveries)."""
    if len(outcomes) == 0:
        raise EmptyInput("no outcomes to aggregate")
    recovered = [o for o in outcomes if o.recovered]
    quick = sum(1 for o in recovered if o.quick)
    if not recovered:
        return 0, 0, None
    avg = sum(o.frames_to_recover for o in recovered) / len(recovered)
    return quick, len(recovered), avg


def format_cutspecs(specs: Sequence[tuple[str, CutSpec]]) -> str:
    """CSV text for (sequence name, spec) pairs, GIoU at 4 decimals."""
    lines = [CUTSPEC_HEADER]
    for name, s in specs:
        lines.append(
            f"{name},{s.init_start},{s.cut_start},{s.cut_len},{s.eval_len},"
            f"{s.boundary_giou:.4f}"
        )
    return "\n".join(lines) + "\n"


def parse_cutspecs(text: str) -> Iterator[tuple[str, CutSpec]]:
    """Read back a cut-spec CSV (header line optional)."""
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line == CUTSPEC_HEADER:
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != 6:
            raise ValueError(f"cut-spec line {line_no}: expected 6 fields, got {len(fields)}")
        name = fields[0]
        init_start, cut_start, cut_len, eval_len = (int(f) for f in fields[1:5])
        yield name, CutSpec(init_start, cut_start, cut_len, eval_len, float(fields[5]))
