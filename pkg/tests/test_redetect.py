import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rrr.errors import (
    EmptyInput,
    LengthMismatch,
    NoFeasibleCut,
    SequenceTooShort,
    SpecOutOfRange,
)
from rrr.geometry import BBox, giou
from rrr.redetect import (
    CutSpec,
    RedetectOutcome,
    aggregate_redetection,
    apply_cut,
    format_cutspecs,
    parse_cutspecs,
    plan_cut,
    score_redetection,
)
from rrr.synth import gen_linear_gt
from rrr.trace import Track


def brute_force_plan(gt, cut_len, init_len, eval_len):
    """Independent argmin scan over every feasible cut start."""
    n = len(gt)
    best = None
    for cut_start in range(init_len + 1, n - cut_len - eval_len + 2):
        before = gt.box(cut_start - 1)
        after = gt.box(cut_start + cut_len)
        if before is None or after is None:
            continue
        g = giou(before, after)
        if best is None or g < best[0]:
            best = (g, cut_start)
    return best


def test_plan_cut_constant_shift_prefers_earliest():
    gt = gen_linear_gt(700, BBox(1, 0, 10, 10), (1, 0))
    spec = plan_cut(gt)
    assert spec.cut_start == 101
    assert spec.init_start == 1
    assert spec.init_len == 100
    assert spec.boundary_giou == giou(gt.box(100), gt.box(401))


def test_plan_cut_straddles_a_jump():
    # stationary except frames 450..700 shifted far right
    boxes = [
        BBox(0, 0, 10, 10) if t < 450 else BBox(100000, 0, 10, 10)
        for t in range(1, 701)
    ]
    gt = Track.from_boxes(boxes)
    spec = plan_cut(gt)
    b_g, b_start = brute_force_plan(gt, 300, 100, 200)
    assert spec.cut_start == b_start
    assert spec.boundary_giou == b_g
    # the chosen boundary pair must straddle the jump at 450
    assert spec.cut_start - 1 < 450 <= spec.cut_start + 300


def test_plan_cut_too_short():
    gt = gen_linear_gt(500, BBox(0, 0, 10, 10), (1, 0))
    with pytest.raises(SequenceTooShort) as exc:
        plan_cut(gt)
    assert (exc.value.n, exc.value.required) == (500, 600)


def test_plan_cut_no_feasible_boundary():
    # every pre-cut boundary frame is absent
    boxes = [None] * 700
    gt = Track.from_boxes(boxes)
    with pytest.raises(NoFeasibleCut):
        plan_cut(gt)


def test_plan_cut_skips_absent_boundaries():
    boxes = [BBox(t, 0, 10, 10) for t in range(1, 701)]
    boxes[99] = None  # frame 100, boundary of cut_start 101
    gt = Track.from_boxes(boxes)
    spec = plan_cut(gt)
    assert spec.cut_start == 102


def test_plan_cut_respects_forbidden_ranges():
    gt = gen_linear_gt(700, BBox(1, 0, 10, 10), (1, 0))
    spec = plan_cut(gt, forbidden=[(101, 150)])
    assert spec.cut_start == 151


@st.composite
def random_gt_tracks(draw):
    n = draw(st.integers(30, 120))
    rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    boxes = []
    for _ in range(n):
        if rng.random() < 0.15:
            boxes.append(None)
        else:
            x, y = rng.integers(0, 500, size=2)
            w, h = rng.integers(1, 60, size=2)
            boxes.append(BBox(int(x), int(y), int(w), int(h)))
    return Track.from_boxes(boxes)


@given(random_gt_tracks())
@settings(max_examples=100, deadline=None)
def test_plan_cut_equals_exhaustive_scan(gt):
    cut_len, init_len, eval_len = 5, 8, 6
    brute = brute_force_plan(gt, cut_len, init_len, eval_len)
    if brute is None:
        with pytest.raises(NoFeasibleCut):
            plan_cut(gt, cut_len, init_len, eval_len)
        return
    spec = plan_cut(gt, cut_len, init_len, eval_len)
    assert (spec.boundary_giou, spec.cut_start) == brute


@given(random_gt_tracks())
@settings(max_examples=50, deadline=None)
def test_planned_boundary_is_minimal(gt):
    try:
        spec = plan_cut(gt, 5, 8, 6)
    except NoFeasibleCut:
        return
    n = len(gt)
    for cut_start in range(9, n - 5 - 6 + 2):
        before, after = gt.box(cut_start - 1), gt.box(cut_start + 5)
        if before is None or after is None:
            continue
        assert spec.boundary_giou <= giou(before, after)


def test_apply_cut_default_protocol_length():
    gt = gen_linear_gt(700, BBox(1, 0, 10, 10), (1, 0))
    spec = plan_cut(gt)
    out = apply_cut(gt, spec)
    assert len(out) == 300
    # boxes are equal copies of the source frames
    assert out.box(1) == gt.box(spec.init_start)
    assert out.box(100) == gt.box(100)
    assert out.box(101) == gt.box(401)
    assert out.box(300) == gt.box(600)


def test_apply_cut_zero_length_cut_is_slice():
    gt = gen_linear_gt(50, BBox(0, 0, 10, 10), (1, 0))
    spec = CutSpec(init_start=3, cut_start=10, cut_len=0, eval_len=5, boundary_giou=1.0)
    out = apply_cut(gt, spec)
    assert [e.box for e in out] == [gt.box(t) for t in range(3, 15)]


def test_apply_cut_out_of_range():
    gt = gen_linear_gt(100, BBox(0, 0, 10, 10), (1, 0))
    spec = CutSpec(init_start=1, cut_start=51, cut_len=40, eval_len=20, boundary_giou=0.0)
    with pytest.raises(SpecOutOfRange):
        apply_cut(gt, spec)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=100, deadline=None)
def test_apply_cut_length_is_init_plus_eval(seed):
    rng = np.random.default_rng(seed)
    init_len = int(rng.integers(1, 20))
    cut_len = int(rng.integers(0, 20))
    eval_len = int(rng.integers(1, 20))
    slack = int(rng.integers(0, 10))
    n = init_len + cut_len + eval_len + slack
    gt = gen_linear_gt(n, BBox(0, 0, 5, 5), (1, 1))
    init_start = int(rng.integers(1, slack + 2))
    spec = CutSpec(init_start, init_start + init_len, cut_len, eval_len, 0.0)
    out = apply_cut(gt, spec)
    assert len(out) == init_len + eval_len
    assert [e.frame for e in out] == list(range(1, init_len + eval_len + 1))


def test_score_instant_recovery():
    gt = gen_linear_gt(10, BBox(0, 0, 10, 10), (1, 0))
    o = score_redetection(gt, gt)
    assert o == RedetectOutcome(True, 1)
    assert o.quick


def test_score_recovery_at_25():
    gt = Track.from_boxes([BBox(0, 0, 10, 10)] * 200)
    pred_boxes = [BBox(1000, 0, 10, 10)] * 24 + [BBox(0, 0, 10, 10)] * 176
    o = score_redetection(gt, Track.from_boxes(pred_boxes))
    assert o.recovered and o.frames_to_recover == 25 and o.quick


def test_score_never_recovers():
    gt = Track.from_boxes([BBox(0, 0, 10, 10)] * 200)
    pred = Track.from_boxes([BBox(1000, 0, 10, 10)] * 200)
    o = score_redetection(gt, pred)
    assert not o.recovered
    assert o.frames_to_recover is None


def test_score_threshold_is_non_strict():
    # IoU exactly 0.5: 10x10 vs 10x10 shifted so inter=50 ... use half overlap
    gt = Track.from_boxes([BBox(0, 0, 10, 10)])
    pred = Track.from_boxes([BBox(0, 5, 10, 10)])  # inter 50, union 150 -> 1/3
    assert not score_redetection(gt, pred).recovered
    pred2 = Track.from_boxes([BBox(0, 0, 10, 5)])  # inter 50, union 100 -> 0.5
    assert score_redetection(gt, pred2).recovered


def test_score_ignores_frames_after_first_recovery():
    gt = Track.from_boxes([BBox(0, 0, 10, 10)] * 50)
    hit = BBox(0, 0, 10, 10)
    miss = BBox(999, 0, 10, 10)
    a = Track.from_boxes([miss] * 9 + [hit] + [miss] * 40)
    b = Track.from_boxes([miss] * 9 + [hit] + [hit] * 40)
    assert score_redetection(gt, a) == score_redetection(gt, b)


def test_score_length_mismatch():
    gt = gen_linear_gt(5, BBox(0, 0, 1, 1))
    pred = gen_linear_gt(4, BBox(0, 0, 1, 1))
    with pytest.raises(LengthMismatch):
        score_redetection(gt, pred)


def test_aggregate_example():
    outcomes = [
        RedetectOutcome(True, 5),
        RedetectOutcome(True, 40),
        RedetectOutcome(False),
    ]
    assert aggregate_redetection(outcomes) == (1, 2, 22.5)


def test_aggregate_none_recovered():
    assert aggregate_redetection([RedetectOutcome(False)] * 3) == (0, 0, None)


def test_aggregate_empty():
    with pytest.raises(EmptyInput):
        aggregate_redetection([])


@given(
    st.lists(
        st.one_of(
            st.just(RedetectOutcome(False)),
            st.integers(1, 200).map(lambda k: RedetectOutcome(True, k)),
        ),
        min_size=1,
        max_size=40,
    )
)
def test_aggregate_count_ordering(outcomes):
    quick, total, avg = aggregate_redetection(outcomes)
    assert 0 <= quick <= total <= len(outcomes)
    if total:
        assert 1 <= avg <= 200
    else:
        assert avg is None


def test_quick_definition_boundary():
    assert RedetectOutcome(True, 30).quick
    assert not RedetectOutcome(True, 31).quick
    assert not RedetectOutcome(False).quick


def test_cutspec_csv_round_trip():
    specs = [
        ("seq_a", CutSpec(1, 101, 300, 200, -0.9357)),
        ("seq_b", CutSpec(5, 105, 300, 200, -0.25)),
    ]
    text = format_cutspecs(specs)
    back = list(parse_cutspecs(text))
    assert [name for name, _ in back] == ["seq_a", "seq_b"]
    assert back[0][1].cut_start == 101
    assert back[0][1].boundary_giou == pytest.approx(-0.9357)
