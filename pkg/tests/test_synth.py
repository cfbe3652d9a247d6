import pytest

from rrr.errors import FrameOutOfRange
from rrr.geometry import BBox, iou
from rrr.lsm import lsm_3d, lsm_matrix
from rrr.metrics import success_rate
from rrr.redetect import apply_cut, plan_cut, score_redetection
from rrr.synth import (
    SCENARIO_NAMES,
    build_all,
    build_scenario,
    gen_linear_gt,
    sim_distractor_switch,
    sim_frozen,
    sim_teleport,
)
from rrr.trace import Track, overlap_series


def test_gen_linear_positions():
    t = gen_linear_gt(5, BBox(0, 0, 10, 10), (2, 0))
    assert [e.box.x for e in t] == [0, 2, 4, 6, 8]
    assert all(not e.absent for e in t)


def test_gen_linear_constant():
    t = gen_linear_gt(4, BBox(3, 4, 5, 6))
    assert all(e.box == BBox(3, 4, 5, 6) for e in t)


def test_gen_linear_single_frame():
    assert len(gen_linear_gt(1, BBox(0, 0, 1, 1))) == 1


def test_gen_linear_rejects_zero():
    with pytest.raises(ValueError):
        gen_linear_gt(0, BBox(0, 0, 1, 1))


def test_sim_frozen_from_first_frame():
    gt = gen_linear_gt(10, BBox(0, 0, 10, 10), (5, 0))
    pred = sim_frozen(gt, 1)
    assert all(e.box == gt.box(1) for e in pred)


def test_sim_frozen_at_last_frame_is_noop():
    gt = gen_linear_gt(10, BBox(0, 0, 10, 10), (5, 0))
    assert sim_frozen(gt, 10).entries[:-1] == gt.entries[:-1]
    assert sim_frozen(gt, 10).box(10) == gt.box(10)


def test_sim_frozen_out_of_range():
    gt = gen_linear_gt(10, BBox(0, 0, 10, 10))
    with pytest.raises(FrameOutOfRange):
        sim_frozen(gt, 11)


def test_sim_distractor_switch_follows_phases():
    gt = gen_linear_gt(20, BBox(0, 0, 10, 10))
    distractor = gen_linear_gt(20, BBox(100, 0, 10, 10))
    pred, dets = sim_distractor_switch(gt, distractor, 5, 15)
    assert pred.box(4) == gt.box(4)
    assert pred.box(5) == distractor.box(5)
    assert pred.box(14) == distractor.box(14)
    assert pred.box(15) == gt.box(15)
    assert set(dets) == set(range(1, 21))


def test_sim_distractor_switch_empty_interval():
    gt = gen_linear_gt(20, BBox(0, 0, 10, 10))
    distractor = gen_linear_gt(20, BBox(100, 0, 10, 10))
    pred, _ = sim_distractor_switch(gt, distractor, 7, 7)
    assert pred == gt


def test_sim_distractor_switch_bad_interval():
    gt = gen_linear_gt(20, BBox(0, 0, 10, 10))
    distractor = gen_linear_gt(20, BBox(100, 0, 10, 10))
    with pytest.raises(FrameOutOfRange):
        sim_distractor_switch(gt, distractor, 15, 5)
    with pytest.raises(FrameOutOfRange):
        sim_distractor_switch(gt, distractor, 5, 25)


def _post_windows(gt, spec, pred):
    spliced = apply_cut(gt, spec)
    gt_post = Track.from_boxes([e.box for e in spliced.entries[spec.init_len :]])
    pred_post = Track.from_boxes([e.box for e in pred.entries[spec.init_len :]])
    return gt_post, pred_post


@pytest.mark.parametrize("k,quick", [(1, True), (25, True), (30, True), (31, False), (200, False)])
def test_sim_teleport_recovers_at_k(k, quick):
    gt = gen_linear_gt(700, BBox(1, 0, 10, 10), (1, 0))
    spec = plan_cut(gt)
    pred = sim_teleport(gt, spec, k)
    outcome = score_redetection(*_post_windows(gt, spec, pred))
    assert outcome.recovered
    assert outcome.frames_to_recover == k
    assert outcome.quick is quick


def test_sim_teleport_follows_init_window():
    gt = gen_linear_gt(700, BBox(1, 0, 10, 10), (1, 0))
    spec = plan_cut(gt)
    pred = sim_teleport(gt, spec, 25)
    spliced = apply_cut(gt, spec)
    for t in range(1, spec.init_len + 1):
        assert pred.box(t) == spliced.box(t)
    assert iou(pred.box(spec.init_len + 1), spliced.box(spec.init_len)) == 1.0


def test_sim_teleport_rejects_late_reacquire():
    gt = gen_linear_gt(700, BBox(1, 0, 10, 10), (1, 0))
    spec = plan_cut(gt)
    with pytest.raises(FrameOutOfRange):
        sim_teleport(gt, spec, 201)


def test_generators_are_deterministic():
    for name in SCENARIO_NAMES:
        a, b = build_scenario(name), build_scenario(name)
        assert a.gt == b.gt
        assert a.pred == b.pred
        assert a.expected == b.expected


def test_unknown_scenario():
    with pytest.raises(KeyError):
        build_scenario("nope")


def test_every_scenario_reproduces_declared_success():
    for scn in build_all():
        s = overlap_series(scn.gt, scn.pred)
        assert success_rate(s, 0.5) == pytest.approx(scn.expected["success_at_0.5"])


def test_perfect_scenario_lsm():
    scn = build_scenario("perfect")
    s = overlap_series(scn.gt, scn.pred)
    assert lsm_3d(lsm_matrix(s)) == scn.expected["lsm_3d"]


def test_teleport_scenario_cut_matches_expected():
    scn = build_scenario("teleport_quick")
    assert scn.cut.cut_start == scn.expected["cut_start"]
    outcome = score_redetection(*_post_windows(scn.gt, scn.cut, scn.redetect_pred))
    assert outcome.frames_to_recover == scn.expected["frames_to_recover"]
    assert outcome.quick is scn.expected["quick"]


def test_never_recover_scenario():
    scn = build_scenario("never_recover")
    outcome = score_redetection(*_post_windows(scn.gt, scn.cut, scn.redetect_pred))
    assert outcome.recovered is scn.expected["recovered"]
