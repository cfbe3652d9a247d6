"""Command-line front end.

Subcommands: eval, cut plan, cut score, chance alternate, chance static,
lsm, report, synth.  Data goes to stdout or files, diagnostics to stderr.
Percentages print with 2 decimals, ratios and GIoU with 4, so outputs are
byte-stable across runs.  Exit codes: 0 ok, 2 bad input, 3 nothing to do.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import chance, metrics, redetect, synth, trace
from .errors import RrrError, SequenceTooShort
from .lsm import LsmMatrix, export_heatmap, lsm, lsm_3d, lsm_matrix, matrix_csv

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOTHING = 3

EVAL_HEADER = "success,success_auc,precision,lsm,lsm_3d"
CUT_SCORE_HEADER = "quick_recoveries,total_recoveries,avg_recovery_frames"
ALTERNATE_HEADER = "sequence,pct_alternate_frames,recoveries,original_success,reduced_success"
STATIC_HEADER = "sequence,recoveries,chances,static_recovery,original_success,reduced_success"
TABLE1_HEADER = "tracker,quick_recoveries,total_recoveries,avg_recovery_frames"
TABLE2_HEADER = "tracker,pct_alternate_frames,avg_recoveries,original_success,reduced_success"
TABLE3_HEADER = (
    "tracker,avg_recoveries,avg_chances,sequences_with_static_recoveries,"
    "original_success,reduced_success"
)
TABLE4_HEADER = "tracker,success"


def _pct(v: float) -> str:
    return f"{v:.2f}"


def _ratio(v: float) -> str:
    return f"{v:.4f}"


def _opt_pct(v: Optional[float]) -> str:
    return "" if v is None else _pct(v)


def _warn(msg: str) -> None:
    print(f"rrr: {msg}", file=sys.stderr)


def _read(path: Path) -> str:
    return path.read_text(encoding="utf-8")


def _load_track(path: Path, fmt: str) -> trace.Track:
    return trace.parse_track(_read(path), format=fmt)


def _default_jobs() -> int:
    return os.cpu_count() or 1


def _pool_map(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


# ---------------------------------------------------------------- eval


def cmd_eval(args) -> int:
    gt = _load_track(Path(args.gt), "gt")
    pred = _load_track(Path(args.pred), "pred")
    s = trace.overlap_series(gt, pred, args.absent_policy)
    success = metrics.success_rate(s, args.iou)
    _, auc = metrics.success_curve(s, args.step)
    precision = metrics.precision_rate(gt, pred, args.precision, args.absent_policy)
    single = lsm(s, args.lsm_slack, args.lsm_iou)
    scalar = lsm_3d(lsm_matrix(s))
    print(EVAL_HEADER)
    print(
        f"{_pct(success)},{_pct(auc)},{_pct(precision)},{_ratio(single)},{_ratio(scalar)}"
    )
    return EXIT_OK


# ---------------------------------------------------------------- cut


def cmd_cut_plan(args) -> int:
    specs: list[tuple[str, redetect.CutSpec]] = []
    for path in map(Path, args.gt_files):
        gt = _load_track(path, "gt")
        try:
            spec = redetect.plan_cut(
                gt, cut_len=args.cut_len, init_len=args.init_len, eval_len=args.eval_len
            )
        except SequenceTooShort as e:
            _warn(f"skipping {path.stem}: {e}")
            continue
        specs.append((path.stem, spec))
    if not specs:
        _warn("no sequence is long enough to plan a cut")
        return EXIT_NOTHING
    text = redetect.format_cutspecs(specs)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _post_cut_windows(
    gt: trace.Track, spec: redetect.CutSpec, pred: trace.Track
) -> tuple[trace.Track, trace.Track]:
    """Evaluation windows for scoring; the prediction trace may cover the
    whole spliced sequence or just the evaluation window."""
    spliced = redetect.apply_cut(gt, spec)
    gt_post = trace.Track.from_boxes([e.box for e in spliced.entries[spec.init_len :]])
    if len(pred) == len(spliced):
        pred_post = trace.Track.from_boxes([e.box for e in pred.entries[spec.init_len :]])
    elif len(pred) == spec.eval_len:
        pred_post = pred
    else:
        raise RrrError(
            f"prediction trace has {len(pred)} frames, expected "
            f"{len(spliced)} (spliced) or {spec.eval_len} (eval window)"
        )
    return gt_post, pred_post


def cmd_cut_score(args) -> int:
    cuts = list(redetect.parse_cutspecs(_read(Path(args.cuts))))
    gt_dir = Path(args.gt_dir)
    pred_dir = Path(args.pred_dir)

    def score_one(item):
        name, spec = item
        gt = _load_track(gt_dir / f"{name}.txt", "gt")
        pred = _load_track(pred_dir / f"{name}.txt", "pred")
        return redetect.score_redetection(*_post_cut_windows(gt, spec, pred))

    outcomes = _pool_map(score_one, cuts, args.jobs or _default_jobs())
    quick, total, avg = redetect.aggregate_redetection(outcomes)
    print(CUT_SCORE_HEADER)
    print(f"{quick},{total},{_opt_pct(avg)}")
    return EXIT_OK


# ---------------------------------------------------------------- chance


def _chance_inputs(args) -> list[tuple[str, Path, Path, Optional[Path]]]:
    """(sequence, gt path, pred path, det path or None) per sequence, either
    from single-file flags or from directories plus a name list."""
    if args.gt:
        if not args.pred:
            raise RrrError("--gt needs --pred")
        gt = Path(args.gt)
        det = Path(args.det) if args.det else None
        return [(gt.stem, gt, Path(args.pred), det)]
    if not args.gt_dir or not args.pred_dir:
        raise RrrError("give --gt/--pred files or --gt-dir/--pred-dir")
    if args.sequences:
        names = [s for s in args.sequences.split(",") if s]
    elif args.subset:
        lines = _read(Path(args.subset)).splitlines()
        names = [ln.strip() for ln in lines if ln.strip()]
    else:
        raise RrrError("give --sequences or --subset")
    det_dir = Path(args.det_dir) if args.det_dir else None
    return [
        (
            name,
            Path(args.gt_dir) / f"{name}.txt",
            Path(args.pred_dir) / f"{name}.txt",
            det_dir / f"{name}.txt" if det_dir else None,
        )
        for name in names
    ]


def cmd_chance(args) -> int:
    inputs = _chance_inputs(args)
    jobs = args.jobs or _default_jobs()
    rows: list[str] = []
    if args.mode == "alternate":
        def analyze(item):
            name, gt_path, pred_path, det_path = item
            if det_path is None or not det_path.exists():
                raise RrrError(f"missing detection file for sequence {name!r}")
            gt = _load_track(gt_path, "gt")
            pred = _load_track(pred_path, "pred")
            dets = trace.parse_detections(_read(det_path))
            s = trace.overlap_series(gt, pred, args.absent_policy)
            return chance.analyze_alternate(gt, pred, dets, s, args.iou)

        stats = _pool_map(analyze, inputs, jobs)
        for (name, *_), st in zip(inputs, stats):
            rows.append(
                f"{name},{_pct(st.pct_alternate_frames)},{len(st.recoveries)},"
                f"{_pct(st.original_success)},{_pct(st.reduced_success)}"
            )
        agg = chance.aggregate_chance(stats, "alternate")
        rows.append(
            f"mean,{_pct(agg.mean_pct)},{_pct(agg.mean_recoveries)},"
            f"{_pct(agg.mean_original)},{_pct(agg.mean_reduced)}"
        )
        print(ALTERNATE_HEADER)
    else:
        def analyze(item):
            name, gt_path, pred_path, _ = item
            gt = _load_track(gt_path, "gt")
            pred = _load_track(pred_path, "pred")
            s = trace.overlap_series(gt, pred, args.absent_policy)
            return chance.analyze_static(pred, s, args.iou)

        stats = _pool_map(analyze, inputs, jobs)
        for (name, *_), st in zip(inputs, stats):
            rows.append(
                f"{name},{st.recoveries},{st.chances},{int(st.had_static_recovery)},"
                f"{_pct(st.original_success)},{_pct(st.reduced_success)}"
            )
        agg = chance.aggregate_chance(stats, "static")
        rows.append(
            f"mean,{_pct(agg.mean_recoveries)},{_pct(agg.mean_chances)},"
            f"{agg.sequences_with_recovery},{_opt_pct(agg.mean_original)},"
            f"{_opt_pct(agg.mean_reduced)}"
        )
        print(STATIC_HEADER)
    for row in rows:
        print(row)
    return EXIT_OK


# ---------------------------------------------------------------- lsm


def cmd_lsm(args) -> int:
    gt = _load_track(Path(args.gt), "gt")
    pred = _load_track(Path(args.pred), "pred")
    s = trace.overlap_series(gt, pred, args.absent_policy)
    m = lsm_matrix(s)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / f"{args.name}.pgm").write_bytes(export_heatmap(m, args.scale))
    (out_dir / f"{args.name}.csv").write_text(matrix_csv(m), encoding="utf-8")
    print(_ratio(lsm_3d(m)))
    return EXIT_OK


# ---------------------------------------------------------------- synth


def cmd_synth(args) -> int:
    out_dir = Path(args.out_dir)
    if args.scenario == "dataset":
        paths = write_dataset(out_dir)
    else:
        scn = synth.build_scenario(args.scenario)
        paths = write_scenario(scn, out_dir)
    for p in paths:
        _warn(f"wrote {p}")
    return EXIT_OK


def write_scenario(scn: synth.Scenario, out_dir: Path) -> list[Path]:
    """Write one scenario's trace files flat into out_dir."""
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    def emit(name: str, text: str) -> None:
        p = out_dir / name
        p.write_text(text, encoding="utf-8")
        written.append(p)

    emit(f"{scn.name}_gt.txt", trace.serialize_track(scn.gt))
    emit(f"{scn.name}_pred.txt", trace.serialize_track(scn.pred))
    if scn.detections is not None:
        emit(f"{scn.name}_det.txt", trace.serialize_detections(scn.detections))
    if scn.cut is not None:
        emit(f"{scn.name}_cuts.csv", redetect.format_cutspecs([(scn.name, scn.cut)]))
    if scn.redetect_pred is not None:
        emit(f"{scn.name}_redetect.txt", trace.serialize_track(scn.redetect_pred))
    return written


def write_dataset(root: Path) -> list[Path]:
    """Write every scenario as a structured dataset plus a ready report config.

    Layout: gt/, det/, pred/ideal/ (prediction = ground truth), pred/scenario/
    (each scenario's simulated tracker), redetect/<tracker>/ (traces on the
    spliced sequences), cuts/cutspec.csv, subset.txt, report.cfg.
    """
    written = []

    def emit(rel: str, data: str | bytes) -> None:
        p = root / rel
        p.parent.mkdir(parents=True, exist_ok=True)
        if isinstance(data, bytes):
            p.write_bytes(data)
        else:
            p.write_text(data, encoding="utf-8")
        written.append(p)

    scenarios = synth.build_all()
    cuts = []
    subset = []
    for scn in scenarios:
        emit(f"gt/{scn.name}.txt", trace.serialize_track(scn.gt))
        emit(f"pred/ideal/{scn.name}.txt", trace.serialize_track(scn.gt))
        emit(f"pred/scenario/{scn.name}.txt", trace.serialize_track(scn.pred))
        if scn.detections is not None:
            emit(f"det/{scn.name}.txt", trace.serialize_detections(scn.detections))
            subset.append(scn.name)
        if scn.cut is not None and scn.redetect_pred is not None:
            cuts.append((scn.name, scn.cut))
            spliced = redetect.apply_cut(scn.gt, scn.cut)
            emit(f"redetect/ideal/{scn.name}.txt", trace.serialize_track(spliced))
            emit(f"redetect/scenario/{scn.name}.txt", trace.serialize_track(scn.redetect_pred))
    emit("cuts/cutspec.csv", redetect.format_cutspecs(cuts))
    emit("subset.txt", "\n".join(subset) + "\n")
    cfg = "\n".join(
        [
            "gt_dir = gt",
            "det_dir = det",
            "sequences = " + ",".join(s.name for s in scenarios),
            "tracker.ideal = pred/ideal",
            "tracker.scenario = pred/scenario",
            "redetect.ideal = redetect/ideal",
            "redetect.scenario = redetect/scenario",
            "cuts = cuts/cutspec.csv",
            "subset = subset.txt",
            "absent_policy = zero",
            "iou = 0.5",
            "precision = 20",
            "out_dir = reports",
        ]
    )
    emit("report.cfg", cfg + "\n")
    return written


# ---------------------------------------------------------------- report


@dataclass
class RunConfig:
    gt_dir: Path
    sequences: list[str]
    trackers: dict[str, Path]
    out_dir: Path
    det_dir: Optional[Path] = None
    redetect_dirs: dict[str, Path] = field(default_factory=dict)
    cuts: Optional[Path] = None
    subset: Optional[Path] = None
    absent_policy: str = "zero"
    iou: float = 0.5
    precision: float = 20.0
    cut_len: int = 300
    init_len: int = 100
    eval_len: int = 200


def parse_runconfig(path: Path) -> RunConfig:
    """Line-oriented ``key = value`` config; relative paths resolve against
    the config file's directory."""
    base = path.parent
    raw: dict[str, str] = {}
    trackers: dict[str, Path] = {}
    redetect_dirs: dict[str, Path] = {}
    for line_no, line in enumerate(_read(path).splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise RrrError(f"{path}:{line_no}: expected 'key = value'")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key.startswith("tracker."):
            trackers[key[len("tracker.") :]] = base / value
        elif key.startswith("redetect."):
            redetect_dirs[key[len("redetect.") :]] = base / value
        else:
            raw[key] = value

    known = {
        "gt_dir", "det_dir", "sequences", "cuts", "subset", "absent_policy",
        "iou", "precision", "out_dir", "cut_len", "init_len", "eval_len",
    }
    unknown = set(raw) - known
    if unknown:
        raise RrrError(f"{path}: unknown config keys: {', '.join(sorted(unknown))}")
    for req in ("gt_dir", "sequences", "out_dir"):
        if req not in raw:
            raise RrrError(f"{path}: missing required key {req!r}")
    if not trackers:
        raise RrrError(f"{path}: at least one tracker.<name> entry is required")

    cfg = RunConfig(
        gt_dir=base / raw["gt_dir"],
        sequences=[s for s in raw["sequences"].split(",") if s],
        trackers=trackers,
        out_dir=base / raw["out_dir"],
        det_dir=base / raw["det_dir"] if "det_dir" in raw else None,
        redetect_dirs=redetect_dirs,
        cuts=base / raw["cuts"] if "cuts" in raw else None,
        subset=base / raw["subset"] if "subset" in raw else None,
        absent_policy=raw.get("absent_policy", "zero"),
        iou=float(raw.get("iou", "0.5")),
        precision=float(raw.get("precision", "20")),
        cut_len=int(raw.get("cut_len", "300")),
        init_len=int(raw.get("init_len", "100")),
        eval_len=int(raw.get("eval_len", "200")),
    )
    if not cfg.sequences:
        raise RrrError(f"{path}: sequence list is empty")
    if cfg.subset is not None and cfg.det_dir is None:
        raise RrrError(f"{path}: subset needs det_dir for the alternate analysis")
    if cfg.absent_policy not in trace.ABSENT_POLICIES:
        raise RrrError(f"{path}: bad absent_policy {cfg.absent_policy!r}")
    metrics.MetricConfig(cfg.iou, cfg.precision, cfg.absent_policy)  # range checks
    for name, p in [("gt_dir", cfg.gt_dir), ("det_dir", cfg.det_dir),
                    ("cuts", cfg.cuts), ("subset", cfg.subset)]:
        if p is not None and not p.exists():
            raise RrrError(f"{path}: {name} does not exist: {p}")
    for tname, p in {**cfg.trackers, **cfg.redetect_dirs}.items():
        if not p.exists():
            raise RrrError(f"{path}: directory for {tname!r} does not exist: {p}")
    return cfg


def _render_heatmap_png(m: LsmMatrix, scalar: float, tracker: str, path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(4.2, 3.6))
    im = ax.imshow(
        m.values,
        cmap="gray",
        vmin=0.0,
        vmax=1.0,
        origin="upper",
        extent=(0.025, 1.025, 1.025, 0.025),
        aspect="auto",
    )
    ax.set_xlabel("IoU threshold")
    ax.set_ylabel("slack")
    ax.set_title(f"{tracker}  (mean {scalar:.4f})")
    fig.colorbar(im, ax=ax, fraction=0.046)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def cmd_report(args) -> int:
    cfg = parse_runconfig(Path(args.config))
    if args.out_dir:
        cfg.out_dir = Path(args.out_dir)
    jobs = args.jobs or _default_jobs()
    cfg.out_dir.mkdir(parents=True, exist_ok=True)

    gts = {
        name: _load_track(cfg.gt_dir / f"{name}.txt", "gt") for name in cfg.sequences
    }

    subset_names: list[str] = []
    if cfg.subset is not None:
        listed = [ln.strip() for ln in _read(cfg.subset).splitlines() if ln.strip()]
        subset_names = [n for n in cfg.sequences if n in listed]

    detections = {}
    if cfg.det_dir is not None:
        for name in subset_names:
            det_path = cfg.det_dir / f"{name}.txt"
            if not det_path.exists():
                raise RrrError(f"missing detection file {det_path}")
            detections[name] = trace.parse_detections(_read(det_path))

    cuts: list[tuple[str, redetect.CutSpec]] = []
    if cfg.redetect_dirs:
        if cfg.cuts is not None:
            cuts = [
                (name, spec)
                for name, spec in redetect.parse_cutspecs(_read(cfg.cuts))
                if name in gts
            ]
        else:
            for name in cfg.sequences:
                try:
                    spec = redetect.plan_cut(
                        gts[name], cfg.cut_len, cfg.init_len, cfg.eval_len
                    )
                except SequenceTooShort as e:
                    _warn(f"cut: skipping {name}: {e}")
                    continue
                cuts.append((name, spec))

    def eval_one(item: tuple[str, str]) -> dict:
        tracker, name = item
        pred = _load_track(cfg.trackers[tracker] / f"{name}.txt", "pred")
        gt = gts[name]
        s = trace.overlap_series(gt, pred, cfg.absent_policy)
        out = {
            "success": metrics.success_rate(s, cfg.iou),
            "matrix": lsm_matrix(s),
            "static": chance.analyze_static(pred, s, cfg.iou),
        }
        if name in detections:
            out["alternate"] = chance.analyze_alternate(
                gt, pred, detections[name], s, cfg.iou
            )
        return out

    tasks = [(t, n) for t in cfg.trackers for n in cfg.sequences]
    results = dict(zip(tasks, _pool_map(eval_one, tasks, jobs)))

    table1 = [TABLE1_HEADER]
    table2 = [TABLE2_HEADER]
    table3 = [TABLE3_HEADER]
    table4 = [TABLE4_HEADER]
    for tracker in cfg.trackers:
        per_seq = [results[(tracker, n)] for n in cfg.sequences]
        table4.append(
            f"{tracker},{_pct(metrics.dataset_average([r['success'] for r in per_seq]))}"
        )

        static_agg = chance.aggregate_chance([r["static"] for r in per_seq], "static")
        table3.append(
            f"{tracker},{_pct(static_agg.mean_recoveries)},{_pct(static_agg.mean_chances)},"
            f"{static_agg.sequences_with_recovery},{_opt_pct(static_agg.mean_original)},"
            f"{_opt_pct(static_agg.mean_reduced)}"
        )

        if subset_names:
            alt_stats = [results[(tracker, n)]["alternate"] for n in subset_names]
            alt_agg = chance.aggregate_chance(alt_stats, "alternate")
            table2.append(
                f"{tracker},{_pct(alt_agg.mean_pct)},{_pct(alt_agg.mean_recoveries)},"
                f"{_pct(alt_agg.mean_original)},{_pct(alt_agg.mean_reduced)}"
            )

        if tracker in cfg.redetect_dirs and cuts:
            outcomes = []
            for name, spec in cuts:
                pred = _load_track(cfg.redetect_dirs[tracker] / f"{name}.txt", "pred")
                gt_post, pred_post = _post_cut_windows(gts[name], spec, pred)
                outcomes.append(redetect.score_redetection(gt_post, pred_post))
            quick, total, avg = redetect.aggregate_redetection(outcomes)
            table1.append(f"{tracker},{quick},{total},{_opt_pct(avg)}")

        # dataset-level reliability grid: per-sequence matrices averaged
        mats = [r["matrix"].values for r in per_seq]
        mean_matrix = LsmMatrix(sum(mats) / len(mats))
        scalar = lsm_3d(mean_matrix)
        (cfg.out_dir / f"lsm_{tracker}.pgm").write_bytes(
            export_heatmap(mean_matrix, args.scale)
        )
        (cfg.out_dir / f"lsm_{tracker}.csv").write_text(
            matrix_csv(mean_matrix), encoding="utf-8"
        )
        _render_heatmap_png(
            mean_matrix, scalar, tracker, cfg.out_dir / f"lsm_{tracker}.png"
        )

    for fname, rows in (
        ("table1.csv", table1),
        ("table2.csv", table2),
        ("table3.csv", table3),
        ("table4.csv", table4),
    ):
        (cfg.out_dir / fname).write_text("\n".join(rows) + "\n", encoding="utf-8")
    _warn(f"report written to {cfg.out_dir}")
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--absent-policy", choices=trace.ABSENT_POLICIES, default="zero")
    p.add_argument("--iou", type=float, default=0.5, help="IoU success threshold")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rrr",
        description="Re-detection, recovery and reliability analysis of tracker traces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="frame-pooled metrics for one gt/pred pair")
    p.add_argument("--gt", required=True)
    p.add_argument("--pred", required=True)
    _add_common(p)
    p.add_argument("--precision", type=float, default=20.0, help="precision radius (px)")
    p.add_argument("--step", type=float, default=0.05, help="success curve step")
    p.add_argument("--lsm-slack", type=float, default=0.95)
    p.add_argument("--lsm-iou", type=float, default=0.5)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("cut", help="plan simulated cuts / score re-detection")
    cut_sub = p.add_subparsers(dest="cut_command", required=True)
    pp = cut_sub.add_parser("plan", help="plan one GIoU-minimizing cut per sequence")
    pp.add_argument("gt_files", nargs="+", metavar="GT_FILE")
    pp.add_argument("--cut-len", type=int, default=300)
    pp.add_argument("--init-len", type=int, default=100)
    pp.add_argument("--eval-len", type=int, default=200)
    pp.add_argument("--out", help="cut-spec CSV path (default: stdout)")
    pp.set_defaults(fn=cmd_cut_plan)
    ps = cut_sub.add_parser("score", help="score post-cut traces against a cut-spec CSV")
    ps.add_argument("--cuts", required=True)
    ps.add_argument("--gt-dir", required=True)
    ps.add_argument("--pred-dir", required=True)
    ps.add_argument("--jobs", type=int, default=None)
    ps.set_defaults(fn=cmd_cut_score)

    p = sub.add_parser("chance", help="chance-based recovery analysis")
    p.add_argument("mode", choices=("alternate", "static"))
    p.add_argument("--gt", help="single ground-truth file")
    p.add_argument("--pred", help="single prediction file")
    p.add_argument("--det", help="single detection file (alternate mode)")
    p.add_argument("--gt-dir")
    p.add_argument("--pred-dir")
    p.add_argument("--det-dir")
    p.add_argument("--sequences", help="comma-separated sequence names")
    p.add_argument("--subset", help="file with one sequence name per line")
    p.add_argument("--jobs", type=int, default=None)
    _add_common(p)
    p.set_defaults(fn=cmd_chance)

    p = sub.add_parser("lsm", help="reliability grid, heatmap and scalar score")
    p.add_argument("--gt", required=True)
    p.add_argument("--pred", required=True)
    _add_common(p)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--scale", type=int, default=10, help="heatmap pixels per cell")
    p.add_argument("--name", default="lsm", help="output file stem")
    p.set_defaults(fn=cmd_lsm)

    p = sub.add_parser("report", help="full dataset report from a run config")
    p.add_argument("config")
    p.add_argument("--out-dir", help="override the config's out_dir")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--scale", type=int, default=10)
    p.set_defaults(fn=cmd_report)

    p = sub.add_parser("synth", help="write a synthetic scenario (or 'dataset')")
    p.add_argument(
        "scenario",
        help="one of: " + ", ".join(synth.SCENARIO_NAMES) + ", dataset",
    )
    p.add_argument("--out-dir", required=True)
    p.set_defaults(fn=cmd_synth)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (RrrError, OSError, KeyError, ValueError) as e:
        _warn(str(e))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
