"""Re-detection, recovery and reliability analysis for long-term tracker traces."""

from .chance import (
    AlternateStats,
    RecoveryEvent,
    StaticStats,
    aggregate_chance,
    alternate_overlap_series,
    analyze_alternate,
    analyze_static,
    detect_alternate_recoveries,
    detect_static_recoveries,
    is_stationary,
    pct_alternate_tracked,
    reduced_success,
)
from .geometry import BBox, center_distance, contains, enclosing_box, giou, iou
from .lsm import LsmMatrix, export_heatmap, lsm, lsm_3d, lsm_matrix
from .metrics import (
    MetricConfig,
    dataset_average,
    precision_rate,
    success_curve,
    success_rate,
)
from .redetect import (
    CutSpec,
    RedetectOutcome,
    aggregate_redetection,
    apply_cut,
    plan_cut,
    score_redetection,
)
from .trace import (
    Detection,
    FrameBox,
    OverlapSeries,
    Track,
    overlap_series,
    parse_detections,
    parse_track,
    serialize_detections,
    serialize_track,
)

__version__ = "0.1.0"

__all__ = [
    "AlternateStats",
    "BBox",
    "CutSpec",
    "Detection",
    "FrameBox",
    "LsmMatrix",
    "MetricConfig",
    "OverlapSeries",
    "RecoveryEvent",
    "RedetectOutcome",
    "StaticStats",
    "Track",
    "aggregate_chance",
    "aggregate_redetection",
    "alternate_overlap_series",
    "analyze_alternate",
    "analyze_static",
    "apply_cut",
    "center_distance",
    "contains",
    "dataset_average",
    "detect_alternate_recoveries",
    "detect_static_recoveries",
    "enclosing_box",
    "export_heatmap",
    "giou",
    "iou",
    "is_stationary",
    "lsm",
    "lsm_3d",
    "lsm_matrix",
    "overlap_series",
    "parse_detections",
    "parse_track",
    "pct_alternate_tracked",
    "plan_cut",
    "precision_rate",
    "reduced_success",
    "score_redetection",
    "serialize_detections",
    "serialize_track",
    "success_curve",
    "success_rate",
]
