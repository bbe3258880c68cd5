"""Synthetic single-molecule localization sequences as a set-prediction benchmark.

The package simulates blinking fluorophores over a small region of
interest, filters the resulting localization streams down to
single-detection sequences, packages them into reproducible datasets
with ground-truth emitter sets, and scores point-set predictions
against that ground truth.
"""

from .baseline import BaselineConfig, cluster_predict, read_predictions, write_predictions
from .conditions import (
    REGISTRY,
    ConditionParams,
    Roi,
    Termination,
    check_regime,
    condition,
    condition_ids,
    is_excluded_regime,
)
from .dataset import (
    FORMAT_VERSION,
    SPLIT_NAMES,
    DatasetManifest,
    Sample,
    canonical_dump,
    derive_sample_stream,
    generate_dataset,
    generate_sample,
    load_dataset,
    load_split,
    split_ranges,
    summarize_dataset,
)
from .errors import (
    DatasetError,
    DatasetFormatError,
    DatasetIntegrityError,
    DatasetVersionError,
    ExcludedRegimeError,
    GenerationError,
    PredictionsError,
)
from .filtering import (
    FilteredSample,
    apply_detection_filter,
    enforce_single_detection,
    retain_emitters,
)
from .metrics import (
    Assignment,
    DetectionReport,
    chamfer_distance,
    detection_report,
    evaluate_samples,
    hungarian_assignment,
    hungarian_error,
    select_examples,
)
from .simulate import (
    BlinkSchedule,
    Emitter,
    LocalizationRecord,
    draw_dwell,
    dwell_frames,
    place_emitters,
    render_localizations,
    sample_schedule,
    simulate_acquisition,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BaselineConfig",
    "cluster_predict",
    "read_predictions",
    "write_predictions",
    "REGISTRY",
    "ConditionParams",
    "Roi",
    "Termination",
    "check_regime",
    "condition",
    "condition_ids",
    "is_excluded_regime",
    "FORMAT_VERSION",
    "SPLIT_NAMES",
    "DatasetManifest",
    "Sample",
    "canonical_dump",
    "derive_sample_stream",
    "generate_dataset",
    "generate_sample",
    "load_dataset",
    "load_split",
    "split_ranges",
    "summarize_dataset",
    "DatasetError",
    "DatasetFormatError",
    "DatasetIntegrityError",
    "DatasetVersionError",
    "ExcludedRegimeError",
    "GenerationError",
    "PredictionsError",
    "FilteredSample",
    "apply_detection_filter",
    "enforce_single_detection",
    "retain_emitters",
    "Assignment",
    "DetectionReport",
    "chamfer_distance",
    "detection_report",
    "evaluate_samples",
    "hungarian_assignment",
    "hungarian_error",
    "select_examples",
    "BlinkSchedule",
    "Emitter",
    "LocalizationRecord",
    "draw_dwell",
    "dwell_frames",
    "place_emitters",
    "render_localizations",
    "sample_schedule",
    "simulate_acquisition",
]
