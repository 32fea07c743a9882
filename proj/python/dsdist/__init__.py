"""Dataset-to-dataset distances between image feature embeddings.

Feature matrices are projected jointly onto their leading principal
components; each secondary image's distance is its summed Euclidean distance
to every primary image, and the dataset distance is the mean of those.
"""

from ._core import (
    DistanceReport,
    DistributionSummary,
    DsdistError,
    FeatureMatrix,
    NormalizedRows,
    OdsResult,
    PixelGrid,
    ProjectionResult,
    ScaledSeries,
    SplitPart,
    SplitReport,
    SweepRow,
    compute_distance,
    decode_fvec,
    default_thresholds,
    distribution_summary,
    encode_fvec,
    encode_pgm,
    format_csv,
    generate,
    load_matrix,
    min_max_scale,
    moving_average,
    normalize_rows,
    ods,
    pairwise,
    parse_pgm,
    pc_sweep,
    per_image_fscores,
    project_pair,
    read_csv,
    read_fvec,
    read_pgm,
    run_cli,
    select_for_adaptation,
    sort_by_distance,
    split_stats,
    write_fvec,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
