"""Discovery of variable-length, time-warped motif sets in time series."""
from .core import Segment, is_coincident, seg_intersection_len, znormalize
from .ssm import compute_ssm, quantile_threshold
from .loco import (
    DIAGONAL_STEPS,
    WARPING_STEPS,
    GapPenaltyParams,
    WarpingPath,
    backtrack,
    compute_cumulative,
    find_paths,
    extract_paths,
    vicinity,
)
from .discovery import (
    CandidateMotifSet,
    DiscoveryConfig,
    DiscoveryResult,
    best_motif_set,
    candidate_subpaths,
    fitness,
    guidance_mask_from_rest,
    locomotif,
)
from .evaluation import (
    GroundTruth,
    MatchingMatrix,
    evaluate,
    match_segments,
    matching_matrix,
    precision_recall_f1,
)
from .benchgen import (
    GeneratedBenchmark,
    LabeledInstancePool,
    generate_one,
    generate_suite,
    kappa_max,
)

__version__ = "0.1.0"
