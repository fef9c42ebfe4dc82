"""Journal-level citation anomaly detection and its synthetic benchmark."""

from .boxplot import BucketIndex, GridStats, StaticCandidate, bucket_journals, detect_static, grid_stats
from .corpus import (
    CitationTensor,
    CollaborationIndex,
    Corpus,
    PaperRecord,
    build_collab_index,
    build_tensor,
    corpus_from_records,
    ingest,
)
from .explain import AnomalyReason, CrowdingStats, categorize, count_prev_collabs, crowding_stats
from .pipeline import PipelineConfig, PipelineResult, run_pipeline
from .scoring import (
    AnomalyFinding,
    EvalMetrics,
    combine,
    evaluate,
    evaluate_pairs,
    kmeans_baseline,
    static_confidence,
    temporal_confidence,
)
from .synthgen import GroundTruthLabel, SynthConfig, SynthDataset, generate
from .timeseries import EmpiricalBand, TemporalFinding, detect_temporal, empirical_band

__version__ = "0.1.0"
