"""Multi-class evaluation under class-weighting schemes for imbalanced data."""

from .dataset_stats import DatasetStats, dataset_stats, imbalance_ratio, perplexity
from .errors import (
    ConfigurationError,
    DegenerateDistributionError,
    DegenerateVarianceError,
    EvaluationError,
    InconsistentInputError,
    ParseError,
    UnsupportedSchemeError,
)
from .metrics import (
    ClassCounts,
    ConfusionCounts,
    EvaluationRun,
    LabeledPair,
    confusion_counts,
    f_beta,
    micro_f,
    per_class_f,
    per_class_scores,
)
from .report import ReportConfig, build_report, compare_runs, compare_scores, weight_table
from .stattest import ComparisonResult, RunGroup, cohens_d, effect_label, welch_t_test
from .weighting import (
    DODRANS,
    ENTROPY,
    MACRO,
    MICRO,
    WEIGHTED,
    Power,
    Scheme,
    aggregate_score,
    class_weights,
    parse_scheme,
    validate_desiderata,
)

__version__ = "0.1.0"
