"""Assemble classification reports, run summaries, model comparisons and weight tables."""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, replace
from typing import Optional

from . import metrics, weighting
from .errors import DegenerateVarianceError, EvaluationError
from .metrics import EvaluationRun
from .stattest import RunGroup, compare
from .weighting import DEFAULT_SCHEMES, Scheme


@dataclass(frozen=True)
class ReportConfig:
    beta: float = 1.0
    na_label: Optional[str] = None
    include_na: bool = False
    schemes: tuple[Scheme, ...] = DEFAULT_SCHEMES
    # "gold" for the evaluated set's own gold labels, otherwise a description
    # of the external counts (e.g. a file path)
    weight_source: str = "gold"
    entropy_na_in_denominator: bool = False

    def __post_init__(self):
        object.__setattr__(self, "schemes", order_schemes(self.schemes))
        if not self.beta > 0:
            raise EvaluationError(f"beta must be positive, got {self.beta!r}")

    def as_dict(self) -> dict:
        return {
            "beta": self.beta,
            "na_label": self.na_label,
            "include_na": self.include_na,
            "schemes": [str(s) for s in self.schemes],
            "weight_source": self.weight_source,
            "entropy_na_in_denominator": self.entropy_na_in_denominator,
        }


def order_schemes(schemes: Sequence[Scheme]) -> tuple[Scheme, ...]:
    """Deduplicate and sort from instance-focused to class-focused."""
    rank = {s.name: i for i, s in enumerate(DEFAULT_SCHEMES)}

    def key(s: Scheme):
        if s.name == "power":
            # n**p sits between weighted (p=1) and macro (p=0)
            return (rank["weighted"] + (1 - s.power) * (rank["macro"] - rank["weighted"]), 1)
        return (rank[s.name], 0)

    return tuple(sorted(dict.fromkeys(schemes), key=key))


@dataclass(frozen=True)
class ClassRow:
    label: str
    support: int
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f_beta: float
    zero_division: bool
    # False for the negative class (unless included) and prediction-only classes
    weighted: bool


@dataclass(frozen=True)
class ClassificationReport:
    rows: tuple[ClassRow, ...]
    aggregates: Mapping[str, float]
    weights: Mapping[str, Mapping[str, float]]
    warnings: tuple[str, ...]
    config: ReportConfig
    model_id: str = ""
    run_id: str = ""
    n_samples: int = 0


def _weight_counts(
    run: EvaluationRun,
    confusion: metrics.ConfusionCounts,
    config: ReportConfig,
    external: Optional[Mapping[str, int]],
) -> tuple[dict[str, int], int]:
    source = dict(external) if external is not None else confusion.support()
    source = {c: n for c, n in source.items() if n > 0}
    na = run.na_label
    extra = 0
    if na is not None and not config.include_na:
        na_count = source.pop(na, 0)
        if config.entropy_na_in_denominator:
            extra = na_count
    return source, extra


def build_report(
    run: EvaluationRun,
    config: Optional[ReportConfig] = None,
    external_counts: Optional[Mapping[str, int]] = None,
) -> ClassificationReport:
    """Score ``run`` under every configured scheme.

    Weights come from the run's gold support unless ``external_counts`` is
    given. The negative class takes part in weighted aggregates only with
    ``include_na``; a run without ``na_label`` is pooled over all classes for
    micro.
    """
    config = config or ReportConfig(na_label=run.na_label)
    if config.na_label is None and run.na_label is not None:
        config = replace(config, na_label=run.na_label)
    elif config.na_label != run.na_label:
        run = EvaluationRun(run.pairs, config.na_label, run.model_id, run.run_id)
    confusion = metrics.confusion_counts(run)
    scores = metrics.per_class_scores(confusion, config.beta)
    counts, extra = _weight_counts(run, confusion, config, external_counts)
    warnings = []

    aggregates: dict[str, float] = {}
    weights: dict[str, dict[str, float]] = {}
    f_map = {c: s.f_beta for c, s in scores.items()}
    pooled = config.include_na or run.na_label is None
    for scheme in config.schemes:
        if scheme.name == "micro":
            aggregates[str(scheme)] = metrics.micro_f(run, config.beta, include_na=pooled)
            continue
        w = weighting.class_weights(counts, scheme, extra_total=extra)
        weights[str(scheme)] = w
        aggregates[str(scheme)] = weighting.aggregate_score(f_map, w)

    if any(s.name == "entropy" for s in config.schemes):
        dominant = weighting.entropy_d1_risk(counts, extra)
        if dominant:
            warnings.append(
                "entropy weights decrease with count for classes above 1/e of the data "
                f"(monotonicity D1 violated): {', '.join(dominant)}"
            )

    rows = []
    for label, c in confusion.items():
        s = scores[label]
        rows.append(
            ClassRow(
                label=label, support=c.support, tp=c.tp, fp=c.fp, fn=c.fn,
                precision=s.precision, recall=s.recall, f_beta=s.f_beta,
                zero_division=s.zero_division, weighted=label in counts,
            )
        )
    rows.sort(key=lambda r: (-r.support, r.label))

    prediction_only = [r.label for r in rows if r.support == 0]
    if prediction_only:
        warnings.append(
            "classes predicted but absent from gold get zero weight: " + ", ".join(prediction_only)
        )
    zero_div = [r.label for r in rows if r.zero_division]
    if zero_div:
        warnings.append("zero division (tp = fp = fn = 0), score set to 0: " + ", ".join(zero_div))
    if external_counts is not None:
        unseen = [c for c in counts if c not in confusion]
        if unseen:
            warnings.append("weighted classes missing from this run: " + ", ".join(unseen))

    return ClassificationReport(
        rows=tuple(rows),
        aggregates=aggregates,
        weights=weights,
        warnings=tuple(warnings),
        config=config,
        model_id=run.model_id,
        run_id=run.run_id,
        n_samples=len(run),
    )


@dataclass(frozen=True)
class SchemeSummary:
    mean: float
    std: Optional[float]  # None for a single run
    n_runs: int


def mean_std(values: Sequence[float]) -> SchemeSummary:
    n = len(values)
    mu = math.fsum(values) / n
    std = math.sqrt(math.fsum((v - mu) ** 2 for v in values) / (n - 1)) if n > 1 else None
    return SchemeSummary(mu, std, n)


def summarize(reports: Sequence[ClassificationReport]) -> dict[str, SchemeSummary]:
    if not reports:
        raise EvaluationError("nothing to summarize")
    keys = list(reports[0].aggregates)
    return {k: mean_std([r.aggregates[k] for r in reports]) for k in keys}


@dataclass(frozen=True)
class SchemeComparison:
    scheme: str
    a: SchemeSummary
    b: SchemeSummary
    t: Optional[float]
    df: Optional[float]
    p_value: Optional[float]
    cohens_d: Optional[float]
    effect_label: Optional[str]


@dataclass(frozen=True)
class ComparisonReport:
    model_a: str
    model_b: str
    rows: tuple[SchemeComparison, ...]
    notices: tuple[str, ...] = ()
    config: Optional[ReportConfig] = None
    scale: float = 1.0


def compare_scores(
    scores_a: Mapping[str, Sequence[float]],
    scores_b: Mapping[str, Sequence[float]],
    model_a: str = "A",
    model_b: str = "B",
    config: Optional[ReportConfig] = None,
    scale: float = 1.0,
) -> ComparisonReport:
    """Compare two models scheme by scheme from their per-run scores.

    Scores are multiplied by ``scale`` first (100 for percentages); the test
    statistic, p-value and Cohen's d are unaffected by it.
    """
    notices = []
    rows = []
    for scheme in scores_a:
        ga = RunGroup(model_a, [v * scale for v in scores_a[scheme]])
        gb = RunGroup(model_b, [v * scale for v in scores_b[scheme]])
        sa, sb = mean_std(ga.scores), mean_std(gb.scores)
        try:
            res = compare(ga, gb)
        except DegenerateVarianceError:
            notices.append(f"{scheme}: both models have zero variance; no test reported")
            rows.append(SchemeComparison(scheme, sa, sb, None, None, None, None, None))
            continue
        rows.append(
            SchemeComparison(scheme, sa, sb, res.t, res.df, res.p_value, res.cohens_d, res.effect_label)
        )
    na, nb = len(next(iter(scores_a.values()), ())), len(next(iter(scores_b.values()), ()))
    if na != nb:
        notices.append(
            f"Cohen's d omitted: unequal run counts ({na} vs {nb}); Welch's test still applies"
        )
    return ComparisonReport(model_a, model_b, tuple(rows), tuple(notices), config, scale)


def compare_runs(
    runs_a: Sequence[EvaluationRun],
    runs_b: Sequence[EvaluationRun],
    config: Optional[ReportConfig] = None,
    external_counts: Optional[Mapping[str, int]] = None,
    model_a: str = "A",
    model_b: str = "B",
    scale: float = 1.0,
) -> ComparisonReport:
    for name, runs in ((model_a, runs_a), (model_b, runs_b)):
        if len(runs) < 2:
            raise EvaluationError(f"model {name!r} needs at least 2 runs, got {len(runs)}")
    reports_a = [build_report(r, config, external_counts) for r in runs_a]
    reports_b = [build_report(r, config, external_counts) for r in runs_b]
    keys = list(reports_a[0].aggregates)
    scores_a = {k: [r.aggregates[k] for r in reports_a] for k in keys}
    scores_b = {k: [r.aggregates[k] for r in reports_b] for k in keys}
    return compare_scores(scores_a, scores_b, model_a, model_b, reports_a[0].config, scale)


@dataclass(frozen=True)
class WeightTable:
    counts: Mapping[str, int]  # sorted by descending count
    columns: Mapping[str, Mapping[str, float]]
    excluded: Optional[str] = None


def weight_table(
    counts: Mapping[str, int],
    schemes: Sequence[Scheme] = DEFAULT_SCHEMES[1:],
    na_label: Optional[str] = None,
    entropy_na_in_denominator: bool = False,
) -> WeightTable:
    """Normalized weight of every class under each scheme, negative class left out."""
    counts = {c: n for c, n in counts.items() if n > 0}
    extra = counts.pop(na_label, 0) if na_label is not None else 0
    if not entropy_na_in_denominator:
        extra = 0
    ordered = dict(sorted(counts.items(), key=lambda kv: (-kv[1], kv[0])))
    columns = {}
    for scheme in order_schemes(schemes):
        w = weighting.class_weights(ordered, scheme, extra_total=extra)
        columns[str(scheme)] = {c: w[c] for c in ordered}
    return WeightTable(ordered, columns, na_label)
