"""Confusion counts and F-beta scores for single-label multi-class runs.

Labels are plain strings compared exactly. An optional negative label
(``na_label``, e.g. ``"no_relation"``) marks the class meaning "no relation
holds"; micro scores exclude its true positives by default, the usual
relation-classification convention.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Optional

from .errors import ConfigurationError, EvaluationError


@dataclass(frozen=True)
class LabeledPair:
    gold: str
    predicted: str

    def __post_init__(self):
        for name in ("gold", "predicted"):
            value = getattr(self, name)
            if not isinstance(value, str) or not value:
                raise EvaluationError(f"{name} label must be a non-empty string, got {value!r}")


@dataclass(frozen=True)
class EvaluationRun:
    """One model run: ordered gold/predicted pairs plus the negative-class label."""

    pairs: tuple[LabeledPair, ...]
    na_label: Optional[str] = None
    model_id: str = ""
    run_id: str = ""

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))
        if not self.pairs:
            raise EvaluationError("an evaluation run needs at least one labeled pair")
        if self.na_label is not None and not self.na_label:
            raise ConfigurationError("na_label must be a non-empty string or None")

    @classmethod
    def from_labels(
        cls,
        gold: Sequence[str],
        predicted: Sequence[str],
        na_label: Optional[str] = None,
        model_id: str = "",
        run_id: str = "",
    ) -> "EvaluationRun":
        if len(gold) != len(predicted):
            raise EvaluationError(
                f"gold and predicted differ in length ({len(gold)} != {len(predicted)})"
            )
        pairs = tuple(LabeledPair(g, p) for g, p in zip(gold, predicted))
        return cls(pairs, na_label=na_label, model_id=model_id, run_id=run_id)

    @property
    def gold(self) -> list[str]:
        return [p.gold for p in self.pairs]

    @property
    def predicted(self) -> list[str]:
        return [p.predicted for p in self.pairs]

    def __len__(self) -> int:
        return len(self.pairs)

    def check_labels(self, allowed: Iterable[str]) -> None:
        """Raise if any gold or predicted label is outside ``allowed``."""
        allowed = set(allowed)
        for lineno, pair in enumerate(self.pairs, start=1):
            for label in (pair.gold, pair.predicted):
                if label not in allowed:
                    raise ConfigurationError(f"unknown label {label!r} in pair {lineno}")


@dataclass(frozen=True)
class ClassCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    @property
    def support(self) -> int:
        return self.tp + self.fn


@dataclass(frozen=True)
class ConfusionCounts(Mapping):
    """Per-class TP/FP/FN, keyed by label in order of first appearance."""

    by_class: Mapping[str, ClassCounts] = field(default_factory=dict)

    def __getitem__(self, label: str) -> ClassCounts:
        return self.by_class[label]

    def __iter__(self):
        return iter(self.by_class)

    def __len__(self) -> int:
        return len(self.by_class)

    def support(self) -> dict[str, int]:
        """Gold occurrences per class, restricted to classes with support > 0."""
        return {c: k.support for c, k in self.by_class.items() if k.support > 0}


@dataclass(frozen=True)
class ClassScore:
    precision: float
    recall: float
    f_beta: float
    zero_division: bool


def confusion_counts(run: EvaluationRun) -> ConfusionCounts:
    tp: dict[str, int] = {}
    fp: dict[str, int] = {}
    fn: dict[str, int] = {}
    order: dict[str, None] = {}
    for pair in run.pairs:
        order.setdefault(pair.gold)
        order.setdefault(pair.predicted)
        if pair.gold == pair.predicted:
            tp[pair.gold] = tp.get(pair.gold, 0) + 1
        else:
            fn[pair.gold] = fn.get(pair.gold, 0) + 1
            fp[pair.predicted] = fp.get(pair.predicted, 0) + 1
    return ConfusionCounts(
        {c: ClassCounts(tp.get(c, 0), fp.get(c, 0), fn.get(c, 0)) for c in order}
    )


def _check_beta(beta: float) -> None:
    if not beta > 0:
        raise ConfigurationError(f"beta must be positive, got {beta!r}")


def f_beta(tp: int, fp: int, fn: int, beta: float = 1.0) -> float:
    """F-beta from raw counts; 0.0 when tp = fp = fn = 0 (see ``is_zero_division``)."""
    _check_beta(beta)
    if min(tp, fp, fn) < 0:
        raise ConfigurationError("confusion counts must be non-negative")
    b2 = beta * beta
    denom = (1 + b2) * tp + b2 * fn + fp
    if denom == 0:
        return 0.0
    return (1 + b2) * tp / denom


def is_zero_division(tp: int, fp: int, fn: int) -> bool:
    return tp == 0 and fp == 0 and fn == 0


def per_class_scores(counts: ConfusionCounts, beta: float = 1.0) -> dict[str, ClassScore]:
    _check_beta(beta)
    scores = {}
    for label, c in counts.items():
        predicted = c.tp + c.fp
        precision = c.tp / predicted if predicted else 0.0
        recall = c.tp / c.support if c.support else 0.0
        scores[label] = ClassScore(
            precision=precision,
            recall=recall,
            f_beta=f_beta(c.tp, c.fp, c.fn, beta),
            zero_division=is_zero_division(c.tp, c.fp, c.fn),
        )
    return scores


def per_class_f(counts: ConfusionCounts, beta: float = 1.0) -> dict[str, float]:
    return {label: s.f_beta for label, s in per_class_scores(counts, beta).items()}


def micro_counts(run: EvaluationRun, include_na: bool = False) -> ClassCounts:
    """Pooled TP/FP/FN, optionally leaving out the negative class."""
    if include_na:
        correct = sum(p.gold == p.predicted for p in run.pairs)
        return ClassCounts(correct, len(run) - correct, len(run) - correct)
    if run.na_label is None:
        raise ConfigurationError("micro score without the negative class needs na_label")
    na = run.na_label
    predicted_pos = gold_pos = correct = 0
    for p in run.pairs:
        if p.predicted != na:
            predicted_pos += 1
            correct += p.predicted == p.gold
        if p.gold != na:
            gold_pos += 1
    return ClassCounts(correct, predicted_pos - correct, gold_pos - correct)


def micro_f(run: EvaluationRun, beta: float = 1.0, include_na: bool = False) -> float:
    """Pooled F-beta over all pairs.

    With ``include_na=False`` pairs are pooled over the positive classes only:
    precision is taken over non-negative predictions and recall over non-negative
    gold labels. With ``include_na=True`` every class is pooled; pooled FP then
    equals pooled FN and the result is plain accuracy for any beta.
    """
    c = micro_counts(run, include_na)
    return f_beta(c.tp, c.fp, c.fn, beta)


def accuracy(run: EvaluationRun) -> float:
    return sum(p.gold == p.predicted for p in run.pairs) / len(run)
