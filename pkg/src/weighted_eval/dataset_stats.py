"""Label-distribution diagnostics for imbalanced datasets.

Perplexity is ``2 ** H`` with ``H`` the Shannon entropy (bits) of the class
distribution; it equals the number of classes exactly when the classes are
balanced, and shrinks towards 1 as one class dominates.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import Optional

from .errors import EvaluationError


def label_counts(labels: Iterable[str]) -> dict[str, int]:
    return dict(Counter(labels))


def entropy_bits(counts: Mapping[str, int]) -> float:
    counts = {c: n for c, n in counts.items() if n > 0}
    if not counts:
        raise EvaluationError("entropy of an empty distribution is undefined")
    total = sum(counts.values())
    return -math.fsum((n / total) * math.log2(n / total) for n in counts.values())


def perplexity(counts: Mapping[str, int]) -> float:
    if any(n < 0 for n in counts.values()):
        raise EvaluationError("class counts must be non-negative")
    return 2.0 ** entropy_bits(counts)


def imbalance_ratio(counts: Mapping[str, int], na_label: Optional[str] = None) -> float:
    """Most frequent over least frequent positive (non-negative-class) count."""
    positive = [n for c, n in counts.items() if c != na_label and n > 0]
    if not positive:
        raise EvaluationError("imbalance ratio needs at least one positive class")
    return max(positive) / min(positive)


@dataclass(frozen=True)
class DatasetStats:
    n_classes: int
    n_samples: int
    pct_na: float
    perplexity_with_na: float
    # None when every label is the negative class
    perplexity_without_na: Optional[float]
    ratio: Optional[float]
    na_label: Optional[str] = None
    split: Optional[str] = None


def dataset_stats(
    labels: Iterable[str], na_label: Optional[str] = None, split: Optional[str] = None
) -> DatasetStats:
    counts = label_counts(labels)
    if not counts:
        raise EvaluationError("dataset statistics need at least one label")
    n = sum(counts.values())
    n_na = counts.get(na_label, 0) if na_label is not None else 0
    positive = {c: k for c, k in counts.items() if c != na_label}
    return DatasetStats(
        n_classes=len(counts),
        n_samples=n,
        pct_na=100.0 * n_na / n,
        perplexity_with_na=perplexity(counts),
        perplexity_without_na=perplexity(positive) if positive else None,
        ratio=imbalance_ratio(positive) if positive else None,
        na_label=na_label,
        split=split,
    )
