"""Class-weighting schemes for combining per-class scores.

Every scheme except micro assigns each class a raw weight from its sample
count and normalizes the weights to sum to one:

=============  ==========================
scheme         raw weight for count n_i
=============  ==========================
weighted       n_i
dodrans        n_i ** 0.75
entropy        -n_i * log2(n_i / sum(n))
macro          1
power(p)       n_i ** p
=============  ==========================

``power(p)`` is an extension that contains weighted (p=1), dodrans (p=0.75)
and macro (p=0) as special cases. Micro is a pooled computation with no
weight vector; see :func:`weighted_eval.metrics.micro_f`.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    DegenerateDistributionError,
    EvaluationError,
    InconsistentInputError,
    UnsupportedSchemeError,
)

# Relative slack when checking the desiderata; equality cases (macro for D1,
# weighted for D2) would otherwise fail on last-bit rounding.
DESIDERATA_RTOL = 1e-12
NORMALIZATION_TOL = 1e-9


@dataclass(frozen=True)
class Scheme:
    name: str
    power: Optional[float] = None

    def __post_init__(self):
        if self.name not in _NAMES:
            raise UnsupportedSchemeError(f"unknown weighting scheme {self.name!r}")
        if self.name == "power":
            if self.power is None or not 0.0 <= self.power <= 1.0:
                raise UnsupportedSchemeError(f"power exponent must lie in [0, 1], got {self.power!r}")
        elif self.power is not None:
            raise UnsupportedSchemeError(f"scheme {self.name!r} takes no exponent")

    def __str__(self) -> str:
        return f"power:{self.power:g}" if self.name == "power" else self.name

    @property
    def has_weights(self) -> bool:
        return self.name != "micro"


def Power(p: float) -> Scheme:
    return Scheme("power", float(p))


_NAMES = ("micro", "weighted", "dodrans", "entropy", "macro", "power")

MICRO = Scheme("micro")
WEIGHTED = Scheme("weighted")
DODRANS = Scheme("dodrans")
ENTROPY = Scheme("entropy")
MACRO = Scheme("macro")

# Ordered from instance-focused to class-focused.
DEFAULT_SCHEMES = (MICRO, WEIGHTED, DODRANS, ENTROPY, MACRO)

_ALIASES = {"class-weighted": "weighted", "classweighted": "weighted"}


def parse_scheme(text: str) -> Scheme:
    """Parse ``micro``, ``weighted``, ``dodrans``, ``entropy``, ``macro`` or ``power:<p>``."""
    key = text.strip().lower()
    if key.startswith("power:"):
        try:
            p = float(key.split(":", 1)[1])
        except ValueError:
            raise UnsupportedSchemeError(f"bad power exponent in {text!r}") from None
        return Power(p)
    key = _ALIASES.get(key, key)
    if key == "power" or key not in _NAMES:
        raise UnsupportedSchemeError(f"unknown weighting scheme {text!r}")
    return Scheme(key)


def check_class_counts(counts: Mapping[str, int]) -> None:
    if not counts:
        raise EvaluationError("class counts must contain at least one class")
    for label, n in counts.items():
        if not n > 0:
            raise EvaluationError(f"class {label!r} has non-positive count {n!r}")


def raw_weights(
    counts: Mapping[str, int], scheme: Scheme, extra_total: int = 0
) -> dict[str, float]:
    """Unnormalized weights; ``extra_total`` enlarges the entropy denominator only."""
    if scheme.name == "weighted":
        return {c: float(n) for c, n in counts.items()}
    if scheme.name == "dodrans":
        return {c: n**0.75 for c, n in counts.items()}
    if scheme.name == "macro":
        return {c: 1.0 for c in counts}
    if scheme.name == "power":
        return {c: float(n) ** scheme.power for c, n in counts.items()}
    if scheme.name == "entropy":
        total = sum(counts.values()) + extra_total
        return {c: -n * math.log2(n / total) for c, n in counts.items()}
    raise UnsupportedSchemeError(f"scheme {scheme} has no weight vector; use micro_f")


def class_weights(
    counts: Mapping[str, int], scheme: Scheme, extra_total: int = 0
) -> dict[str, float]:
    """Normalized weight per class for ``scheme``.

    ``extra_total`` adds samples (typically the negative class) to the entropy
    denominator without giving them a weight of their own.
    """
    if not scheme.has_weights:
        raise UnsupportedSchemeError("micro is pooled and has no class weights; use micro_f")
    check_class_counts(counts)
    if extra_total < 0:
        raise EvaluationError("extra_total must be non-negative")
    raw = raw_weights(counts, scheme, extra_total)
    total = math.fsum(raw.values())
    if total <= 0:
        raise DegenerateDistributionError(
            f"{scheme} weights are all zero for counts {dict(counts)}; "
            "entropy weighting needs at least two classes"
        )
    return {c: w / total for c, w in raw.items()}


def aggregate_score(scores: Mapping[str, float], weights: Mapping[str, float]) -> float:
    missing = [c for c in weights if c not in scores]
    if missing:
        raise InconsistentInputError(f"no score for weighted classes {missing}")
    return math.fsum(w * scores[c] for c, w in weights.items())


@dataclass(frozen=True)
class DesideratumResult:
    passed: bool
    witnesses: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class DesiderataReport:
    """Outcome of the D0/D1/D2 checks.

    D0: weights sum to one. D1: a larger class never gets a smaller weight.
    D2: a larger class never gets a larger weight per sample. Witnesses are
    ``(i, j)`` pairs with ``n_i >= n_j`` that break the rule.
    """

    d0: DesideratumResult
    d1: DesideratumResult
    d2: DesideratumResult
    weight_sum: float = field(default=float("nan"))

    @property
    def all_passed(self) -> bool:
        return self.d0.passed and self.d1.passed and self.d2.passed


def _leq(a: float, b: float) -> bool:
    return a <= b + DESIDERATA_RTOL * max(abs(a), abs(b))


def validate_desiderata(
    counts: Mapping[str, int], weights: Mapping[str, float]
) -> DesiderataReport:
    if set(counts) != set(weights):
        raise InconsistentInputError("counts and weights must cover the same classes")
    total = math.fsum(weights.values())
    d0 = DesideratumResult(
        abs(total - 1.0) <= NORMALIZATION_TOL and all(w >= 0 for w in weights.values())
    )
    # sort by count so each pair is visited once with n_i >= n_j
    labels = sorted(counts, key=lambda c: counts[c], reverse=True)
    d1_bad, d2_bad = [], []
    for a, i in enumerate(labels):
        n_i, w_i = counts[i], weights[i]
        for j in labels[a + 1 :]:
            n_j, w_j = counts[j], weights[j]
            pairs = [(i, j, n_i, w_i, n_j, w_j)]
            if n_i == n_j:
                pairs.append((j, i, n_j, w_j, n_i, w_i))
            for x, y, nx, wx, ny, wy in pairs:
                if not _leq(wy, wx):
                    d1_bad.append((x, y))
                if not _leq(wx / nx, wy / ny):
                    d2_bad.append((x, y))
    return DesiderataReport(
        d0=d0,
        d1=DesideratumResult(not d1_bad, tuple(d1_bad)),
        d2=DesideratumResult(not d2_bad, tuple(d2_bad)),
        weight_sum=total,
    )


def proportions(counts: Mapping[str, int], extra_total: int = 0) -> dict[str, float]:
    total = sum(counts.values()) + extra_total
    return {c: n / total for c, n in counts.items()}


def entropy_d1_risk(counts: Mapping[str, int], extra_total: int = 0) -> list[str]:
    """Classes whose proportion exceeds 1/e, where entropy weights stop growing with count."""
    threshold = math.exp(-1)
    return [c for c, p in proportions(counts, extra_total).items() if p > threshold]
