"""Welch's t-test and Cohen's d for comparing two models' per-run scores."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import ConfigurationError, DegenerateVarianceError, EvaluationError

_CF_MAX_ITER = 500
_CF_EPS = 1e-16
_TINY = 1e-300


@dataclass(frozen=True)
class RunGroup:
    """Scores of one model, one per run."""

    model_id: str
    scores: tuple[float, ...]

    def __post_init__(self):
        scores = tuple(float(s) for s in self.scores)
        object.__setattr__(self, "scores", scores)
        if len(scores) < 2:
            raise EvaluationError(
                f"model {self.model_id!r}: need at least 2 runs, got {len(scores)}"
            )
        if not all(math.isfinite(s) for s in scores):
            raise EvaluationError(f"model {self.model_id!r}: scores must be finite")

    @property
    def n(self) -> int:
        return len(self.scores)

    @property
    def mean(self) -> float:
        return math.fsum(self.scores) / self.n

    @property
    def variance(self) -> float:
        """Unbiased sample variance (divisor n - 1)."""
        mu = self.mean
        return math.fsum((s - mu) ** 2 for s in self.scores) / (self.n - 1)

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)


@dataclass(frozen=True)
class WelchResult:
    t: float
    df: float
    p_value: float


@dataclass(frozen=True)
class ComparisonResult:
    t: float
    df: float
    p_value: float
    cohens_d: Optional[float]
    effect_label: Optional[str]


def _betacf(a: float, b: float, x: float) -> float:
    # modified Lentz evaluation of the incomplete-beta continued fraction
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def regularized_incomplete_beta(x: float, a: float, b: float) -> float:
    """I_x(a, b) for a, b > 0 and 0 <= x <= 1."""
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    # continued fraction converges quickly only for x below (a + 1) / (a + b + 2)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def t_sf_two_sided(t: float, df: float) -> float:
    """P(|T| >= |t|) for Student's t with ``df`` degrees of freedom."""
    if not df > 0:
        raise ValueError("degrees of freedom must be positive")
    if t == 0:
        return 1.0
    if math.isinf(t):
        return 0.0
    x = df / (df + t * t)
    return min(1.0, regularized_incomplete_beta(x, df / 2.0, 0.5))


def t_cdf(t: float, df: float) -> float:
    tail = 0.5 * t_sf_two_sided(t, df)
    return 1.0 - tail if t > 0 else tail


def _check_variances(a: RunGroup, b: RunGroup) -> None:
    if a.variance == 0 and b.variance == 0:
        raise DegenerateVarianceError(
            f"both {a.model_id!r} and {b.model_id!r} have zero score variance"
        )


def welch_t_test(a: RunGroup, b: RunGroup) -> WelchResult:
    _check_variances(a, b)
    va, vb = a.variance / a.n, b.variance / b.n
    se2 = va + vb
    t = (a.mean - b.mean) / math.sqrt(se2)
    df = se2 * se2 / (va * va / (a.n - 1) + vb * vb / (b.n - 1))
    return WelchResult(t=t, df=df, p_value=t_sf_two_sided(t, df))


def cohens_d(a: RunGroup, b: RunGroup) -> float:
    """Equal-n standardized mean difference, sqrt(2) * (mu_a - mu_b) / sqrt(var_a + var_b)."""
    if a.n != b.n:
        raise ConfigurationError(
            f"Cohen's d needs equal run counts, got {a.n} and {b.n}"
        )
    _check_variances(a, b)
    return math.sqrt(2.0) * (a.mean - b.mean) / math.sqrt(a.variance + b.variance)


# Sawilowsky's extension of Cohen's rules of thumb, checked on |d|.
EFFECT_THRESHOLDS = (
    (2.0, "huge"),
    (1.2, "very large"),
    (0.8, "large"),
    (0.5, "medium"),
    (0.2, "small"),
    (0.01, "very small"),
)


def effect_label(d: float) -> str:
    size = abs(d)
    for threshold, label in EFFECT_THRESHOLDS:
        if size >= threshold:
            return label
    return "negligible"


def compare(a: RunGroup, b: RunGroup) -> ComparisonResult:
    """Welch test plus, for equal run counts, Cohen's d and its label."""
    welch = welch_t_test(a, b)
    d = label = None
    if a.n == b.n:
        d = cohens_d(a, b)
        label = effect_label(d)
    return ComparisonResult(welch.t, welch.df, welch.p_value, d, label)
