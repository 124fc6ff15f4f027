import math
import random

import pytest
from hypothesis import given, strategies as st

from weighted_eval.dataset_stats import dataset_stats, imbalance_ratio, perplexity
from weighted_eval.errors import EvaluationError


def test_uniform_perplexity_is_class_count():
    for k in (1, 2, 5, 42):
        assert perplexity({f"c{i}": 3 for i in range(k)}) == pytest.approx(k, abs=1e-12)


def test_perplexity_three_to_one():
    # 2 ** -(0.75 log2 0.75 + 0.25 log2 0.25)
    assert perplexity({"A": 3, "B": 1}) == pytest.approx(1.7547653506, abs=1e-9)


def test_perplexity_empty():
    with pytest.raises(EvaluationError):
        perplexity({})


def test_zero_counts_ignored():
    assert perplexity({"A": 4, "B": 4, "C": 0}) == pytest.approx(2.0, abs=1e-12)


def test_imbalance_ratio():
    assert imbalance_ratio({"A": 500, "B": 2}) == 250.0
    assert imbalance_ratio({"A": 4, "B": 4}) == 1.0
    assert imbalance_ratio({"A": 7}) == 1.0
    assert imbalance_ratio({"NA": 900, "A": 10, "B": 5}, na_label="NA") == 2.0
    with pytest.raises(EvaluationError):
        imbalance_ratio({"NA": 3}, na_label="NA")


def test_stats_without_negative_class():
    stats = dataset_stats(list("AABBBC"), na_label="NA")
    assert stats.pct_na == 0.0
    assert stats.perplexity_with_na == stats.perplexity_without_na
    assert stats.n_classes == 3 and stats.n_samples == 6
    assert stats.ratio == 3.0


def test_stats_80_10_10():
    stats = dataset_stats(["NA"] * 80 + ["A"] * 10 + ["B"] * 10, na_label="NA")
    assert stats.pct_na == 80.0
    assert stats.perplexity_without_na == pytest.approx(2.0, abs=1e-12)
    # H = 0.8 log2(1/0.8) + 0.2 log2(10) = 0.921928
    assert stats.perplexity_with_na == pytest.approx(1.8946457081, abs=1e-9)
    assert stats.n_classes == 3
    assert stats.ratio == 1.0


def test_stats_all_negative():
    stats = dataset_stats(["NA"] * 4, na_label="NA")
    assert stats.pct_na == 100.0
    assert stats.perplexity_without_na is None and stats.ratio is None
    assert stats.perplexity_with_na == 1.0


def test_stats_empty():
    with pytest.raises(EvaluationError):
        dataset_stats([])


counts = st.dictionaries(st.text("abcdef", min_size=1, max_size=2), st.integers(1, 10**5), min_size=1, max_size=20)


@given(counts, st.integers(1, 1000))
def test_perplexity_scale_invariant(c, m):
    assert abs(perplexity({k: v * m for k, v in c.items()}) - perplexity(c)) <= 1e-12


@given(counts)
def test_perplexity_bounds(c):
    assert 1 - 1e-12 <= perplexity(c) <= len(c) + 1e-9


@given(counts, st.data())
def test_merging_classes_never_increases_perplexity(c, data):
    if len(c) < 2:
        return
    a, b = data.draw(st.lists(st.sampled_from(sorted(c)), min_size=2, max_size=2, unique=True))
    merged = {k: v for k, v in c.items() if k not in (a, b)}
    merged["merged"] = c[a] + c[b]
    assert perplexity(merged) <= perplexity(c) * (1 + 1e-12)
