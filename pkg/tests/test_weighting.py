import math

import pytest
from hypothesis import assume, given, settings, strategies as st

from weighted_eval.errors import (
    DegenerateDistributionError,
    EvaluationError,
    InconsistentInputError,
    UnsupportedSchemeError,
)
from weighted_eval.weighting import (
    DODRANS,
    ENTROPY,
    MACRO,
    MICRO,
    WEIGHTED,
    Power,
    aggregate_score,
    class_weights,
    entropy_d1_risk,
    parse_scheme,
    validate_desiderata,
)

import oracles

SKEWED = {"A": 100, "B": 10, "C": 1}


def assert_weights(actual, expected, tol):
    assert set(actual) == set(expected)
    for c in expected:
        assert actual[c] == pytest.approx(expected[c], abs=tol), c


def test_class_weighted_example():
    assert_weights(class_weights(SKEWED, WEIGHTED), {"A": 100 / 111, "B": 10 / 111, "C": 1 / 111}, 1e-15)


def test_macro_example():
    assert_weights(class_weights(SKEWED, MACRO), {c: 1 / 3 for c in SKEWED}, 1e-15)


def test_dodrans_example():
    # normalized (100**0.75, 10**0.75, 1)
    assert_weights(class_weights(SKEWED, DODRANS), {"A": 0.826822, "B": 0.147032, "C": 0.026146}, 5e-7)


def test_entropy_example():
    # normalized (100 log2 1.11, 10 log2 11.1, log2 111)
    assert_weights(class_weights(SKEWED, ENTROPY), {"A": 0.266123, "B": 0.613782, "C": 0.120095}, 5e-7)


@pytest.mark.parametrize("scheme", [WEIGHTED, DODRANS, ENTROPY, MACRO, Power(0.3)])
def test_equal_counts_give_uniform_weights(scheme):
    assert_weights(class_weights({"A": 7, "B": 7, "C": 7}, scheme), {c: 1 / 3 for c in "ABC"}, 1e-15)


def test_weights_match_oracle():
    for name, scheme in [("weighted", WEIGHTED), ("dodrans", DODRANS), ("entropy", ENTROPY), ("macro", MACRO)]:
        assert_weights(class_weights(SKEWED, scheme), oracles.scheme_weights(SKEWED, name), 1e-12)


def test_micro_has_no_weights():
    with pytest.raises(UnsupportedSchemeError):
        class_weights(SKEWED, MICRO)


def test_entropy_single_class_is_degenerate():
    with pytest.raises(DegenerateDistributionError):
        class_weights({"A": 5}, ENTROPY)


def test_entropy_single_class_with_negative_samples_in_denominator():
    assert class_weights({"A": 5}, ENTROPY, extra_total=20) == {"A": 1.0}


def test_entropy_extra_total_changes_weights():
    w = class_weights({"A": 3, "B": 1}, ENTROPY, extra_total=16)
    raw = {"A": -3 * math.log2(3 / 20), "B": -math.log2(1 / 20)}
    s = sum(raw.values())
    assert_weights(w, {c: v / s for c, v in raw.items()}, 1e-15)


@pytest.mark.parametrize("bad", [{}, {"A": 0}, {"A": -1, "B": 3}])
def test_invalid_counts(bad):
    with pytest.raises(EvaluationError):
        class_weights(bad, MACRO)


def test_aggregate_examples():
    scores = {"A": 0.8, "B": 2 / 3}
    assert aggregate_score(scores, class_weights({"A": 3, "B": 1}, WEIGHTED)) == pytest.approx(0.7666666666666667, abs=1e-15)
    assert aggregate_score(scores, class_weights({"A": 3, "B": 1}, MACRO)) == pytest.approx(0.7333333333333333, abs=1e-15)
    assert aggregate_score({"A": 1.0, "B": 1.0}, class_weights({"A": 9, "B": 2}, DODRANS)) == pytest.approx(1.0, abs=1e-15)


def test_aggregate_missing_score():
    with pytest.raises(InconsistentInputError):
        aggregate_score({"A": 1.0}, {"A": 0.5, "B": 0.5})


def test_parse_scheme():
    assert parse_scheme("Dodrans") == DODRANS
    assert parse_scheme("class-weighted") == WEIGHTED
    assert parse_scheme("power:0.5") == Power(0.5)
    for bad in ("median", "power", "power:2", "power:x"):
        with pytest.raises(UnsupportedSchemeError):
            parse_scheme(bad)


def test_desiderata_dodrans_pass():
    assert validate_desiderata(SKEWED, class_weights(SKEWED, DODRANS)).all_passed


def test_desiderata_entropy_breaks_d1_on_dominant_class():
    report = validate_desiderata(SKEWED, class_weights(SKEWED, ENTROPY))
    assert report.d0.passed and report.d2.passed
    assert not report.d1.passed
    assert report.d1.witnesses == (("A", "B"),)
    assert entropy_d1_risk(SKEWED) == ["A"]


def test_desiderata_macro_pass_with_equality():
    assert validate_desiderata(SKEWED, class_weights(SKEWED, MACRO)).all_passed


def test_desiderata_detects_unnormalized_and_d2():
    report = validate_desiderata({"A": 2, "B": 1}, {"A": 0.9, "B": 0.3})
    assert not report.d0.passed
    assert report.d2.witnesses == (("A", "B"),)


def test_desiderata_requires_same_classes():
    with pytest.raises(InconsistentInputError):
        validate_desiderata({"A": 1}, {"B": 1.0})


count_maps = st.dictionaries(
    st.text("abcdefgh", min_size=1, max_size=3), st.integers(1, 10**6), min_size=1, max_size=30
)
exponents = st.floats(0.0, 1.0)


@given(count_maps, exponents)
def test_d0_d1_d2_for_degressive_schemes(counts, p):
    for scheme in (WEIGHTED, DODRANS, MACRO, Power(p)):
        report = validate_desiderata(counts, class_weights(counts, scheme))
        assert report.all_passed, (scheme, report)
        assert abs(report.weight_sum - 1) <= 1e-9


@given(count_maps)
def test_entropy_d0_d2_and_restricted_d1(counts):
    assume(len(counts) > 1)
    w = class_weights(counts, ENTROPY)
    report = validate_desiderata(counts, w)
    assert report.d0.passed and report.d2.passed
    total = sum(counts.values())
    for i, _ in report.d1.witnesses:
        assert counts[i] / total > math.exp(-1)


@given(count_maps)
def test_dodrans_between_macro_and_weighted(counts):
    w = class_weights(counts, DODRANS)
    for i in counts:
        for j in counts:
            if counts[i] >= counts[j]:
                ratio = w[i] / w[j]
                assert 1 - 1e-12 <= ratio <= counts[i] / counts[j] * (1 + 1e-12)


@given(count_maps)
def test_power_family_consistency(counts):
    for p, scheme in ((1.0, WEIGHTED), (0.75, DODRANS), (0.0, MACRO)):
        a, b = class_weights(counts, Power(p)), class_weights(counts, scheme)
        assert all(abs(a[c] - b[c]) <= 1e-12 for c in counts)


@given(count_maps, st.integers(1, 1000), exponents)
def test_scale_invariance(counts, factor, p):
    scaled = {c: n * factor for c, n in counts.items()}
    for scheme in (WEIGHTED, DODRANS, MACRO, Power(p)):
        a, b = class_weights(counts, scheme), class_weights(scaled, scheme)
        assert all(abs(a[c] - b[c]) <= 1e-12 for c in counts)
