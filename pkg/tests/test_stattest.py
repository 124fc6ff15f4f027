import math

import pytest
from hypothesis import given, settings, strategies as st

from weighted_eval.errors import ConfigurationError, DegenerateVarianceError, EvaluationError
from weighted_eval.stattest import (
    RunGroup,
    cohens_d,
    compare,
    effect_label,
    regularized_incomplete_beta,
    t_cdf,
    t_sf_two_sided,
    welch_t_test,
)

import oracles

# mean 72.5 / sd 0.3 and mean 71.5 / sd 0.4, five runs each
PTR = RunGroup("PTR", [72.2, 72.2, 72.5, 72.8, 72.8])
RECENT = RunGroup("RECENT", [71.1, 71.1, 71.5, 71.9, 71.9])


def test_engineered_groups_have_target_moments():
    assert PTR.mean == pytest.approx(72.5, abs=1e-12)
    assert PTR.std == pytest.approx(0.3, abs=1e-12)
    assert RECENT.mean == pytest.approx(71.5, abs=1e-12)
    assert RECENT.std == pytest.approx(0.4, abs=1e-12)


def test_cohens_d_tacred_micro():
    # sqrt(2) * 1 / sqrt(0.09 + 0.16)
    assert cohens_d(PTR, RECENT) == pytest.approx(2 * math.sqrt(2), abs=1e-9)
    assert abs(cohens_d(PTR, RECENT) - 2.8) <= 0.05


def test_cohens_d_identical_and_antisymmetric():
    assert cohens_d(PTR, PTR) == 0.0
    assert cohens_d(RECENT, PTR) == -cohens_d(PTR, RECENT)


def test_cohens_d_needs_equal_n():
    with pytest.raises(ConfigurationError):
        cohens_d(PTR, RunGroup("x", [1.0, 2.0, 3.0]))


def test_zero_variance_both_groups():
    a, b = RunGroup("a", [1.0, 1.0]), RunGroup("b", [2.0, 2.0])
    with pytest.raises(DegenerateVarianceError):
        cohens_d(a, b)
    with pytest.raises(DegenerateVarianceError):
        welch_t_test(a, b)


def test_run_group_needs_two_runs():
    with pytest.raises(EvaluationError):
        RunGroup("a", [0.5])


def test_welch_tacred_micro():
    res = welch_t_test(PTR, RECENT)
    assert res.t == pytest.approx(math.sqrt(20), abs=1e-9)
    # 0.05**2 / ((0.018**2 + 0.032**2) / 4)
    assert res.df == pytest.approx(0.0025 / 0.000337, rel=1e-9)
    # reported as 3e-3 at one significant digit
    assert 1.5e-3 <= res.p_value <= 6e-3
    assert res.p_value == pytest.approx(0.0025057925429, rel=1e-8)


def test_welch_identical_and_swapped():
    res = welch_t_test(PTR, PTR)
    assert res.t == 0.0 and res.p_value == 1.0
    ab, ba = welch_t_test(PTR, RECENT), welch_t_test(RECENT, PTR)
    assert ab.p_value == ba.p_value and ab.t == -ba.t


def test_welch_unequal_n():
    res = compare(PTR, RunGroup("x", [71.0, 71.4, 71.9]))
    assert res.cohens_d is None and res.effect_label is None
    assert 0 < res.p_value < 1


@pytest.mark.parametrize(
    "d, label",
    [
        (2.8, "huge"), (-2.5, "huge"), (2.0, "huge"), (1.5, "very large"), (-1.2, "very large"),
        (0.9, "large"), (0.6, "medium"), (0.3, "small"), (0.05, "very small"), (0.0, "negligible"),
    ],
)
def test_effect_label(d, label):
    assert effect_label(d) == label


def test_incomplete_beta_closed_forms():
    # I_x(1, 1) = x; I_x(a, 1) = x**a; I_x(1, b) = 1 - (1 - x)**b
    for x in (0.0, 0.1, 0.5, 0.9, 1.0):
        assert regularized_incomplete_beta(x, 1, 1) == pytest.approx(x, abs=1e-14)
        assert regularized_incomplete_beta(x, 3.5, 1) == pytest.approx(x**3.5, abs=1e-14)
        assert regularized_incomplete_beta(x, 1, 2.5) == pytest.approx(1 - (1 - x) ** 2.5, abs=1e-14)


def test_t_cdf_closed_forms():
    # df = 1 is Cauchy; df = 2 has F(t) = 1/2 + t / (2 sqrt(2 + t^2))
    for t in (-5.0, -1.0, 0.0, 0.3, 2.0, 10.0):
        assert t_cdf(t, 1) == pytest.approx(0.5 + math.atan(t) / math.pi, abs=1e-14)
        assert t_cdf(t, 2) == pytest.approx(0.5 + t / (2 * math.sqrt(2 + t * t)), abs=1e-14)


@pytest.mark.parametrize("df", [1, 2.5, 7.4183976, 30, 50])
@pytest.mark.parametrize("t", [0.01, 0.7, 2.0, 4.47, 10.0])
def test_two_sided_p_matches_quadrature(df, t):
    assert t_sf_two_sided(t, df) == pytest.approx(oracles.two_sided_p_quadrature(t, df), abs=1e-6)
    assert t_sf_two_sided(-t, df) == t_sf_two_sided(t, df)


scores = st.lists(st.floats(0.0, 1.0), min_size=2, max_size=10)


def _nondegenerate(a, b):
    ga, gb = RunGroup("a", a), RunGroup("b", b)
    return ga, gb, ga.variance + gb.variance > 1e-6


@given(scores, scores, st.floats(-50, 50))
def test_shift_invariance(a, b, c):
    ga, gb, ok = _nondegenerate(a, b)
    if not ok:
        return
    sa, sb = RunGroup("a", [x + c for x in a]), RunGroup("b", [x + c for x in b])
    r0, r1 = welch_t_test(ga, gb), welch_t_test(sa, sb)
    assert r1.t == pytest.approx(r0.t, abs=1e-10 * max(1, abs(r0.t)))
    assert r1.p_value == pytest.approx(r0.p_value, abs=1e-10)
    if len(a) == len(b):
        d0 = cohens_d(ga, gb)
        assert cohens_d(sa, sb) == pytest.approx(d0, abs=1e-10 * max(1, abs(d0)))


@given(st.integers(2, 8).flatmap(lambda n: st.tuples(*[st.lists(st.floats(0.0, 1.0), min_size=n, max_size=n)] * 2)), st.floats(0.01, 100))
def test_scale_invariance_of_d(pair, c):
    a, b = pair
    ga, gb, ok = _nondegenerate(a, b)
    if not ok:
        return
    d0 = cohens_d(ga, gb)
    d1 = cohens_d(RunGroup("a", [x * c for x in a]), RunGroup("b", [x * c for x in b]))
    assert d1 == pytest.approx(d0, abs=1e-10 * max(1, abs(d0)))
    assert cohens_d(gb, ga) == -d0


@given(st.lists(st.integers(-100, 100), min_size=3, max_size=8, unique=True), st.floats(0.0, 5.0), st.floats(0.01, 5.0))
def test_p_decreases_with_mean_gap(ints, gap, extra):
    base = [i / 100 for i in ints]
    a = RunGroup("a", base)
    near = welch_t_test(RunGroup("b", [x + gap for x in base]), a)
    far = welch_t_test(RunGroup("b", [x + gap + extra for x in base]), a)
    assert far.p_value <= near.p_value
