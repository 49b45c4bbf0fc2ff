import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from lane_emden.criterion import (
    CriterionValue,
    DomainError,
    ParamPoint,
    Verdict,
    criterion_F,
    gamma_condition,
    gamma_condition_limit,
    hardy_constant,
    log_criterion_lhs,
    log_gamma,
    singular_lambda,
)


@pytest.mark.parametrize("x,want", sorted(oracles.LOGGAMMA.items()))
def test_log_gamma_frozen(x, want):
    assert log_gamma(x) == pytest.approx(want, rel=1e-14, abs=1e-14)


def test_log_gamma_exact_zeros():
    assert log_gamma(1) == 0.0
    assert log_gamma(2) == 0.0


def test_log_gamma_half():
    assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-15)


@pytest.mark.parametrize("x", [0, -1.5, float("inf"), float("nan")])
def test_log_gamma_domain(x):
    with pytest.raises(DomainError):
        log_gamma(x)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1e-3, max_value=150))
def test_log_gamma_recurrence(x):
    # ln G(x+1) = ln G(x) + ln x
    lhs = log_gamma(x + 1)
    assert lhs == pytest.approx(log_gamma(x) + math.log(x), abs=1e-12 * max(1.0, abs(lhs)))


def test_log_gamma_against_stdlib():
    rng = random.Random(3)
    for _ in range(500):
        x = math.exp(rng.uniform(math.log(1e-3), math.log(1e3)))
        assert abs(log_gamma(x) - math.lgamma(x)) <= 1e-13 * max(1.0, abs(math.lgamma(x)))


def test_hardy_constant_grows_with_n():
    values = [hardy_constant(n, 2.5) for n in range(6, 40)]
    assert all(a < b for a, b in zip(values, values[1:]))


def test_hardy_constant_known_value():
    # n = 4s + 2 : G(3s/2+1/2)^2 / G(s/2+1/2)^2 at s = 1 -> G(2)^2/G(1)^2 = 1
    assert hardy_constant(6, 1) == pytest.approx(1.0, abs=1e-15)


def test_F_at_sobolev_point_is_log_p():
    for n, s in [(7, 2.1), (20, 2.5), (33.3, 2.9)]:
        ps = (n + 2 * s) / (n - 2 * s)
        assert criterion_F(n, s, ps) == pytest.approx(math.log(ps), abs=1e-11)


def test_F_matches_oracle():
    rng = random.Random(11)
    for _ in range(30):
        s = rng.uniform(2.01, 2.99)
        n = rng.uniform(2 * s + 1, 2 * s + 40)
        p = rng.uniform(n / (n - 2 * s) + 0.05, 50)
        assert criterion_F(n, s, p) == pytest.approx(float(oracles.criterion_F(n, s, p)), abs=1e-11)


def test_limit_matches_large_p():
    n, s = 25, 2.5
    assert criterion_F(n, s, 1e9) == pytest.approx(gamma_condition_limit(n, s), abs=1e-7)
    assert gamma_condition_limit(n, s) == pytest.approx(float(oracles.limit_G(n, s)), abs=1e-12)


def test_verdicts():
    v = gamma_condition(ParamPoint(20, 2.5, 2))
    assert v.F > 0 and v.verdict is Verdict.INSTABILITY_HOLDS
    v = gamma_condition(ParamPoint(40, 2.5, 12))
    assert v.F < 0 and v.verdict is Verdict.SINGULAR_STABLE
    assert CriterionValue(1.0, 1.0).verdict is Verdict.SINGULAR_STABLE
    assert CriterionValue(1.0, 1.0).on_boundary
    assert set(v.to_dict()) == {"log_lhs", "log_rhs", "F", "verdict", "boundary"}


def test_param_point_derived():
    pt = ParamPoint(20, 2.5, 2)
    assert (pt.k, pt.m, pt.b) == (5.0, 15.0, 0.0)


@pytest.mark.parametrize("n,s,p", [(20, 0, 2), (20, 2.5, 1), (-1, 2.5, 2)])
def test_param_point_domain(n, s, p):
    with pytest.raises(DomainError):
        ParamPoint(n, s, p)


def test_gamma_argument_error_names_argument():
    # p below n/(n-2s) makes (n-2s)/2 - s/(p-1) negative
    with pytest.raises(DomainError, match=r"\(n-2s\)/2 - s/\(p-1\)"):
        log_criterion_lhs(20, 2.5, 1.3)


def test_criterion_needs_n_above_2s():
    with pytest.raises(DomainError):
        gamma_condition(ParamPoint(5, 2.5, 2))


def test_singular_lambda_against_lhs():
    rng = random.Random(5)
    for _ in range(40):
        s = rng.uniform(2.05, 2.95)
        n = rng.uniform(2 * s + 0.5, 60)
        p = rng.uniform(n / (n - 2 * s) + 0.01, 80)
        lhs = math.exp(log_criterion_lhs(n, s, p))
        other = p * singular_lambda(n, s, 2 * s / (p - 1)) * 2 ** (-2 * s)
        assert lhs == pytest.approx(other, rel=1e-10)


def test_singular_lambda_domain():
    with pytest.raises(DomainError):
        singular_lambda(20, 2.5, 15)
