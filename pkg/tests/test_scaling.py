import random
from fractions import Fraction

import pytest

from lane_emden.coefficients import build_delta_set
from lane_emden.scaling_identities import (
    LambdaPower,
    RadialMonomial,
    ScaledFamily,
    falling,
    lambda_derivative,
    verify_polynomial,
    verify_radial,
    verify_radial_I,
    verify_scaling_derivatives,
    verify_urr_form,
)


def fam(j, k):
    return ScaledFamily(RadialMonomial(j), Fraction(k))


def test_lambda_derivative_examples():
    assert lambda_derivative(fam(2, 1), 0) == 1
    assert lambda_derivative(fam(0, 3), 1) == 3
    # (k+j)(k+j-1) lam^(k+j-2) r^j at lam = 2, r = 3 with k + j = 4
    assert lambda_derivative(fam(2, 2), 2, 2, 3) == 12 * 4 * 9


def test_lambda_derivative_symbolic_power():
    out = lambda_derivative(fam(0, Fraction(1, 2)), 1, 2, 1)
    assert out == LambdaPower(Fraction(1, 2), Fraction(-1, 2))


def test_lambda_derivative_order_range():
    with pytest.raises(ValueError):
        lambda_derivative(fam(1, 1), 6)


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        RadialMonomial(-1)


def test_falling_factorial():
    assert falling(5, 3) == 60
    assert falling(Fraction(1, 2), 2) == Fraction(-1, 4)
    assert falling(2, 3) == 0


def test_euler_identity_for_each_monomial():
    # lam d/dlam u = k u + r u_r reduces to k + j = k + j
    for j in range(9):
        for k in (Fraction(0), Fraction(1, 2), Fraction(5, 7)):
            f = fam(j, k)
            assert lambda_derivative(f, 1) == k * lambda_derivative(f, 0) + f.r_derivative_coeff(1)


def test_scaling_derivatives_all_pass():
    rep = verify_scaling_derivatives()
    assert rep.all_passed, rep.failures()
    ids = [c.check_id for c in rep.checks]
    assert "scaling.urr" in ids and "scaling.urrr" in ids and "scaling.urrrr" in ids
    assert len(ids) == len(set(ids))


def test_scaling_derivatives_needs_fourth_derivatives():
    with pytest.raises(ValueError):
        verify_scaling_derivatives(j_max=3)


def test_radial_all_pass():
    rep = verify_radial()
    assert rep.all_passed, rep.failures()


@pytest.mark.parametrize("j,k,m", [(4, 1, 10), (0, Fraction(1, 2), 10), (1, 0, 10), (8, Fraction(5, 7), Fraction(29, 3))])
def test_verify_radial_I_examples(j, k, m):
    assert verify_radial_I(j, Fraction(k), Fraction(m))


def test_radial_I_detects_wrong_delta():
    d = build_delta_set()
    broken = type(d)(d.delta1 + 1, d.delta2, d.delta3, d.delta4)
    assert not verify_radial_I(4, Fraction(1), Fraction(10), broken)


@pytest.mark.parametrize("j,k,m", [(2, 1, 10), (2, 0, 3), (3, 2, 8)])
def test_verify_urr_form_examples(j, k, m):
    assert verify_urr_form(j, Fraction(k), Fraction(m))


def test_random_degree_six_polynomial():
    rng = random.Random(2024)
    terms = {j: Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for j in range(7)}
    k = Fraction(rng.randint(1, 20), rng.randint(1, 11))
    rep = verify_polynomial(terms, k, Fraction(23, 4))
    assert rep.all_passed, rep.failures()
