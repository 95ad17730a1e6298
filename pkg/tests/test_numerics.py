from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from dunklkit import numerics as N

# Reference values computed once with mpmath at 30 digits and frozen here.
GAMMA_CASES = [
    (4.5, 11.631728396567448),
    (0.3 + 0.7j, 0.30968625674374917 - 0.8567877529392706j),
    (-2.5, -0.9453087204829419),
]

J_MOD_CASES = [
    (0.5, 1.3, 1.3064480286866276),
    (1.7, 2.2j, 0.6191636935234035),
    (0.0, -3.0, 4.8807925858650245),
    (2.5, 15j, -0.002176354457999664),
]

F21_CASES = [
    ((0.5, 1.0, 1.5, 0.25), 1.0986122886681098),
    ((0.75, 0.25, 1.5, -math.sinh(2.0) ** 2), 0.6480542736638853),
    ((1.0, 1.0, 2.0, -30.0), 0.11446624014950488),
    ((0.8 + 0.3j, 0.8 - 0.3j, 1.5, 0.9), 2.551389214844922),
]


@pytest.mark.parametrize("x, expected", GAMMA_CASES)
def test_gamma_matches_reference(x, expected):
    assert_allclose(N.gamma_fn(x).value, expected, rtol=1e-14)


def test_gamma_log_mode_reports_sign():
    for x in (-0.5, -2.5, -4.2):
        ev = N.gamma_fn(x, log_mode=True)
        assert_allclose(ev.value, math.log(abs(math.gamma(x))), rtol=1e-13)
        assert ev.branch_note.endswith("sign=-")
    for x in (-1.5, 0.7, 6.0):
        assert N.gamma_fn(x, log_mode=True).branch_note.endswith("sign=+")


def test_gamma_pole_raises():
    with pytest.raises(N.PoleError):
        N.gamma_fn(-2)


def test_gamma_ratio_denominator_pole_is_zero():
    assert N.gamma_ratio([0.5], [-1]) == 0.0
    assert_allclose(N.gamma_ratio([4.5, 2.0], [3.5]), 3.5, rtol=1e-14)


def test_pochhammer():
    assert_allclose(N.pochhammer(0.5, 3), 0.5 * 1.5 * 2.5, rtol=1e-15)
    assert N.pochhammer(7.0, 0) == 1


@pytest.mark.parametrize("nu, z, expected", J_MOD_CASES)
def test_bessel_j_mod_matches_reference(nu, z, expected):
    assert_allclose(complex(N.bessel_j_mod(nu, z).value), expected, rtol=1e-13)


def test_bessel_j_mod_elementary_cases():
    for z in (0.3, 2.0, 7.5):
        assert_allclose(N.bessel_j_mod(0.5, z).value, math.sinh(z) / z, rtol=1e-13)
        assert_allclose(N.bessel_j_mod(-0.5, z).value, math.cosh(z), rtol=1e-13)
        assert_allclose(complex(N.bessel_j_mod(0.5, 1j * z).value).real, math.sin(z) / z, rtol=1e-13, atol=1e-15)
    assert N.bessel_j_mod(1.2, 0.0).value == 1


def test_pfq_series_reference_values():
    assert_allclose(N.pfq_series([1, 2], [3], 0.5).value, 1.5451774444795625, rtol=1e-14)
    assert_allclose(N.pfq_series([1.5], [2.5, 0.5], -4.0).value, -0.7417679953696824, rtol=1e-14)


def test_pfq_series_pole_in_lower_parameter():
    with pytest.raises(N.PoleError):
        N.pfq_series([1], [-3], 0.5)


def test_pfq_terminating_series_is_a_polynomial():
    # 2F1(-2, 3; 1; z) = 1 - 6 z + 6 z^2
    for z in (-3.0, 0.2, 5.0):
        assert_allclose(N.pfq_series([-2, 3], [1], z).value, 1 - 6 * z + 6 * z * z, rtol=1e-13)


@pytest.mark.parametrize("args, expected", F21_CASES)
def test_gauss_2f1_matches_reference(args, expected):
    assert_allclose(complex(N.gauss_2f1(*args).value), expected, rtol=1e-13)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.2, 3.0), st.floats(0.2, 3.0), st.floats(0.6, 4.0), st.floats(-20.0, 0.9))
def test_gauss_2f1_is_symmetric_in_upper_parameters(a, b, c, z):
    lhs = complex(N.gauss_2f1(a, b, c, z).value)
    rhs = complex(N.gauss_2f1(b, a, c, z).value)
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))


@settings(max_examples=40, deadline=None)
@given(st.floats(0.2, 3.0), st.floats(0.2, 3.0), st.floats(0.6, 4.0), st.floats(-0.9, 0.45))
def test_gauss_2f1_euler_transformation(a, b, c, z):
    lhs = complex(N.gauss_2f1(a, b, c, z).value)
    rhs = (1 - z) ** (c - a - b) * complex(N.gauss_2f1(c - a, c - b, c, z).value)
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))


@settings(max_examples=60, deadline=None)
@given(st.floats(0.05, 30.0))
def test_gamma_recurrence(x):
    assert abs(N.gamma_fn(x + 1).value - x * N.gamma_fn(x).value) <= 1e-12 * abs(N.gamma_fn(x + 1).value)


def test_quad_gaussian():
    assert_allclose(N.quad(lambda x: np.exp(-np.asarray(x) ** 2), -3.0, 3.0).value,
                    math.sqrt(math.pi) * math.erf(3.0), rtol=1e-13)


def test_gauss_legendre_exact_for_polynomials():
    x, w = N.gauss_legendre(8)
    for d in range(16):
        assert_allclose(np.sum(w * x ** d), (1 + (-1) ** d) / (d + 1), atol=1e-14)


def test_gauss_jacobi_moments():
    alpha, beta = 0.5, -0.5
    x, w = N.gauss_jacobi(12, alpha, beta)
    # int (1-u)^a (1+u)^b du = 2^(a+b+1) B(a+1, b+1)
    mass = 2 ** (alpha + beta + 1) * math.gamma(alpha + 1) * math.gamma(beta + 1) / math.gamma(alpha + beta + 2)
    assert_allclose(np.sum(w), mass, rtol=1e-13)
    assert_allclose(np.sum(w * x), mass * (beta - alpha) / (alpha + beta + 2), rtol=1e-12, atol=1e-14)


def test_gauss_laguerre_moments():
    x, w = N.gauss_laguerre(20, 1.5)
    for d in range(5):
        assert_allclose(np.sum(w * x ** d), math.gamma(2.5 + d), rtol=1e-12)


def test_fourier_line_of_bump_is_real_for_even_input():
    f = lambda x: np.where(np.abs(np.asarray(x)) < 1, (1 - np.minimum(np.asarray(x) ** 2, 1)) ** 2, 0.0)
    lam = 1.5
    val = N.fourier_line(f, lam, 1.0)
    # closed form of int_{-1}^{1} (1-x^2)^2 cos(lam x) dx
    s, c = math.sin(lam), math.cos(lam)
    ref = 16 * (3 * s - 3 * lam * c - lam ** 2 * s) / lam ** 5
    assert_allclose(val.real, ref, rtol=1e-12)
    assert abs(val.imag) < 1e-14


@pytest.mark.parametrize("a, b", [(0.3, 1.7), (1.5, 0.2), (0.05, 0.05), (2.0, 3.0), (1e-300, 1.0)])
def test_jacobi_probability_rule_is_exact_on_polynomials(a, b):
    import mpmath as mp

    x, w = N.jacobi_probability_rule(12, a, b)
    assert_allclose(np.sum(w), 1.0, rtol=1e-15)
    # plain Gauss is exact to degree 2n - 1; every endpoint atom buys one more
    top = 24 if (a < 1 or b < 1) else 23
    for d in range(top + 1):
        # u = 2t - 1 with t ~ Beta(b, a)
        with mp.workdps(40):
            ref = sum(mp.binomial(d, j) * mp.mpf(2) ** j * (-1) ** (d - j) * mp.rf(b, j) / mp.rf(mp.mpf(a) + b, j)
                      for j in range(d + 1))
        assert abs(np.sum(w * x ** d) - float(ref)) < 1e-14
