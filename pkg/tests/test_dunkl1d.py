from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from dunklkit import dunkl1d as D

# E_lam(x) = j_{k-1/2}(lam x) + lam x / (2k+1) j_{k+1/2}(lam x), evaluated with mpmath hyp0f1.
E_CASES = [
    (2.0, 1.0, 1.0, 2.7878129475035704),
    (-1.5, 0.7, 0.3, 0.6099853320253471),
    (3j, 1.2, 2.5, 0.2745712338269247 + 0.24614979858678274j),
    (4.0, -4.5, 1.0, 101327.11286624992),
]

# Heat kernel c^-1 (2t)^(-1/2-k) exp(-(x^2+y^2)/4t) E_1(xy/2t), mpmath reference.
HEAT_CASES = [
    (1.0, 0.5, -0.2, 1.0, 0.1290510822938293),
    (0.05, 2.0, 1.9, 0.5, 0.6135718072084843),
]


@pytest.mark.parametrize("lam, x, k, expected", E_CASES)
def test_kernel_matches_reference(lam, x, k, expected):
    assert_allclose(complex(D.kernel_E(lam, x, k).value), expected, rtol=1e-13)


def test_kernel_at_k_zero_is_exponential():
    for lam, x in ((1.3, 0.7), (-2.0, 1.5), (0.5j, 3.0)):
        assert_allclose(complex(D.kernel_E(lam, x, 0.0).value), np.exp(lam * x), rtol=1e-13)


def test_kernel_symmetrized_is_bessel():
    lam, x, k = 1.7, 0.9, 1.0
    J = complex(D.kernel_E(lam, x, k, symmetrize=True).value)
    avg = 0.5 * (complex(D.kernel_E(lam, x, k).value) + complex(D.kernel_E(lam, -x, k).value))
    assert_allclose(J, avg, rtol=1e-13)


def test_kernel_three_branches_agree():
    b = D.kernel_E_branches(1.0, 2.0, 1.0)
    assert_allclose(complex(b["bessel"]), complex(b["confluent"]), rtol=1e-12)
    assert_allclose(complex(b["bessel"]), complex(b["integral"]), rtol=1e-12)


def test_kernel_rejects_negative_multiplicity():
    with pytest.raises(ValueError):
        D.kernel_E(1.0, 1.0, -0.5)


@settings(max_examples=40, deadline=None)
@given(st.floats(-4, 4), st.floats(0.2, 3), st.floats(0, 3))
def test_kernel_is_eigenfunction_of_dunkl_operator(lam, x, k):
    E = lambda t: complex(D.kernel_E(lam, t, k).value)
    lhs = D.kernel_E_dx(lam, x, k) + k * (E(x) - E(-x)) / x
    assert abs(lhs - lam * E(x)) <= 1e-9 * max(1.0, abs(lam * E(x)))


@settings(max_examples=40, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(0, 3))
def test_kernel_depends_on_product_only(lam, x, k):
    a = complex(D.kernel_E(lam, x, k).value)
    b = complex(D.kernel_E(lam * x, 1.0, k).value)
    assert abs(a - b) <= 1e-11 * max(1.0, abs(a))
    assert complex(D.kernel_E(lam, 0.0, k).value) == pytest.approx(1.0)


def test_scaled_kernel_large_argument():
    s, k = 60.0, 1.0
    ref = complex(D.kernel_E(1.0, s, k, branch="confluent").value) * math.exp(-s)
    assert_allclose(D.kernel_E_scaled(s, k), ref.real, rtol=1e-10)


def test_mu_density_integrates_to_one():
    for k in (0.5, 1.0, 2.0):
        for x in (0.4, -1.7):
            assert_allclose(D.mu_integrate(lambda s: np.ones_like(s), x, k), 1.0, atol=1e-12)


def test_mu_density_vanishes_outside_interval():
    assert D.mu_density(1.0, 1.2, 1.0) == 0.0
    assert D.mu_density(1.0, 0.3, 1.0) > 0.0


def test_nu_density_support_is_annulus():
    assert D.nu_density(1.0, 0.7, 0.2, 1.0) == 0.0
    assert D.nu_density(1.0, 0.7, 1.9, 1.0) == 0.0
    assert_allclose(D.nu_density(1.0, 0.7, 0.5, 1.0), 0.3591836734693883, rtol=1e-12)


def test_nu_bound_closed_form():
    assert_allclose(D.nu_bound(1.0), 4.0 / 3.0, rtol=1e-14)


def test_translate_by_zero_is_identity():
    f = lambda s: np.exp(-np.asarray(s) ** 2)
    assert_allclose(D.translate_radial(f, 0.0, 0.7, 1.0), math.exp(-0.49), rtol=1e-12)


@pytest.mark.parametrize("k", [0.0, 0.5, 1.0, 2.0])
def test_mehta_quadrature_equals_closed_form(k):
    assert_allclose(D.mehta_constant(k), 2 ** (k + 0.5) * math.gamma(k + 0.5), rtol=1e-12)


def test_product_mehta_constant():
    assert_allclose(D.product_mehta_constant([1.0, 0.5]), D.mehta_closed_form(1.0) * D.mehta_closed_form(0.5),
                    rtol=1e-14)


@pytest.mark.parametrize("t, x, y, k, expected", HEAT_CASES)
def test_heat_kernel_matches_reference(t, x, y, k, expected):
    assert_allclose(D.heat_kernel(t, x, y, k), expected, rtol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.01, 10), st.floats(-8, 8), st.floats(-8, 8), st.floats(0, 3))
def test_heat_kernel_positive_and_symmetric(t, x, y, k):
    # stay where the k = 0 worst case exp(-(x-y)^2 / 4t) does not underflow
    assume((x - y) ** 2 / (4 * t) < 600)
    h = D.heat_kernel(t, x, y, k)
    assert h > 0.0
    assert_allclose(h, D.heat_kernel(t, y, x, k), rtol=1e-12)


def test_heat_sandwich_constants_are_finite():
    c1, c2 = D.heat_sandwich_constants(np.geomspace(0.05, 5.0, 5), np.linspace(-3, 3, 7), np.linspace(-3, 3, 7), 1.0)
    assert 0.0 < c1 <= c2 < math.inf


def test_dunkl_laplacian_on_gaussian():
    # even f: f'' + 2k f'/x
    x, k = 0.6, 1.0
    f = math.exp(-x * x / 2)
    assert_allclose(D.dunkl_laplacian(lambda s: math.exp(-s * s / 2), x, k), (x * x - 1 - 2 * k) * f, rtol=1e-6)


def test_dunkl_transform_requires_decay():
    with pytest.raises(D.InsufficientDecayError):
        D.dunkl_transform(lambda x: np.ones_like(np.asarray(x, dtype=float)), 1.0, 1.0, 5.0)


def test_asymptotic_limits_converge():
    vals = np.abs(D.asym_limit(1.0, 1.0, 1.0, [10.0, 100.0, 1000.0]) - D.asym_limit_value(1.0, 1.0, 1.0))
    assert vals[-1] < 1e-3
    opp = D.asym_opposite(1.0, 1.0, 1.0, [100.0, 1000.0])
    assert_allclose(opp, D.asym_opposite_value(1.0, 1.0, 1.0), rtol=1e-6)


def test_product_kernel_factorizes():
    lams, xs, ks = [1.0, -0.5], [0.3, 2.0], [1.0, 0.5]
    ref = complex(D.kernel_E(1.0, 0.3, 1.0).value) * complex(D.kernel_E(-0.5, 2.0, 0.5).value)
    assert_allclose(D.product_kernel_E(lams, xs, ks), ref, rtol=1e-13)


@pytest.mark.parametrize("k", [1e-300, 1e-10, 1e-4, 0.3])
def test_small_multiplicity_stays_accurate(k):
    for s in (1.0, -2.5, -20.0, 45.0, -45.0):
        a = complex(D.kernel_E(1.0, s, k, branch="integral").value)
        b = complex(D.kernel_E(1.0, s, k, branch="confluent").value)
        c = complex(D.kernel_E(1.0, s, k).value)
        assert abs(a - b) <= 1e-12 * abs(b)
        assert abs(c - b) <= 1e-12 * abs(b)
    assert_allclose(D.nu_mass(0.7, 0.7, k), 1.0, atol=1e-12)
    assert_allclose(D.nu_mass(0.7, 0.4, k), 1.0, atol=1e-12)


def test_scaled_kernel_small_multiplicity_far_out():
    # reference exp(-|s|) E(s) from mpmath at 40 digits
    assert_allclose(D.kernel_E_scaled(100.0, 1e-3), 0.9941441393383601, rtol=1e-12)
    assert_allclose(D.kernel_E_scaled(-100.0, 1e-3), 4.995826640605954e-06, rtol=1e-10)
    assert_allclose(D.kernel_E(1.0, -45.0, 1e-10).value, 39257062.68650301, rtol=1e-12)
