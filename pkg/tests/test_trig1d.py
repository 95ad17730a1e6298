from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from dunklkit import trig1d as T

# Reference values from mpmath hyp2f1 at 30 digits, frozen.
JACOBI_CASES = [
    ((1.5, 1.0, 0.5, -0.5), 0.5658577112861527),
    ((0.9, 2.0, 2.0, 0.3), 0.04206528198412658),
]

HO_F_CASES = [
    ((1.5, 1.0, 1.0, 0.5), 1.1580061982725376),
    ((2j, 3.0, 1.0, 0.5), -0.03517954726279712),
    ((0.4 + 0.9j, 1.0, 1.0, 0.5), 0.8124251950571809 + 0.0753728912012828j),
    ((0.4 + 0.9j, 2.5, 1.0, 0.5), 0.24193170934542316 + 0.19222672801943202j),
]

OPDAM_CASES = [
    ((1.5, 1.0, 1.0, 0.5), 1.797538018119654),
    ((1.5, -1.0, 1.0, 0.5), 0.5184743784254212),
    ((0.7j, 2.0, 2.0, 0.0), 0.7721006319087241 + 0.15300831555201638j),
]


@pytest.mark.parametrize("args, expected", JACOBI_CASES)
def test_jacobi_phi_matches_reference(args, expected):
    assert_allclose(complex(T.jacobi_phi(*args).value), expected, rtol=1e-13)


@pytest.mark.parametrize("args, expected", HO_F_CASES)
def test_heckman_opdam_matches_reference(args, expected):
    assert_allclose(complex(T.ho_F(*args).value), expected, rtol=1e-13)


@pytest.mark.parametrize("args, expected", OPDAM_CASES)
def test_opdam_matches_reference(args, expected):
    assert_allclose(complex(T.opdam_G(*args).value), expected, rtol=1e-13)


def test_real_parameters_give_real_values():
    assert isinstance(T.ho_F(1.5, 1.0, 1.0, 0.5).value, float)
    assert isinstance(T.ho_F(2j, 1.0, 1.0, 0.5).value, float)
    assert abs(complex(T.ho_F(0.4 + 0.9j, 1.0, 1.0, 0.5).value).imag) > 0.05


@pytest.mark.parametrize("lam", [1.3, 0.8j, 0.4 + 0.9j, 2.3 - 0.4j])
def test_harish_chandra_expansion_reproduces_F(lam):
    for x in (1.0, 2.5):
        ref = complex(T.ho_F(lam, x, 1.0, 0.5).value)
        assert_allclose(T.harish_chandra_F(lam, x, 1.0, 0.5, terms=80), ref, rtol=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.floats(-3, 3), st.floats(0.05, 3), st.floats(0, 2), st.floats(0, 2))
def test_F_is_even_part_of_G(lam, x, k1, k2):
    F = complex(T.ho_F(lam, x, k1, k2).value)
    G = 0.5 * (complex(T.opdam_G(lam, x, k1, k2).value) + complex(T.opdam_G(lam, -x, k1, k2).value))
    assert abs(F - G) <= 1e-10 * max(1.0, abs(F))


@settings(max_examples=30, deadline=None)
@given(st.floats(-2, 2), st.floats(0.2, 2.5), st.floats(0, 2), st.floats(0, 2))
def test_G_is_eigenfunction_of_cherednik_operator(lam, x, k1, k2):
    rho = k1 / 2 + k2
    G = lambda s: complex(T.opdam_G(lam, s, k1, k2).value)
    for s in (x, -x):
        # five point stencil: truncation ~h^4, rounding ~1e-11 / h
        h = 1e-3
        dG = (8 * (G(s + h) - G(s - h)) - (G(s + 2 * h) - G(s - 2 * h))) / (12 * h)
        odd = G(s) - G(-s)
        lhs = dG + k1 * odd / (1 - math.exp(-s)) + 2 * k2 * odd / (1 - math.exp(-2 * s)) - rho * G(s)
        assert abs(lhs - lam * G(s)) <= 1e-7 * max(1.0, abs(lam * G(s)), abs(dG))


def test_measure_representation_matches_hypergeometric():
    for lam in (0.7, -1.2, 1.5j):
        for x in (0.6, -1.4):
            a = complex(T.opdam_G(lam, x, 1.0, 0.5).value)
            b = complex(T.opdam_G(lam, x, 1.0, 0.5, method="measure").value)
            assert_allclose(b, a, rtol=1e-11)
        a = complex(T.ho_F(lam, 1.1, 0.7, 0.3).value)
        b = complex(T.ho_F(lam, 1.1, 0.7, 0.3, method="measure").value)
        assert_allclose(b, a, rtol=1e-11)


def test_mu_total_mass_is_G_at_zero():
    for x in (0.5, -1.3, 2.0):
        mass = T.mu_trig_integrate(lambda y: np.ones_like(y), x, 1.0, 0.5)
        assert_allclose(mass, T.opdam_G(0.0, x, 1.0, 0.5).value, rtol=1e-12)


def test_mu_density_support_and_degenerate_case():
    assert T.mu_trig_density(1.0, 1.2, 1.0, 0.5) == 0.0
    assert T.mu_trig_density(1.0, 0.3, 1.0, 0.5) > 0.0
    with pytest.raises(T.DegenerateMultiplicityError):
        T.mu_trig_density(1.0, 0.3, 0.0, 0.0)


def test_c_function_normalization():
    for k1, k2 in ((1.0, 0.5), (0.3, 2.0), (2.0, 0.0)):
        rho = k1 / 2 + k2
        assert_allclose(T.c_function(rho, k1, k2), 1.0, rtol=1e-13)
    assert T.c_function(1.3, 0.0, 0.0) == 0.5


def test_c_function_pole():
    with pytest.raises(T.PoleError):
        T.c_function(0.0, 1.0, 0.5)


@pytest.mark.parametrize("lam", [0.3, 1.0, 4.5])
def test_plancherel_forms_agree(lam):
    first, second = T.plancherel_forms(lam, 1.0, 0.5)
    assert_allclose(first, second, rtol=1e-12)


def test_rational_limit_decreases():
    errs = T.rational_limit(1.0, 0.8, 1.0, [0.5, 0.1, 0.02, 0.004])
    assert np.all(np.diff(errs) < 0)
    assert errs[-1] < 1e-2


@pytest.mark.parametrize("k1, k2", [(1.0, 0.5), (0.05, 0.05), (2.0, 0.0)])
def test_nu_trig_has_unit_mass(k1, k2):
    for x, y in ((0.7, 0.4), (-0.9, 0.6), (1.2, -0.3)):
        assert_allclose(T.nu_trig_mass(x, y, k1, k2), 1.0, atol=1e-9)


def test_product_formula_for_F():
    lam, x, y, k1, k2 = 1.3, 0.7, 0.4, 1.0, 0.5
    lhs = T.ho_F(lam, x, k1, k2).value * T.ho_F(lam, y, k1, k2).value
    g = lambda z: np.array([T.ho_F(lam, float(t), k1, k2).value for t in z])
    rhs = T.nu_trig_integrate(g, x, y, k1, k2, symmetric=True)
    assert_allclose(rhs, lhs, rtol=1e-9)


def test_transform_requires_compact_support():
    with pytest.raises(T.InsufficientSupportError):
        T.cherednik_transform(lambda x: np.exp(-np.asarray(x) ** 2), [1.0], 1.0, 0.5, support=1.0)


def test_multiplicity_validation():
    with pytest.raises(ValueError):
        T.TrigMult1D(-0.1, 0.0)
    assert T.TrigMult1D(1.0, 0.5).rho == 1.0


def test_harish_chandra_pole_at_half_integer_spectral_parameter():
    # n (n - 2 lam) vanishes at n = 3 for lam = 3/2
    with pytest.raises(T.PoleError):
        T.harish_chandra_coeffs(1.5, 1.0, 0.5, terms=5)
