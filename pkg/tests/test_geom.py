from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from dunklkit import geom as G

# Reference values from mpmath (hyp0f1, hyp2f1, Jacobi polynomials) at 30 digits, frozen.
HYP_PHI_CASES = [
    (1.5, 1.0, 3, 0.5658577112861527),
    (1.5, 2.0, 2, -0.18044408554077004),
    (0.8, 1.3, 4, 0.5545161694005473),
]

HYP_HEAT_CASES = [
    (1.0, 0.5, 3, 0.007443893664226511),
    (1.0, 0.5, 2, 0.0529977708728847),
    (2.0, 3.0, 2, 0.0038802213894533373),
]


def test_euclid_phi_matches_reference():
    assert_allclose(complex(G.euclid_phi(1.5, 1.0, 5).value), 0.7923459414244445, rtol=1e-13)


def test_euclid_phi_in_three_dimensions_is_sinc():
    for lam, r in ((1.5, 1.0), (4.0, 2.3)):
        assert_allclose(complex(G.euclid_phi(lam, r, 3).value).real, math.sin(lam * r) / (lam * r), rtol=1e-13)


@pytest.mark.parametrize("ell, theta, n, expected", [(2, 0.7, 3, 0.446644761933494), (5, 2.1, 4, 0.03170792799525831)])
def test_sphere_phi_matches_reference(ell, theta, n, expected):
    assert_allclose(G.sphere_phi(ell, theta, n), expected, rtol=1e-13)


@pytest.mark.parametrize("branch", ["hypergeometric", "integral"])
def test_sphere_phi_branches_agree(branch):
    th = np.linspace(0.0, math.pi, 9)
    for n in (2, 3, 5):
        for ell in (0, 1, 4, 7):
            assert_allclose(G.sphere_phi(ell, th, n, branch=branch), G.sphere_phi(ell, th, n), atol=1e-12)


def test_sphere_phi_continued_from_hyperbolic_formula():
    for ell in (2, 3, 6):
        for th in (0.2, 1.1):
            assert_allclose(G.sphere_phi_continued(ell, th, 4), G.sphere_phi(ell, th, 4), atol=1e-12)


def test_sphere_dimensions():
    # harmonics of degree ell on S^2 and S^3
    assert [G.sphere_dim(l, 2) for l in range(5)] == [1, 3, 5, 7, 9]
    assert [G.sphere_dim(l, 3) for l in range(5)] == [1, 4, 9, 16, 25]


def test_sphere_expansion_round_trip():
    f = lambda th: np.exp(np.cos(th))
    coeffs = G.sphere_expand(f, 3, 30)
    th = np.linspace(0.0, math.pi, 7)
    assert_allclose(G.sphere_synth(coeffs, th, 3), f(th), atol=1e-12)


@pytest.mark.parametrize("lam, r, n, expected", HYP_PHI_CASES)
def test_hyp_phi_matches_reference(lam, r, n, expected):
    assert_allclose(complex(G.hyp_phi(lam, r, n).value).real, expected, rtol=1e-13)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 6), st.floats(0.01, 4))
def test_hyp_phi_closed_form_in_three_dimensions(lam, r):
    ref = math.sin(lam * r) / (lam * math.sinh(r))
    assert abs(complex(G.hyp_phi(lam, r, 3).value) - ref) <= 1e-12


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_harish_chandra_expansion_of_hyp_phi(n):
    for lam, r in ((1.3, 1.5), (0.4, 0.9)):
        assert_allclose(G.hyp_harish_chandra(lam, r, n).real, complex(G.hyp_phi(lam, r, n).value).real, rtol=1e-12)


def test_c_function_in_three_dimensions():
    for lam in (0.3, 1.0, 2.7):
        c, dens = G.hyp_c_plancherel(lam, 3)
        assert_allclose(c, 1 / (1j * lam), rtol=1e-13)
        assert_allclose(dens, lam * lam, rtol=1e-13)
    with pytest.raises(G.PoleError):
        G.hyp_c_plancherel(0.0, 3)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_plancherel_product_closed_form(n):
    for lam in (0.2, 1.3, 3.5):
        assert_allclose(G.hyp_plancherel_product(lam, n), G.hyp_c_plancherel(lam, n)[1], rtol=1e-12)


@pytest.mark.parametrize("t, r, n, expected", HYP_HEAT_CASES)
def test_hyp_heat_matches_reference(t, r, n, expected):
    assert_allclose(G.hyp_heat(t, r, n), expected, rtol=1e-11)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.05, 5), st.floats(0, 6))
def test_hyp_heat_closed_form_in_three_dimensions(t, r):
    ratio = 1.0 if r == 0 else r / math.sinh(r)
    ref = (4 * math.pi * t) ** -1.5 * ratio * math.exp(-t - r * r / (4 * t))
    assert_allclose(G.hyp_heat(t, r, 3), ref, rtol=1e-11)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_hyp_heat_is_a_probability_density(n):
    for t in (0.3, 1.5):
        assert_allclose(G.hyp_heat_mass(t, n), 1.0, atol=1e-10)
    assert np.all(G.hyp_heat(0.7, np.linspace(0, 8, 17), n) > 0)


def test_hyp_heat_rejects_nonpositive_time():
    with pytest.raises(G.NonpositiveTimeError):
        G.hyp_heat(0.0, 1.0, 3)


def test_hyp_heat_envelope_sandwich_is_bounded():
    lo, hi = G.hyp_heat_sandwich_constants([0.1, 1.0, 10.0], np.linspace(0, 10, 11), 3)
    assert 0 < lo <= hi < math.inf


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_dual_abel_of_cosine_is_spherical_function(n):
    lam = 1.3
    r = np.array([0.0, 0.3, 1.0, 2.0])
    ref = np.array([complex(G.hyp_phi(lam, v, n).value).real for v in r])
    assert_allclose(G.hyp_dual_abel(lambda s: np.cos(lam * s), r, n), ref, atol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_abel_transform_round_trip(n):
    f = lambda s: np.exp(-np.asarray(s) ** 2)
    g = lambda s: G.hyp_abel(f, s, n)
    r = np.array([0.2, 0.7, 1.5])
    assert_allclose(G.hyp_abel_inverse(g, r, n), f(r), rtol=1e-6, atol=1e-8)


def test_wave_solution_radial_and_spectral_agree():
    bump = lambda s: np.where(np.abs(np.asarray(s)) < 1, (1 - np.minimum(np.asarray(s) ** 2, 1)) ** 6, 0.0)
    zero = lambda s: np.zeros_like(np.asarray(s, dtype=float))
    for n in (2, 3):
        u = G.hyp_wave_radial(bump, zero, 0.6, n)
        v = G.hyp_wave_spectral(bump, zero, 0.6, n)
        assert_allclose(u, v, rtol=1e-4)


def test_model_conversion_round_trip_preserves_distance():
    p = G.HypPoint("ball", (0.3, -0.2, 0.5))
    for first, second in (("halfspace", "hyperboloid"), ("hyperboloid", "halfspace")):
        q = G.model_convert(G.model_convert(p, first), second)
        back = G.model_convert(q, "ball")
        assert_allclose(back.coords, p.coords, atol=1e-13)
        assert_allclose(G.hyp_distance(q), G.hyp_distance(p), rtol=1e-13)


def test_model_invariants_are_enforced():
    with pytest.raises(G.ModelInvariantError):
        G.HypPoint("ball", (0.8, 0.7))
    with pytest.raises(G.ModelInvariantError):
        G.HypPoint("halfspace", (0.1, -1.0))
    with pytest.raises(G.ModelInvariantError):
        G.HypPoint("hyperboloid", (1.0, 0.5, 0.0))


def test_space_spec_validation():
    assert G.SpaceSpec("hyperbolic", 3).rho == 1.0
    with pytest.raises(ValueError):
        G.SpaceSpec("sphere", 1)
