from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from dunklkit import tree as T

# phi_lam(r) from the outward recursion run in mpmath at 40 digits, frozen.
PHI_CASES = [
    (0.4, 3, 3, 0.24627267385440393),
    (1.1 + 0.2j, 6, 2, -0.08167530945135469 + 0.125878336986276j),
    (0.0, 7, 3, 0.09622504486493763),
]

fractions = st.fractions(min_value=-9, max_value=9, max_denominator=8)


def radial(q, values):
    return T.RadialSeq.from_list(q, [Fraction(v) for v in values])


def test_surd_arithmetic_is_exact():
    a = T.Surd(1, 1, 2)
    b = T.Surd(1, -1, 2)
    assert a * b == T.Surd(-1, 0, 2)
    assert (a / b) * b == a
    assert T.half_power(3, 3) == T.Surd(0, 3, 3)
    assert T.half_power(3, -1) * T.half_power(3, 1) == T.Surd(1, 0, 3)
    assert_allclose(float(T.Surd(Fraction(1, 2), 2, 5)), 0.5 + 2 * math.sqrt(5), rtol=1e-15)


def test_surd_on_perfect_square_folds_into_rational_part():
    s = T.Surd(1, 1, 4)
    assert s.b == 0 and s.a == 3


def test_surd_rejects_mixed_fields():
    with pytest.raises(ValueError):
        T.Surd(1, 1, 2) + T.Surd(1, 1, 3)


@settings(max_examples=60, deadline=None)
@given(fractions, fractions, fractions, fractions)
def test_surd_field_axioms(a, b, c, d):
    x, y = T.Surd(a, b, 3), T.Surd(c, d, 3)
    assert x + y == y + x
    assert x * y == y * x
    assert (x - y) + y == x
    if not y.is_zero():
        assert (x / y) * y == x


def test_sphere_volume():
    assert [T.sphere_volume(2, r) for r in range(5)] == [1, 3, 6, 12, 24]
    assert T.sphere_volume(3, 2) == 12


def test_gamma0_exact_matches_float():
    for q in (2, 3, 5):
        assert_allclose(float(T.gamma0_exact(q)), T.gamma0(q), rtol=1e-15)
        assert_allclose(T.tree_gamma(0.0, q).real, T.gamma0(q), rtol=1e-15)


@pytest.mark.parametrize("lam, r, q, expected", PHI_CASES)
def test_phi_matches_reference(lam, r, q, expected):
    assert_allclose(T.tree_phi(lam, r, q), expected, rtol=1e-13)


def test_phi_at_half_period_uses_closed_form():
    tau = T.tree_tau(2)
    assert_allclose(T.tree_phi(tau / 2, 5, 2), -0.4714045207910317, rtol=1e-13)
    with pytest.raises(T.PoleError):
        T.c_tree(tau / 2, 2)


@settings(max_examples=40, deadline=None)
@given(st.floats(-4, 4), st.floats(-0.5, 0.5), st.sampled_from([2, 3, 5]), st.integers(0, 10))
def test_explicit_phi_agrees_with_recursion(re, im, q, r):
    lam = complex(re, im)
    if T.is_singular(lam, q, tol=1e-6) is not None:
        return
    a = T.tree_phi(lam, r, q)
    b = T.tree_phi(lam, r, q, branch="recursion")
    assert abs(a - b) <= 1e-9 * max(1.0, abs(b))


@settings(max_examples=40, deadline=None)
@given(st.floats(0.01, 3), st.sampled_from([2, 3]), st.integers(0, 10))
def test_phi_is_even_and_periodic(lam, q, r):
    tau = T.tree_tau(q)
    if T.is_singular(lam, q, tol=1e-6) is not None:
        return
    ph = T.tree_phi(lam, r, q)
    assert abs(ph - T.tree_phi(-lam, r, q)) <= 1e-11
    assert abs(ph - T.tree_phi(lam + tau, r, q)) <= 1e-11


def test_phi_is_eigenfunction_of_average_operator():
    q, lam = 3, 0.7
    g = T.tree_gamma(lam, q)
    ph = [T.tree_phi(lam, r, q) for r in range(10)]
    assert abs(ph[1] - g) < 1e-14
    for r in range(1, 9):
        assert abs((ph[r - 1] + q * ph[r + 1]) / (q + 1) - g * ph[r]) < 1e-13


def _radial_chain(t, q):
    """Distribution of the distance to the start after t steps of the walk."""
    p = {0: Fraction(1)}
    for _ in range(t):
        nxt = {}
        for r, v in p.items():
            if r == 0:
                nxt[1] = nxt.get(1, 0) + v
            else:
                nxt[r + 1] = nxt.get(r + 1, 0) + v * Fraction(q, q + 1)
                nxt[r - 1] = nxt.get(r - 1, 0) + v * Fraction(1, q + 1)
        p = nxt
    return p


@pytest.mark.parametrize("q", [2, 3, 4])
def test_heat_walk_matches_radial_markov_chain(q):
    for t in range(0, 12):
        dist = _radial_chain(t, q)
        for r in range(0, t + 2):
            assert T.heat_walk(t, r, q) == dist.get(r, 0) / T.sphere_volume(q, r)


def test_heat_walk_reference_value_and_mass():
    assert T.heat_walk(4, 2, 3) == Fraction(5, 128)
    for t in (0, 5, 13):
        assert T.radial_mass(T.heat_walk_profile(t, 3)) == 1


def test_heat_envelope_constants_are_finite():
    lo, hi = T.heat_estimate_constants(range(0, 30), 2)
    assert 0 < lo <= hi < math.inf


def test_spectral_radius_ratio_estimate():
    for q in (2, 3):
        assert abs(T.spectral_radius_estimate(40, q, "ratio") / T.gamma0(q) - 1) < 0.02
        assert T.spectral_radius_estimate(40, q, "root") <= T.gamma0(q)


def test_sphere_sum_matches_brute_force():
    q, depth = 2, 6
    ball = T.brute_force_oracle(depth, q)
    f = radial(q, [3, -1, 2, 5])
    vals = ball.lift(f)
    for d in (1, 2, 3):
        s = T.sphere_sum(f, d)
        for v in range(ball.size):
            if ball.radius[v] + d > depth:
                continue
            dist = ball.distances_from(v, d)
            assert sum(vals[y] for y, k in dist.items() if k == d) == s(ball.radius[v])


def test_oracle_size_cap():
    with pytest.raises(T.TreeSizeError):
        T.brute_force_oracle(9, 3)
    assert T.brute_force_oracle(3, 2).size == 1 + 3 + 6 + 12


@settings(max_examples=25, deadline=None)
@given(st.lists(fractions, min_size=1, max_size=6), st.sampled_from([2, 3]))
def test_abel_transform_round_trip_is_exact(values, q):
    f = radial(q, values)
    g = T.abel_tree_seq(f)
    assert g.is_even()
    assert T.abel_inverse_seq(g, q) == f


@settings(max_examples=25, deadline=None)
@given(st.lists(fractions, min_size=1, max_size=6), st.sampled_from([2, 3]))
def test_dual_abel_round_trip_is_exact(half, q):
    m = len(half) - 1
    g = T.HoroSeq({h: half[abs(h)] for h in range(-m, m + 1)})
    f = T.dual_abel_seq(g, q, m)
    for h in range(-m, m + 1):
        assert T.dual_abel_inverse(f, h) == g(h)


def test_duality_pairing_holds():
    q = 3
    f = radial(q, [1, Fraction(-2, 3), 4, 0, 7])
    g = T.HoroSeq({h: Fraction(5 - abs(h), 2) for h in range(-4, 5)})
    left, right = T.duality_pairing(f, g)
    assert left == right


def test_abel_transform_matches_horocycle_sums():
    q, depth = 2, 9
    ball = T.brute_force_oracle(depth, q)
    f = radial(q, [2, -1, 3])
    for h in range(-5, 6):
        assert ball.horocycle_sum(f, h) == T.abel_tree(f, h)


def test_spherical_transform_round_trip():
    f = radial(3, [1, Fraction(1, 2), -2, 3])
    assert T.tree_round_trip_error(f) < 1e-10


def test_spherical_transform_intertwines_average_operator():
    q, lam = 2, 0.8
    f = radial(q, [1, 3, -1, 2])
    lhs = T.spherical_transform_tree(T.radial_average(f), lam)
    assert abs(lhs - T.tree_gamma(lam, q) * T.spherical_transform_tree(f, lam)) < 1e-12


def test_wave_solution_is_exact():
    q = 2
    f = radial(q, [1, -2, Fraction(1, 3)])
    g = radial(q, [0, 4, 1])
    assert T.wave_tree(f, g, 0) == f
    assert (T.wave_tree(f, g, 1) - T.wave_tree(f, g, -1)).scale(Fraction(1, 2)) == g
    for t in range(-6, 7):
        assert not T.wave_residual(f, g, t).values


def test_literal_wave_convention_fails_at_time_zero():
    f = radial(2, [1, 1])
    g = radial(2, [0])
    assert T.wave_tree(f, g, 0, convention="literal") == f.scale(Fraction(1, 2))
    assert T.wave_residual(f, g, 0, convention="literal").values


def test_mean_operator_matches_brute_force():
    q, depth = 3, 5
    ball = T.brute_force_oracle(depth, q)
    f = radial(q, [2, 1, -1, 4])
    vals = ball.lift(f)
    for t in range(0, 4):
        M = ball.mean_operator(vals, t)
        Mr = T.mean_operator(f, t)
        assert all(M[v] == Mr(ball.radius[v]) for v in M)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        T.RadialSeq(1, {})
    with pytest.raises(ValueError):
        T.sphere_volume(2, -1)
    with pytest.raises(ValueError):
        T.tree_phi(0.3, 2, 2, branch="other")
