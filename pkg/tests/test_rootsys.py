from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from dunklkit import rootsys as R

ORDERS = [
    ("A", 1, 2, 2),
    ("A", 3, 12, 24),
    ("B", 2, 8, 8),
    ("B", 3, 18, 48),
    ("C", 3, 18, 48),
    ("BC", 1, 4, 2),
    ("BC", 2, 12, 8),
    ("D", 4, 24, 192),
    ("I2", 5, 10, 10),
    ("I2", 6, 12, 12),
]


@pytest.mark.parametrize("family, n, n_roots, order", ORDERS)
def test_root_counts_and_weyl_orders(family, n, n_roots, order):
    rs = R.build_root_system(family, n)
    assert len(rs.roots) == n_roots
    assert len(rs.positive_roots) == n_roots // 2
    assert len(R.weyl_group(rs).elements) == order


def test_b2_roots_exactly():
    rs = R.build_root_system("B", 2)
    expected = {(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)}
    assert {tuple(int(c) for c in r) for r in rs.roots} == expected
    assert rs.orbit_names == ("short", "long")


def test_a1_roots_live_in_two_coordinates():
    rs = R.build_root_system("A", 1)
    assert {tuple(int(c) for c in r) for r in rs.roots} == {(1, -1), (-1, 1)}
    assert rs.rank == 1 and rs.dim == 2


def test_reduced_flag_only_for_bc():
    assert not R.build_root_system("BC", 1).reduced
    assert not R.build_root_system("BC", 3).reduced
    for fam, n in (("A", 2), ("B", 2), ("C", 2), ("D", 4)):
        assert R.build_root_system(fam, n).reduced


def test_crystallographic_flag():
    assert R.build_root_system("I2", 6).crystallographic is False
    assert R.build_root_system("I2", 5).crystallographic is False
    assert R.build_root_system("B", 3).crystallographic


def test_unsupported_family():
    with pytest.raises(R.RootSystemError):
        R.build_root_system("E", 6)
    with pytest.raises(R.RootSystemError):
        R.build_root_system("I2", 2)


@pytest.mark.parametrize("family, n", [("A", 2), ("B", 3), ("C", 2), ("BC", 2), ("D", 4)])
def test_closed_under_reflections(family, n):
    rs = R.build_root_system(family, n)
    roots = set(rs.roots)
    for a in rs.roots:
        for b in rs.roots:
            assert R.reflect(a, b) in roots


def test_longest_element_maps_chamber_to_negative():
    for fam, n in (("A", 2), ("B", 2), ("D", 4)):
        rs = R.build_root_system(fam, n)
        W = R.weyl_group(rs)
        negatives = {tuple(-c for c in a) for a in rs.positive_roots}
        assert {W.longest.act(a) for a in rs.positive_roots} == negatives


def test_reflect_exact():
    assert R.reflect((1, -1), (Fraction(1, 2), 3)) == (3, Fraction(1, 2))
    assert R.coroot((1, 1)) == (1, 1)
    assert R.coroot((2, 0)) == (1, 0)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=2, max_size=2))
def test_dominant_is_in_closed_chamber_and_in_orbit(x):
    rs = R.build_root_system("B", 2)
    x_plus, w = R.dominant(rs, x)
    assert w.act(x) == x_plus
    assert all(R.inner(a, x_plus) >= 0 for a in rs.positive_roots)


def test_rho_and_gamma_for_b2():
    rs = R.build_root_system("B", 2)
    rho, gamma = R.rho_gamma(rs, [Fraction(1, 2), 1])
    assert rho == (Fraction(5, 4), Fraction(1, 4))
    assert gamma == 3


def test_multiplicity_is_orbit_constant():
    rs = R.build_root_system("B", 2)
    k = R.Multiplicity.of(rs, [Fraction(1, 3), 2])
    for a in rs.roots:
        expected = Fraction(1, 3) if sum(abs(c) for c in a) == 1 else 2
        assert k.of_root(rs, a) == expected


def test_delta_weight_rational_and_trigonometric():
    rs = R.build_root_system("B", 2)
    x = (0.3, 1.1)
    k = [1, 2]
    prod = (abs(0.3) ** 2 * abs(1.1) ** 2) * (abs(1.4) ** 4 * abs(-0.8) ** 4)
    assert_allclose(R.delta_weight(rs, k, x), prod, rtol=1e-14)
    w = lambda t: abs(2 * math.sinh(t / 2))
    prod_t = (w(0.3) ** 2 * w(1.1) ** 2) * (w(1.4) ** 4 * w(-0.8) ** 4)
    assert_allclose(R.delta_weight(rs, k, x, mode="trigonometric"), prod_t, rtol=1e-14)


def test_negative_multiplicity_rejected():
    rs = R.build_root_system("B", 2)
    with pytest.raises(R.RootSystemError):
        R.delta_weight(rs, [-1, 1], (0.3, 0.2))


def test_json_round_trip():
    rs = R.build_root_system("BC", 2)
    back = R.root_system_from_json(R.root_system_to_json(rs))
    assert set(back.roots) == set(rs.roots)
    assert back.family == rs.family and back.reduced == rs.reduced
