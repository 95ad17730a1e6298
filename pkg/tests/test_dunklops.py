from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dunklkit import dunklops as D
from dunklkit import rootsys as R

B2 = R.build_root_system("B", 2)
E1, E2 = (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))

mult = st.fractions(min_value=0, max_value=5, max_denominator=6)


def test_rank_one_dunkl_on_x():
    rs = R.build_root_system("A1^n", 1)
    out = D.dunkl_apply(rs, 3, (1,), D.MultiPoly.monomial((1,)))
    assert out.terms == {(0,): Fraction(7)}


def test_rank_one_dunkl_on_odd_and_even_powers():
    rs = R.build_root_system("A1^n", 1)
    k = Fraction(1, 2)
    # D x^m = (m + 2k [m odd]) x^(m-1)
    for m in range(1, 7):
        out = D.dunkl_apply(rs, k, (1,), D.MultiPoly.monomial((m,)))
        assert out.terms == {(m - 1,): m + (2 * k if m % 2 else 0)}


def test_laplacian_of_norm_squared():
    k = [Fraction(1), Fraction(2)]
    p = D.MultiPoly.monomial((2, 0)) + D.MultiPoly.monomial((0, 2))
    out = D.laplacian_apply(B2, k, p)
    # 2 N + 4 sum_{alpha > 0} k_alpha with two short and two long positive roots
    assert out.terms == {(0, 0): Fraction(2 * 2 + 4 * (2 * 1 + 2 * 2))}


@settings(max_examples=8, deadline=None)
@given(mult, mult)
def test_dunkl_operators_commute_on_b2(k_short, k_long):
    k = [k_short, k_long]
    polys = D.monomials_up_to(2, 3)
    res = D.commutator_residual(lambda p: D.dunkl_apply(B2, k, E1, p),
                                lambda p: D.dunkl_apply(B2, k, E2, p), polys)
    assert res == 0


@settings(max_examples=6, deadline=None)
@given(mult, mult)
def test_cherednik_operators_commute_on_b2(k_short, k_long):
    k = [k_short, k_long]
    weights = D.weight_monomials_up_to(B2, 2)
    res = D.commutator_residual(lambda f: D.cherednik_apply(B2, k, E1, f),
                                lambda f: D.cherednik_apply(B2, k, E2, f), weights)
    assert res == 0


def test_dunkl_is_weyl_equivariant():
    k = [Fraction(2, 3), Fraction(5, 2)]
    W = R.weyl_group(B2)
    p = D.MultiPoly.monomial((3, 1)) + D.MultiPoly.monomial((0, 2), Fraction(-1, 2))
    xi = (Fraction(1), Fraction(3))
    for w in W.elements:
        lhs = D.act_weyl(w, D.dunkl_apply(B2, k, xi, p))
        rhs = D.dunkl_apply(B2, k, w.act(xi), D.act_weyl(w, p))
        assert lhs == rhs


def test_dunkl_lowers_degree_by_one():
    k = [Fraction(1, 2), Fraction(3)]
    for p in D.monomials_up_to(2, 4):
        if p.degree == 0:
            continue
        out = D.dunkl_apply(B2, k, E1, p)
        assert out.is_zero() or (out.is_homogeneous() and out.degree == p.degree - 1)


def test_cherednik_on_constant():
    k = [Fraction(1, 2), Fraction(3)]
    rho, _ = R.rho_gamma(B2, k)
    one = D.LaurentWeightPoly.const(1, 2)
    for xi in (E1, E2):
        out = D.cherednik_apply(B2, k, xi, one)
        assert out == one.scale(-R.inner(rho, xi))


def test_cherednik_rejects_off_lattice_weight():
    f = D.LaurentWeightPoly.exp((Fraction(1, 3), Fraction(0)))
    with pytest.raises(D.LatticeError):
        D.cherednik_apply(B2, [1, 1], E1, f)


def test_heckman_operators_do_not_commute():
    k = [Fraction(1), Fraction(1)]
    f = D.LaurentWeightPoly.exp((Fraction(1), Fraction(0)))
    ab = D.heckman_prime_apply(B2, k, E1, D.heckman_prime_apply(B2, k, E2, f))
    ba = D.heckman_prime_apply(B2, k, E2, D.heckman_prime_apply(B2, k, E1, f))
    diff = ab - ba
    assert not diff.is_zero()
    assert diff == D.heckman_commutator_formula(B2, k, E1, E2, f)


def test_multipoly_exact_division():
    x_minus_y = D.MultiPoly.linear((1, -1))
    p = (D.MultiPoly.monomial((2, 0)) - D.MultiPoly.monomial((0, 2)))
    assert p.divide_linear((1, -1)) == D.MultiPoly.linear((1, 1))
    with pytest.raises(D.DivisionError):
        (p + D.MultiPoly.const(1, 2)).divide_linear((1, -1))
    assert x_minus_y.evaluate((Fraction(3), Fraction(1))) == 2
