"""Acceptance criteria 1 through 11, one test per criterion.

Each test runs the named checks from :mod:`dunklkit.checks`, asserts the
stated tolerance against the recorded residuals, and prints a single
pass/fail line (also collected into the terminal summary).
"""

from __future__ import annotations

import math
import time

import pytest

from dunklkit import checks

from conftest import ACCEPTANCE_LINES


def _report(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def _run(number: int):
    results = [checks.run_check(cid) for cid in checks.CRITERIA[number]]
    return {r.check_id: r for r in results}


def test_tolerances_are_the_stated_ones():
    assert checks.TOLERANCES["kernel_branches"] == 1e-10
    assert checks.TOLERANCES["mass"] == 1e-7
    assert checks.TOLERANCES["product"] == 1e-6
    assert checks.TOLERANCES["variation"] == 1e-6
    assert checks.TOLERANCES["round_trip"] == 1e-5
    assert checks.TOLERANCES["heat_mass"] == 1e-6
    assert checks.TOLERANCES["plancherel_n3"] == 1e-12
    assert checks.TOLERANCES["plancherel_forms"] == 1e-9
    assert checks.TOLERANCES["rational_limit"] == 1e-4
    assert checks.TOLERANCES["mehta"] == 1e-10
    assert checks.TOLERANCES["dual_abel_cosine"] == 1e-7


def test_criterion_01_exact_commutativity():
    start = time.perf_counter()
    r = _run(1)["dunklops.commutator"]
    elapsed = time.perf_counter() - start
    ok = r.residual == "0" and elapsed < 60.0
    _report(1, ok, f"Dunkl and Cherednik commutators residual={r.residual} runtime={elapsed:.1f}s (< 60 s)")
    assert r.residual == "0"
    assert elapsed < 60.0


def test_criterion_02_heckman_commutator_formula():
    r = _run(2)["dunklops.heckman"]
    ok = r.residual == "0"
    _report(2, ok, f"[D'_xi, D'_eta] on B2 minus double-sum formula residual={r.residual}")
    assert r.residual == "0"


def test_criterion_03_kernel_branches():
    r = _run(3)["dunkl1d.kernel_branches"]
    ok = r.residual < 1e-10
    _report(3, ok, f"Bessel vs 1F1 max rel diff={r.residual:.2e} (< 1e-10)")
    assert r.residual < 1e-10


def test_criterion_04_intertwining_and_product():
    r = _run(4)["dunkl1d.intertwining"]
    c = r.constants
    ok = c["mass_err"] < 1e-7 and c["product_err"] < 1e-6 and c["variation_excess"] <= 1e-6
    _report(4, ok, f"mass err={c['mass_err']:.2e} (< 1e-7) product err={c['product_err']:.2e} (< 1e-6) "
                   f"TV excess over bound={c['variation_excess']:.2e} (<= 1e-6)")
    assert c["mass_err"] < 1e-7
    assert c["product_err"] < 1e-6
    assert c["variation_excess"] <= 1e-6


def test_criterion_05_round_trips():
    res = _run(5)
    numeric = {cid: r.residual for cid, r in res.items() if cid != "tree.abel_exact"}
    exact = res["tree.abel_exact"].residual
    worst = max(numeric.values())
    ok = worst < 1e-5 and exact == "0"
    _report(5, ok, f"max inversion error={worst:.2e} (< 1e-5); tree Abel/dual-Abel exact residual={exact}")
    for cid, v in numeric.items():
        assert v < 1e-5, cid
    assert exact == "0"


def test_criterion_06_heat_kernels():
    res = _run(6)
    d, h, t = res["dunkl1d.heat"], res["geom.hyp_heat"], res["tree.heat"]
    consts = [d.constants["c1"], d.constants["c2"]] + list(h.constants.values()) + list(t.constants.values())
    finite = all(0.0 < float(v) < math.inf for v in consts)
    ok = d.residual < 1e-6 and h.residual < 1e-6 and t.residual == "0" and finite and all(
        r.passed for r in res.values())
    _report(6, ok, f"mass err dunkl1d={d.residual:.1e} hyp={h.residual:.1e} tree exact={t.residual}; "
                   f"constants dunkl1d=({d.constants['c1']:.3g},{d.constants['c2']:.3g}) "
                   f"tree q=2 ({t.constants['q2_c1']:.3g},{t.constants['q2_c2']:.3g})")
    assert d.residual < 1e-6
    assert h.residual < 1e-6
    assert t.residual == "0"
    assert finite
    for r in res.values():
        assert r.passed, r.check_id


def test_criterion_07_tree_wave():
    res = _run(7)
    ok = all(r.residual == "0" for r in res.values())
    _report(7, ok, "wave equation for |t| <= 10 residual={} ; brute-force oracle residual={}".format(
        res["tree.wave"].residual, res["tree.wave_oracle"].residual))
    assert res["tree.wave"].residual == "0"
    assert res["tree.wave_oracle"].residual == "0"


def test_criterion_08_plancherel_closed_forms():
    res = _run(8)
    a, b = res["geom.plancherel_n3"].residual, res["trig1d.plancherel_forms"].residual
    ok = a < 1e-12 and b < 1e-9
    _report(8, ok, f"H^3 density vs lam^2 rel err={a:.2e} (< 1e-12); two trigonometric forms diff={b:.2e} (< 1e-9)")
    assert a < 1e-12
    assert b < 1e-9


def test_criterion_09_rational_limit():
    r = _run(9)["trig1d.rational_limit"]
    errs = list(r.constants.values())
    mono = all(y < x for x, y in zip(errs, errs[1:]))
    ok = mono and errs[-1] < 1e-4
    _report(9, ok, "errors along eps=1e-1..1e-3: " + ", ".join(f"{e:.2e}" for e in errs)
            + f"; monotone={mono}; final < 1e-4: {errs[-1] < 1e-4}")
    assert mono
    assert errs[-1] < 1e-4


def test_criterion_10_mehta_constant():
    r = _run(10)["dunkl1d.mehta"]
    ok = r.residual < 1e-10
    _report(10, ok, f"quadrature vs 2^(k+1/2) Gamma(k+1/2) rel err={r.residual:.2e} (< 1e-10)")
    assert r.residual < 1e-10


def test_criterion_11_dual_abel_cosine():
    r = _run(11)["geom.dual_abel_cosine"]
    ok = r.residual < 1e-7
    _report(11, ok, f"dual Abel of cos vs phi_lam on H^3 max err={r.residual:.2e} (< 1e-7)")
    assert r.residual < 1e-7


@pytest.mark.xfail(strict=True, reason="the t-th root estimator carries a t^(-3/2) prefactor; "
                                       "at t=40 it sits about 6% below gamma_0")
def test_spectral_radius_root_estimator_within_two_percent():
    from dunklkit import tree

    for q in (2, 3):
        est = tree.spectral_radius_estimate(40, q, "root")
        assert abs(est / tree.gamma0(q) - 1.0) < 0.02


def test_spectral_radius_ratio_estimator_within_two_percent():
    r = checks.run_check("tree.spectral_radius")
    assert r.passed
    for q in (2, 3):
        assert abs(r.constants[f"q{q}_ratio"] - 1.0) < 0.02
        assert r.constants[f"q{q}_root"] <= 1.0 + 1e-12
