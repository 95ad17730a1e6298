"""Named acceptance checks with residuals and empirical constants.

Every check is a function returning a :class:`CheckResult`.  They are
registered under stable ids such as ``"dunklops.commutator"`` or
``"tree.wave"`` and grouped by acceptance criterion number.  The command line
``suite`` command and the acceptance tests both run them from here.

Tolerances live next to each check in :data:`TOLERANCES` and may be
overridden by name.
"""

from __future__ import annotations

import fnmatch
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional

import numpy as np

from . import dunkl1d, dunklops, geom, rootsys, tree, trig1d
from .numerics import composite_nodes, quad_value

__all__ = [
    "CheckResult",
    "CHECKS",
    "TOLERANCES",
    "CRITERIA",
    "select_checks",
    "run_check",
    "run_checks",
    "bump",
    "skew_bump",
]


@dataclass
class CheckResult:
    """Outcome of one check.

    ``residual`` is the worst observed error; for exact checks it is the
    string ``"0"`` when every identity holds in rational arithmetic.
    ``constants`` holds empirical constants recorded along the way.
    """

    check_id: str
    status: str
    residual: object
    constants: Dict[str, object] = field(default_factory=dict)
    runtime_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        res = self.residual
        if isinstance(res, float):
            res = float(f"{res:.6e}")
        consts = {k: (float(f"{v:.6e}") if isinstance(v, float) else v) for k, v in self.constants.items()}
        return {
            "check_id": self.check_id,
            "status": self.status,
            "residual": res,
            "constants": consts,
            "runtime_ms": round(self.runtime_ms, 1),
        }


def bump(x):
    """Even compactly supported test function ``(1 - x**2)**8`` on ``|x| < 1``."""
    x = np.asarray(x, dtype=float)
    return np.where(np.abs(x) < 1.0, (1.0 - np.minimum(x * x, 1.0)) ** 8, 0.0)


def skew_bump(x):
    """Non-even test function ``(1 - x**2)**8 (1 + x/2)`` on ``|x| < 1``."""
    x = np.asarray(x, dtype=float)
    return bump(x) * (1.0 + 0.5 * x)


TOLERANCES: Dict[str, float] = {
    "kernel_branches": 1e-10,
    "mass": 1e-7,
    "product": 1e-6,
    "variation": 1e-6,
    "round_trip": 1e-5,
    "heat_mass": 1e-6,
    "plancherel_n3": 1e-12,
    "plancherel_forms": 1e-9,
    "rational_limit": 1e-4,
    "mehta": 1e-10,
    "dual_abel_cosine": 1e-7,
    "spectral_radius": 0.02,
}


def _result(check_id, ok, residual, constants=None) -> CheckResult:
    return CheckResult(check_id, "pass" if ok else "fail", residual, dict(constants or {}))


# ---------------------------------------------------------------------------
# Exact algebra (criteria 1, 2)
# ---------------------------------------------------------------------------

_SYSTEMS = (("B", 2), ("A", 2), ("A1^n", 2))


def _random_mult(R, rng: random.Random):
    return [Fraction(rng.randint(1, 9), rng.randint(1, 5)) for _ in R.orbit_names]


def check_commutator(tol: Mapping[str, float]) -> CheckResult:
    rng = random.Random(20240611)
    worst = Fraction(0)
    for fam, n in _SYSTEMS:
        R = rootsys.build_root_system(fam, n)
        e = [tuple(Fraction(int(i == j)) for j in range(R.dim)) for i in range(R.dim)]
        polys = dunklops.monomials_up_to(R.dim, 4)
        weights = dunklops.weight_monomials_up_to(R, 4)
        for _ in range(3):
            k = _random_mult(R, rng)
            for i in range(R.dim):
                for j in range(i + 1, R.dim):
                    worst = max(worst, dunklops.commutator_residual(
                        lambda p: dunklops.dunkl_apply(R, k, e[i], p),
                        lambda p: dunklops.dunkl_apply(R, k, e[j], p), polys))
                    worst = max(worst, dunklops.commutator_residual(
                        lambda f: dunklops.cherednik_apply(R, k, e[i], f),
                        lambda f: dunklops.cherednik_apply(R, k, e[j], f), weights))
    return _result("dunklops.commutator", worst == 0, str(worst))


def check_heckman(tol: Mapping[str, float]) -> CheckResult:
    R = rootsys.build_root_system("B", 2)
    rng = random.Random(7)
    worst = Fraction(0)
    xi, eta = (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))
    for _ in range(3):
        k = _random_mult(R, rng)
        for f in dunklops.weight_monomials_up_to(R, 3):
            ab = dunklops.heckman_prime_apply(R, k, xi, dunklops.heckman_prime_apply(R, k, eta, f))
            ba = dunklops.heckman_prime_apply(R, k, eta, dunklops.heckman_prime_apply(R, k, xi, f))
            diff = (ab - ba) - dunklops.heckman_commutator_formula(R, k, xi, eta, f)
            worst = max(worst, diff.max_abs_coeff())
    return _result("dunklops.heckman", worst == 0, str(worst))


# ---------------------------------------------------------------------------
# One-dimensional Dunkl analysis (criteria 3, 4, 6, 10)
# ---------------------------------------------------------------------------


def check_kernel_branches(tol: Mapping[str, float]) -> CheckResult:
    grid = np.linspace(-5.0, 5.0, 20)
    worst = 0.0
    for k in (0.3, 1.0, 2.5):
        for lam in grid:
            for x in grid:
                b = dunkl1d.kernel_E_branches(float(lam), float(x), k)
                a, c = complex(b["bessel"]), complex(b["confluent"])
                worst = max(worst, abs(a - c) / abs(c))
    return _result("dunkl1d.kernel_branches", worst < tol["kernel_branches"], worst)


def check_intertwining(tol: Mapping[str, float]) -> CheckResult:
    worst_mass = worst_prod = 0.0
    excess = -math.inf
    tv = {}
    pts = ((0.7, 0.4), (-1.3, 0.9), (2.0, -0.6))
    for k in (0.5, 1.0, 2.0):
        for x, y in pts:
            worst_mass = max(worst_mass, abs(dunkl1d.mu_integrate(lambda s: np.ones_like(s), x, k) - 1.0))
            worst_mass = max(worst_mass, abs(dunkl1d.nu_mass(x, y, k) - 1.0))
            for lam in (0.8, -1.5, 2.5j):
                E = lambda s, lam=lam: dunkl1d.kernel_E_vec(lam * np.asarray(s, dtype=complex), k)
                rec = dunkl1d.mu_integrate(lambda s, lam=lam: np.exp(lam * s), x, k)
                ex = dunkl1d.kernel_E(lam, x, k).value
                worst_prod = max(worst_prod, abs(rec - ex) / max(1.0, abs(ex)))
                prod = dunkl1d.nu_integrate(E, x, y, k)
                exy = ex * dunkl1d.kernel_E(lam, y, k).value
                worst_prod = max(worst_prod, abs(prod - exy) / max(1.0, abs(exy)))
            var = dunkl1d.nu_total_variation(x, y, k)
            tv[f"tv_k{k}"] = max(tv.get(f"tv_k{k}", 0.0), var)
            excess = max(excess, var - dunkl1d.nu_bound(k))
    ok = worst_mass < tol["mass"] and worst_prod < tol["product"] and excess <= tol["variation"]
    consts = {"mass_err": worst_mass, "product_err": worst_prod, "variation_excess": excess, **tv}
    return _result("dunkl1d.intertwining", ok, max(worst_mass, worst_prod), consts)


def check_mehta(tol: Mapping[str, float]) -> CheckResult:
    worst = 0.0
    for k in (0.0, 0.5, 1.0, 2.0):
        v = dunkl1d.mehta_constant(k)
        ref = 2.0 ** (k + 0.5) * math.gamma(k + 0.5)
        worst = max(worst, abs(v - ref) / ref)
    return _result("dunkl1d.mehta", worst < tol["mehta"], worst)


def check_dunkl_heat(tol: Mapping[str, float]) -> CheckResult:
    k = 1.0
    worst = 0.0
    for t in (0.1, 1.0, 4.0):
        for x in (0.0, 0.8, -2.0):
            s, w = composite_nodes([-40.0, -abs(x) - 1, 0.0, abs(x) + 1, 40.0], 60)
            vals = np.array([dunkl1d.heat_kernel(t, x, float(y), k) for y in s])
            worst = max(worst, abs(float(np.sum(w * vals * np.abs(s) ** (2 * k))) - 1.0))
    c1, c2 = dunkl1d.heat_sandwich_constants(
        np.geomspace(0.01, 10.0, 12), np.linspace(-6.0, 6.0, 13), np.linspace(-6.0, 6.0, 13), k
    )
    ok = worst < tol["heat_mass"] and 0.0 < c1 <= c2 < math.inf
    return _result("dunkl1d.heat", ok, worst, {"c1": float(c1), "c2": float(c2)})


# ---------------------------------------------------------------------------
# Transforms (criterion 5)
# ---------------------------------------------------------------------------


def check_dunkl_round_trip(tol: Mapping[str, float]) -> CheckResult:
    err = dunkl1d.round_trip_error(skew_bump, np.linspace(-1.2, 1.2, 25), 1.0)
    return _result("dunkl1d.round_trip", err < tol["round_trip"], err)


def check_cherednik_round_trip(tol: Mapping[str, float]) -> CheckResult:
    xs = np.linspace(-1.2, 1.2, 25)
    errs = {f"k{k1}_{k2}": trig1d.cherednik_round_trip_error(skew_bump, xs, k1, k2) for k1, k2 in ((1.0, 0.5), (0.0, 1.0))}
    worst = max(errs.values())
    return _result("trig1d.round_trip", worst < tol["round_trip"], worst, errs)


def check_hankel_round_trip(tol: Mapping[str, float]) -> CheckResult:
    rs = np.linspace(0.0, 1.2, 13)
    errs = {f"n{n}": geom.hankel_round_trip_error(bump, rs, n) for n in (2, 3)}
    worst = max(errs.values())
    return _result("geom.hankel_round_trip", worst < tol["round_trip"], worst, errs)


def check_hyp_round_trip(tol: Mapping[str, float]) -> CheckResult:
    rs = np.linspace(0.0, 1.2, 13)
    errs = {f"n{n}": geom.hyp_round_trip_error(bump, rs, n) for n in (2, 3)}
    worst = max(errs.values())
    return _result("geom.hyp_round_trip", worst < tol["round_trip"], worst, errs)


def _random_radial(q: int, length: int, rng: random.Random) -> tree.RadialSeq:
    return tree.RadialSeq.from_list(q, [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(length)])


def check_tree_round_trip(tol: Mapping[str, float]) -> CheckResult:
    rng = random.Random(11)
    errs = {f"q{q}": tree.tree_round_trip_error(_random_radial(q, 6, rng)) for q in (2, 3)}
    worst = max(errs.values())
    return _result("tree.round_trip", worst < tol["round_trip"], worst, errs)


def check_tree_abel_exact(tol: Mapping[str, float]) -> CheckResult:
    rng = random.Random(5)
    ok = True
    for q in (2, 3):
        for _ in range(3):
            f = _random_radial(q, 7, rng)
            ok &= tree.abel_inverse_seq(tree.abel_tree_seq(f), q) == f
            half = [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(6)]
            g = tree.HoroSeq({h: half[abs(h)] for h in range(-5, 6)})
            fa = tree.dual_abel_seq(g, q, 5)
            ok &= all(tree.dual_abel_inverse(fa, h) == g(h) for h in range(-5, 6))
            left, right = tree.duality_pairing(f, g)
            ok &= left == right
    return _result("tree.abel_exact", ok, "0" if ok else "nonzero")


# ---------------------------------------------------------------------------
# Heat on H^n and on trees (criterion 6)
# ---------------------------------------------------------------------------


def check_hyp_heat(tol: Mapping[str, float]) -> CheckResult:
    worst = 0.0
    consts = {}
    ts = np.geomspace(0.05, 20.0, 10)
    rs = np.linspace(0.0, 15.0, 16)
    positive = True
    for n in (2, 3):
        for t in (0.1, 1.0, 5.0):
            worst = max(worst, abs(geom.hyp_heat_mass(t, n) - 1.0))
        logs = np.array([geom.hyp_heat(t, rs, n, log=True) for t in ts])
        positive &= bool(np.all(np.isfinite(logs)))
        c1, c2 = geom.hyp_heat_sandwich_constants(ts, rs, n)
        positive &= 0.0 < c1 <= c2 < math.inf
        consts[f"n{n}_c1"], consts[f"n{n}_c2"] = float(c1), float(c2)
    return _result("geom.hyp_heat", worst < tol["heat_mass"] and positive, worst, consts)


def check_tree_heat(tol: Mapping[str, float]) -> CheckResult:
    ok = True
    consts = {}
    for q in (2, 3):
        for t in range(0, 41):
            prof = tree.heat_walk_profile(t, q)
            ok &= tree.radial_mass(prof) == 1
            ok &= all((v > 0) == (r <= t and (t - r) % 2 == 0) for r, v in prof.values.items())
            ok &= all(prof(r) > 0 for r in range(t % 2, t + 1, 2))
        c1, c2 = tree.heat_estimate_constants(range(0, 41), q)
        ok &= 0.0 < c1 <= c2 < math.inf
        consts[f"q{q}_c1"], consts[f"q{q}_c2"] = c1, c2
    return _result("tree.heat", ok, "0" if ok else "nonzero", consts)


def check_tree_spectral_radius(tol: Mapping[str, float]) -> CheckResult:
    consts = {}
    worst = 0.0
    for q in (2, 3):
        g0 = tree.gamma0(q)
        ratio = tree.spectral_radius_estimate(40, q, "ratio")
        root = tree.spectral_radius_estimate(40, q, "root")
        consts[f"q{q}_ratio"], consts[f"q{q}_root"] = ratio / g0, root / g0
        worst = max(worst, abs(ratio / g0 - 1.0))
        worst_root_ok = root <= g0 * (1.0 + 1e-12)
        if not worst_root_ok:
            worst = math.inf
    return _result("tree.spectral_radius", worst < tol["spectral_radius"], worst, consts)


# ---------------------------------------------------------------------------
# Tree wave (criterion 7)
# ---------------------------------------------------------------------------


def check_tree_wave(tol: Mapping[str, float]) -> CheckResult:
    rng = random.Random(3)
    ok = True
    for q in (2, 3):
        f = _random_radial(q, 5, rng)
        g = _random_radial(q, 5, rng)
        ok &= tree.wave_tree(f, g, 0) == f
        ok &= (tree.wave_tree(f, g, 1) - tree.wave_tree(f, g, -1)).scale(Fraction(1, 2)) == g
        for t in range(-10, 11):
            ok &= not tree.wave_residual(f, g, t).values
    return _result("tree.wave", ok, "0" if ok else "nonzero")


def check_tree_wave_oracle(tol: Mapping[str, float]) -> CheckResult:
    rng = random.Random(4)
    ok = True
    for q, depth in ((2, 12), (3, 8)):
        T = tree.brute_force_oracle(depth, q)
        f = _random_radial(q, 5, rng)
        g = _random_radial(q, 5, rng)
        fv, gv = T.lift(f), T.lift(g)
        for t in range(-depth + 1, depth):
            a = abs(t)
            verts = [v for v in range(T.size) if T.radius[v] + a <= depth and T.radius[v] <= 2]
            cos_a = T.mean_operator(fv, a, verts)
            cos_b = T.mean_operator(fv, a - 2, verts) if a >= 2 else {}
            sin_ = T.mean_operator(gv, a - 1, verts) if a >= 1 else {}
            sign = (t > 0) - (t < 0)
            radial = tree.wave_tree(f, g, t)
            for v in verts:
                if a == 0:
                    val = fv[v]
                else:
                    val = (cos_a[v] - cos_b.get(v, 0)) * Fraction(1, 2) + sign * sin_.get(v, 0)
                ok &= tree._eq(val, radial(T.radius[v]))
    return _result("tree.wave_oracle", ok, "0" if ok else "nonzero")


def check_tree_oracle(tol: Mapping[str, float]) -> CheckResult:
    rng = random.Random(6)
    ok = True
    for q, depth in ((2, 6), (3, 5)):
        T = tree.brute_force_oracle(depth, q)
        f = _random_radial(q, depth, rng)
        vals = T.lift(f)
        avg = T.average(vals)
        Af = tree.radial_average(f)
        ok &= all(avg[v] == Af(T.radius[v]) for v in avg)
        for t in (0, 1, 2, 3):
            M = T.mean_operator(vals, t)
            Mr = tree.mean_operator(f, t)
            ok &= all(tree._eq(M[v], Mr(T.radius[v])) for v in M)
        short = _random_radial(q, 2, rng)
        ok &= all(tree._eq(T.horocycle_sum(short, h), tree.abel_tree(short, h)) for h in range(-(depth - 3), depth - 2))
    return _result("tree.oracle", ok, "0" if ok else "nonzero")


def check_tree_phi(tol: Mapping[str, float]) -> CheckResult:
    worst = 0.0
    for q in (2, 3):
        tau = tree.tree_tau(q)
        for lam in (0.0, 0.37, 1.3, tau / 2, 0.4 + 0.25j):
            ph = [tree.tree_phi(lam, r, q) for r in range(12)]
            g = tree.tree_gamma(lam, q)
            worst = max(worst, abs(ph[0] - 1.0), abs(ph[1] - g))
            for r in range(1, 11):
                worst = max(worst, abs((ph[r - 1] + q * ph[r + 1]) / (q + 1) - g * ph[r]))
            worst = max(worst, max(abs(ph[r] - tree.tree_phi(lam + tau, r, q)) for r in range(12)))
            worst = max(worst, max(abs(ph[r] - tree.tree_phi(-lam, r, q)) for r in range(12)))
    return _result("tree.phi", worst < 1e-12, worst)


# ---------------------------------------------------------------------------
# Plancherel densities, limits and dual Abel (criteria 8, 9, 11)
# ---------------------------------------------------------------------------


def check_plancherel_n3(tol: Mapping[str, float]) -> CheckResult:
    worst = 0.0
    for lam in np.linspace(0.1, 10.0, 40):
        _, dens = geom.hyp_c_plancherel(float(lam), 3)
        prod = geom.hyp_plancherel_product(float(lam), 3)
        worst = max(worst, abs(dens - lam ** 2) / lam ** 2, abs(prod - lam ** 2) / lam ** 2)
    return _result("geom.plancherel_n3", worst < tol["plancherel_n3"], worst)


def check_plancherel_forms(tol: Mapping[str, float]) -> CheckResult:
    worst = 0.0
    for k1, k2 in ((1.0, 0.5), (0.5, 0.0), (0.0, 1.0), (2.0, 1.5)):
        for lam in np.linspace(-6.0, 6.0, 25):
            if lam == 0.0:
                continue
            a, b = trig1d.plancherel_forms(float(lam), k1, k2)
            worst = max(worst, abs(a - b) / max(1.0, abs(b)))
    return _result("trig1d.plancherel_forms", worst < tol["plancherel_forms"], worst)


def check_rational_limit(tol: Mapping[str, float]) -> CheckResult:
    eps = [10.0 ** (-j / 2) for j in range(2, 7)]
    errs = [float(e) for e in trig1d.rational_limit(1.0, 1.0, 1.0, eps)]
    mono = all(b < a for a, b in zip(errs, errs[1:]))
    consts = {f"eps_{e:.0e}": v for e, v in zip(eps, errs)}
    return _result("trig1d.rational_limit", mono and errs[-1] < tol["rational_limit"], errs[-1], consts)


def check_dual_abel_cosine(tol: Mapping[str, float]) -> CheckResult:
    rs = np.linspace(0.0, 5.0, 26)
    worst = 0.0
    for lam in (0.5, 1.0, 2.0):
        lhs = np.asarray(geom.hyp_dual_abel(lambda s, lam=lam: np.cos(lam * s), rs, 3), dtype=float)
        rhs = np.array([geom.hyp_phi(lam, float(r), 3).value.real for r in rs])
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return _result("geom.dual_abel_cosine", worst < tol["dual_abel_cosine"], worst)


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

CHECKS: Dict[str, Callable[[Mapping[str, float]], CheckResult]] = {
    "dunklops.commutator": check_commutator,
    "dunklops.heckman": check_heckman,
    "dunkl1d.kernel_branches": check_kernel_branches,
    "dunkl1d.intertwining": check_intertwining,
    "dunkl1d.round_trip": check_dunkl_round_trip,
    "trig1d.round_trip": check_cherednik_round_trip,
    "geom.hankel_round_trip": check_hankel_round_trip,
    "geom.hyp_round_trip": check_hyp_round_trip,
    "tree.round_trip": check_tree_round_trip,
    "tree.abel_exact": check_tree_abel_exact,
    "dunkl1d.heat": check_dunkl_heat,
    "geom.hyp_heat": check_hyp_heat,
    "tree.heat": check_tree_heat,
    "tree.wave": check_tree_wave,
    "tree.wave_oracle": check_tree_wave_oracle,
    "geom.plancherel_n3": check_plancherel_n3,
    "trig1d.plancherel_forms": check_plancherel_forms,
    "trig1d.rational_limit": check_rational_limit,
    "dunkl1d.mehta": check_mehta,
    "geom.dual_abel_cosine": check_dual_abel_cosine,
    "tree.phi": check_tree_phi,
    "tree.oracle": check_tree_oracle,
    "tree.spectral_radius": check_tree_spectral_radius,
}

CRITERIA: Dict[int, List[str]] = {
    1: ["dunklops.commutator"],
    2: ["dunklops.heckman"],
    3: ["dunkl1d.kernel_branches"],
    4: ["dunkl1d.intertwining"],
    5: ["dunkl1d.round_trip", "trig1d.round_trip", "geom.hankel_round_trip", "geom.hyp_round_trip",
        "tree.round_trip", "tree.abel_exact"],
    6: ["dunkl1d.heat", "geom.hyp_heat", "tree.heat"],
    7: ["tree.wave", "tree.wave_oracle"],
    8: ["geom.plancherel_n3", "trig1d.plancherel_forms"],
    9: ["trig1d.rational_limit"],
    10: ["dunkl1d.mehta"],
    11: ["geom.dual_abel_cosine"],
}


def select_checks(pattern: str) -> List[str]:
    """Check ids matching a glob pattern, in registry order."""
    return [cid for cid in CHECKS if fnmatch.fnmatchcase(cid, pattern)]


def run_check(check_id: str, overrides: Optional[Mapping[str, float]] = None) -> CheckResult:
    """Run one check with optional tolerance overrides and time it."""
    tol = dict(TOLERANCES)
    tol.update(overrides or {})
    start = time.perf_counter()
    res = CHECKS[check_id](tol)
    res.runtime_ms = (time.perf_counter() - start) * 1000.0
    return res


def run_checks(ids: List[str], overrides: Optional[Mapping[str, float]] = None, jobs: int = 1) -> List[CheckResult]:
    """Run checks, in parallel processes when ``jobs > 1``; results keep the order of ``ids``."""
    if jobs <= 1 or len(ids) <= 1:
        return [run_check(cid, overrides) for cid in ids]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_check, ids, [overrides] * len(ids)))
