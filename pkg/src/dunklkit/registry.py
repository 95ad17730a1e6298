"""Registry of evaluable operations for the command line.

Every operation is addressed by one id ``module.operation``.  A target
declares typed parameters; the command line parses ``key=value`` strings
with these types, fills defaults and calls the adapter.  Adapters return a
:class:`~dunklkit.numerics.KernelEval`, a plain number, an exact number or a
small structure that serializes to JSON.

Callable inputs (test functions for transforms) are named profiles such as
``"gauss"`` or ``"cos:0.5"``; see :data:`PROFILES`.  Finite sequences on the
tree are JSON arrays: radial data ``[f(0), f(1), ...]`` and height data
``[g(-m), ..., g(0), ..., g(m)]``.  Rationals may be written ``"1/3"``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from . import dunkl1d, dunklops, geom, numerics, rootsys, tree, trig1d

__all__ = ["Param", "Target", "TARGETS", "PROFILES", "ParamError", "parse_value", "make_profile", "call_target"]


class ParamError(ValueError):
    """Invalid or missing parameter; ``key`` names the offending parameter."""

    def __init__(self, key: str, message: str):
        super().__init__(f"invalid parameter {key!r}: {message}")
        self.key = key


REQUIRED = object()


@dataclass(frozen=True)
class Param:
    kind: str
    default: Any = REQUIRED


@dataclass(frozen=True)
class Target:
    target_id: str
    category: str
    fn: Callable
    params: Dict[str, Param] = field(default_factory=dict)
    doc: str = ""


# ---------------------------------------------------------------------------
# Profiles
# ---------------------------------------------------------------------------


def _bump(x):
    x = np.asarray(x, dtype=float)
    return np.where(np.abs(x) < 1.0, (1.0 - np.minimum(x * x, 1.0)) ** 8, 0.0)


PROFILES: Dict[str, Callable[[float], Callable]] = {
    "gauss": lambda a: (lambda x: np.exp(-a * np.asarray(x, dtype=float) ** 2)),
    "bump": lambda a: (lambda x: _bump(np.asarray(x, dtype=float) / a)),
    "skew_bump": lambda a: (lambda x: _bump(np.asarray(x, dtype=float) / a) * (1.0 + 0.5 * np.asarray(x, dtype=float) / a)),
    "sech2": lambda a: (lambda x: 1.0 / np.cosh(a * np.asarray(x, dtype=float)) ** 2),
    "cos": lambda a: (lambda x: np.cos(a * np.asarray(x, dtype=float))),
    "one": lambda a: (lambda x: np.ones_like(np.asarray(x, dtype=float))),
}
"""Named test functions ``name[:a]``; ``a`` defaults to 1.

``gauss`` is ``exp(-a x**2)``, ``bump`` is ``(1 - (x/a)**2)**8`` on ``|x| < a``,
``skew_bump`` multiplies it by ``1 + x/(2a)``, ``sech2`` is ``cosh(a x)**-2``,
``cos`` is ``cos(a x)`` and ``one`` is the constant 1."""


def make_profile(spec: str) -> Callable:
    name, _, arg = spec.partition(":")
    if name not in PROFILES:
        raise ValueError(f"unknown profile {name!r}; choose from {sorted(PROFILES)}")
    a = float(arg) if arg else 1.0
    return PROFILES[name](a)


# ---------------------------------------------------------------------------
# Value parsing
# ---------------------------------------------------------------------------


def _frac(v) -> Fraction:
    if isinstance(v, float):
        return Fraction(v).limit_denominator(10**12) if v != int(v) else Fraction(int(v))
    return Fraction(str(v))


def _poly_terms(text: str, weights: bool):
    obj = json.loads(text)
    if not isinstance(obj, dict) or not obj:
        raise ValueError("expected a nonempty JSON object mapping exponents to coefficients")
    terms = {}
    for key, coef in obj.items():
        idx = tuple(_frac(p) if weights else int(p) for p in str(key).split(","))
        terms[idx] = _frac(coef)
    return terms


def parse_value(kind: str, text: str):
    """Convert a command-line string to the declared parameter kind."""
    if kind == "float":
        return float(text)
    if kind == "int":
        v = float(text)
        if v != int(v):
            raise ValueError(f"{text!r} is not an integer")
        return int(v)
    if kind == "complex":
        return complex(text.replace(" ", "").replace("i", "j")) if ("j" in text or "i" in text) else float(text)
    if kind == "str":
        return text
    if kind == "bool":
        if text.lower() in ("1", "true", "yes"):
            return True
        if text.lower() in ("0", "false", "no"):
            return False
        raise ValueError(f"{text!r} is not a boolean")
    if kind == "floats":
        vals = json.loads(text)
        return [float(v) for v in (vals if isinstance(vals, list) else [vals])]
    if kind == "fracs":
        vals = json.loads(text)
        return [_frac(v) for v in (vals if isinstance(vals, list) else [vals])]
    if kind == "mult":
        vals = json.loads(text)
        return [_frac(v) for v in vals] if isinstance(vals, list) else _frac(vals)
    if kind == "profile":
        return make_profile(text)
    if kind == "poly":
        return _poly_terms(text, weights=False)
    if kind == "wpoly":
        return _poly_terms(text, weights=True)
    raise ValueError(f"unknown parameter kind {kind!r}")


# ---------------------------------------------------------------------------
# Adapters
# ---------------------------------------------------------------------------


def _R(family: str, n: int) -> rootsys.RootSystem:
    return rootsys.build_root_system(family, n)


def _basis(R, i):
    return tuple(Fraction(int(i == j)) for j in range(R.dim))


def _mpoly(R, terms) -> dunklops.MultiPoly:
    return dunklops.MultiPoly(terms, R.dim)


def _wpoly(R, terms) -> dunklops.LaurentWeightPoly:
    return dunklops.LaurentWeightPoly(terms, R.dim)


def _poly_json(p) -> dict:
    return {",".join(str(e) for e in m): str(c) for m, c in sorted(p.terms.items(), reverse=True)}


def _radial(q, values) -> tree.RadialSeq:
    return tree.RadialSeq.from_list(q, values)


def _horo(values) -> tree.HoroSeq:
    if len(values) % 2 != 1:
        raise ValueError("height data need odd length 2m+1 (heights -m..m)")
    m = len(values) // 2
    return tree.HoroSeq({h - m: v for h, v in enumerate(values)})


def _commutator(family, n, k, op, degree, i, j):
    R = _R(family, n)
    xi, eta = _basis(R, i), _basis(R, j)
    if op == "dunkl":
        tests = dunklops.monomials_up_to(R.dim, degree)
        A = lambda p: dunklops.dunkl_apply(R, k, xi, p)
        B = lambda p: dunklops.dunkl_apply(R, k, eta, p)
    elif op in ("cherednik", "heckman"):
        tests = dunklops.weight_monomials_up_to(R, degree)
        apply = dunklops.cherednik_apply if op == "cherednik" else dunklops.heckman_prime_apply
        A = lambda f: apply(R, k, xi, f)
        B = lambda f: apply(R, k, eta, f)
    else:
        raise ValueError(f"unknown operator family {op!r}")
    return dunklops.commutator_residual(A, B, tests)


def _dominant(family, n, x):
    R = _R(family, n)
    xp, w = rootsys.dominant(R, x)
    return {"x_plus": [str(c) for c in xp], "word": list(w.word)}


def _tree_inverse(f, q, r):
    seq = _radial(q, f)
    return tree.inverse_spherical_transform_tree(lambda lam: tree.spherical_transform_tree(seq, lam), r, q)


def _oracle(depth, q):
    T = tree.brute_force_oracle(depth, q)
    return {"vertices": T.size, "heights": [min(T.height), max(T.height)], "depth": depth, "q": q}


def _wave(f, g, q, t):
    u = tree.wave_tree(_radial(q, f), _radial(q, g), t)
    return [str(v) for v in u.to_list()]


def _model_convert(model, coords, target):
    p = geom.model_convert(geom.HypPoint(model, tuple(coords)), target)
    return list(p.coords)


def _sphere_expand(f, n, L):
    return [float(c) for c in geom.sphere_expand(f, n, L)]


def _scalar(v):
    return v.item() if isinstance(v, np.ndarray) and v.ndim == 0 else (v[0] if isinstance(v, np.ndarray) and v.size == 1 else v)


P = Param
F, I, C, S, B = "float", "int", "complex", "str", "bool"

_TARGET_LIST: List[Target] = [
    # numerics
    Target("numerics.gamma_fn", "eval", lambda x, log_mode: numerics.gamma_fn(x, log_mode),
           {"x": P(C), "log_mode": P(B, False)}, "Gamma function or its logarithm"),
    Target("numerics.bessel_j_mod", "eval", lambda nu, z: numerics.bessel_j_mod(nu, z),
           {"nu": P(F), "z": P(C)}, "normalized Bessel function j_nu(z)"),
    Target("numerics.pfq_series", "eval", lambda a, b, z, cap: numerics.pfq_series(a, b, z, cap),
           {"a": P("floats"), "b": P("floats"), "z": P(C), "cap": P(I, 5000)}, "generalized hypergeometric series"),
    Target("numerics.gauss_2f1", "eval", lambda a, b, c, z: numerics.gauss_2f1(a, b, c, z),
           {"a": P(C), "b": P(C), "c": P(C), "z": P(F)}, "Gauss hypergeometric function"),
    Target("numerics.quad", "eval", lambda f, a, b, mode: numerics.quad(lambda s: complex(np.asarray(f(s))), a, b, mode),
           {"f": P("profile"), "a": P(F), "b": P(F), "mode": P(S, "adaptive")}, "quadrature of a profile"),
    Target("numerics.fourier_line", "transform", lambda f, lam, support: numerics.fourier_line(f, lam, support),
           {"f": P("profile"), "lam": P(F), "support": P(F, 1.0)}, "Fourier transform on the line"),
    # rootsys
    Target("rootsys.build_root_system", "eval", lambda family, n: json.loads(rootsys.root_system_to_json(_R(family, n))),
           {"family": P(S), "n": P(I)}, "root system as JSON"),
    Target("rootsys.reflect", "eval", lambda alpha, x: [str(c) for c in rootsys.reflect(alpha, x)],
           {"alpha": P("fracs"), "x": P("fracs")}, "reflection r_alpha(x)"),
    Target("rootsys.weyl_group", "eval", lambda family, n: len(rootsys.weyl_group(_R(family, n))),
           {"family": P(S), "n": P(I)}, "order of the Weyl group"),
    Target("rootsys.dominant", "eval", _dominant, {"family": P(S), "n": P(I), "x": P("fracs")},
           "dominant representative and reducing word"),
    Target("rootsys.delta_weight", "eval",
           lambda family, n, k, x, mode: rootsys.delta_weight(_R(family, n), k, x, mode),
           {"family": P(S), "n": P(I), "k": P("mult"), "x": P("floats"), "mode": P(S, "rational")}, "weight delta_k(x)"),
    Target("rootsys.rho_gamma", "eval",
           lambda family, n, k: (lambda rg: {"rho": [str(c) for c in rg[0]], "gamma": str(rg[1])})(rootsys.rho_gamma(_R(family, n), k)),
           {"family": P(S), "n": P(I), "k": P("mult")}, "rho(k) and gamma(k)"),
    # dunklops
    Target("dunklops.dunkl_apply", "eval",
           lambda family, n, k, i, p: _poly_json(dunklops.dunkl_apply(_R(family, n), k, _basis(_R(family, n), i), _mpoly(_R(family, n), p))),
           {"family": P(S), "n": P(I), "k": P("mult"), "i": P(I, 0), "p": P("poly")}, "Dunkl operator T_{e_i} p"),
    Target("dunklops.laplacian_apply", "eval",
           lambda family, n, k, p, mode: _poly_json(dunklops.laplacian_apply(
               _R(family, n), k, _mpoly(_R(family, n), p) if mode == "rational" else _wpoly(_R(family, n), p), mode)),
           {"family": P(S), "n": P(I), "k": P("mult"), "p": P("wpoly"), "mode": P(S, "rational")}, "Dunkl Laplacian"),
    Target("dunklops.cherednik_apply", "eval",
           lambda family, n, k, i, f: _poly_json(dunklops.cherednik_apply(_R(family, n), k, _basis(_R(family, n), i), _wpoly(_R(family, n), f))),
           {"family": P(S), "n": P(I), "k": P("mult"), "i": P(I, 0), "f": P("wpoly")}, "Cherednik operator"),
    Target("dunklops.heckman_prime_apply", "eval",
           lambda family, n, k, i, f: _poly_json(dunklops.heckman_prime_apply(_R(family, n), k, _basis(_R(family, n), i), _wpoly(_R(family, n), f))),
           {"family": P(S), "n": P(I), "k": P("mult"), "i": P(I, 0), "f": P("wpoly")}, "Heckman operator"),
    Target("dunklops.commutator_residual", "eval", lambda family, n, k, op, degree, i, j: str(_commutator(family, n, k, op, degree, i, j)),
           {"family": P(S), "n": P(I), "k": P("mult"), "op": P(S, "dunkl"), "degree": P(I, 4), "i": P(I, 0), "j": P(I, 1)},
           "largest coefficient of [T_i, T_j] on a test set"),
    # dunkl1d
    Target("dunkl1d.kernel_E", "eval", lambda lam, x, k, symmetrize: dunkl1d.kernel_E(lam, x, k, symmetrize),
           {"lam": P(C), "x": P(F), "k": P(F), "symmetrize": P(B, False)}, "Dunkl kernel E_lam(x)"),
    Target("dunkl1d.mu_density", "eval", dunkl1d.mu_density, {"x": P(F), "y": P(F), "k": P(F)}, "intertwining density"),
    Target("dunkl1d.nu_density", "eval", dunkl1d.nu_density, {"x": P(F), "y": P(F), "z": P(F), "k": P(F)}, "product formula density"),
    Target("dunkl1d.translate_radial", "eval", lambda f, y, x, k: dunkl1d.translate_radial(f, y, x, k),
           {"f": P("profile"), "y": P(F), "x": P(F), "k": P(F)}, "generalized translation of a radial profile"),
    Target("dunkl1d.transform_pair", "transform",
           lambda f, lam, k, direction, support, band: dunkl1d.transform_pair(f, lam, k, direction, support, band),
           {"f": P("profile"), "lam": P(F), "k": P(F), "direction": P(S, "forward"), "support": P(F, 1.0), "band": P(F, 40.0)},
           "Dunkl transform or its inverse"),
    Target("dunkl1d.mehta_constant", "eval", lambda k: dunkl1d.mehta_constant(k), {"k": P(F)}, "Mehta constant by quadrature"),
    Target("dunkl1d.heat_kernel", "heat", dunkl1d.heat_kernel, {"t": P(F), "x": P(F), "y": P(F), "k": P(F)}, "Dunkl heat kernel"),
    Target("dunkl1d.asym_limit", "eval", lambda lam, x, k, t_seq: [float(v) for v in np.real(dunkl1d.asym_limit(lam, x, k, t_seq))],
           {"lam": P(F), "x": P(F), "k": P(F), "t_seq": P("floats")}, "oscillatory asymptotics of E"),
    # trig1d
    Target("trig1d.jacobi_phi", "eval", lambda lam, x, alpha, beta: trig1d.jacobi_phi(lam, x, alpha, beta),
           {"lam": P(C), "x": P(F), "alpha": P(F), "beta": P(F)}, "Jacobi function"),
    Target("trig1d.ho_F", "eval", lambda lam, x, k1, k2: trig1d.ho_F(lam, x, k1, k2),
           {"lam": P(C), "x": P(F), "k1": P(F), "k2": P(F, 0.0)}, "Heckman-Opdam function F"),
    Target("trig1d.opdam_G", "eval", lambda lam, x, k1, k2: trig1d.opdam_G(lam, x, k1, k2),
           {"lam": P(C), "x": P(F), "k1": P(F), "k2": P(F, 0.0)}, "Opdam function G"),
    Target("trig1d.c_and_plancherel", "eval",
           lambda lam, k1, k2: (lambda cd: {"c_re": complex(cd[0]).real, "c_im": complex(cd[0]).imag,
                                          "density_re": complex(cd[1]).real, "density_im": complex(cd[1]).imag})(trig1d.c_and_plancherel(lam, k1, k2)),
           {"lam": P(F), "k1": P(F), "k2": P(F, 0.0)}, "c-function and Plancherel density"),
    Target("trig1d.cherednik_transform_pair", "transform",
           lambda f, lam, k1, k2, direction, support, band: trig1d.cherednik_transform_pair(f, lam, k1, k2, direction, support, band),
           {"f": P("profile"), "lam": P(F), "k1": P(F), "k2": P(F, 0.0), "direction": P(S, "forward"),
            "support": P(F, 1.0), "band": P(F, 40.0)}, "Cherednik transform or its inverse"),
    Target("trig1d.mu_trig_density", "eval", trig1d.mu_trig_density,
           {"x": P(F), "y": P(F), "k1": P(F), "k2": P(F, 0.0)}, "trigonometric intertwining density"),
    Target("trig1d.nu_trig_density", "eval", lambda x, y, z, k1, k2: float(trig1d.nu_trig_density(x, y, z, k1, k2)),
           {"x": P(F), "y": P(F), "z": P(F), "k1": P(F), "k2": P(F, 0.0)}, "trigonometric product density"),
    Target("trig1d.rational_limit", "eval", lambda lam, x, k, eps_seq: [float(v) for v in trig1d.rational_limit(lam, x, k, eps_seq)],
           {"lam": P(F), "x": P(F), "k": P(F), "eps_seq": P("floats")}, "errors of the rational limit"),
    # geom
    Target("geom.euclid_phi", "eval", lambda lam, r, n: geom.euclid_phi(lam, r, n),
           {"lam": P(C), "r": P(F), "n": P(I)}, "Euclidean spherical function"),
    Target("geom.hankel_pair", "transform",
           lambda f, lam_or_r, n, direction, support, band: geom.hankel_pair(f, lam_or_r, n, direction, support, band),
           {"f": P("profile"), "lam_or_r": P(F), "n": P(I), "direction": P(S, "forward"), "support": P(F, 1.0), "band": P(F, 40.0)},
           "Hankel transform or its inverse"),
    Target("geom.sphere_phi", "eval", lambda ell, theta, n, branch: float(_scalar(geom.sphere_phi(ell, theta, n, branch))),
           {"ell": P(I), "theta": P(F), "n": P(I), "branch": P(S, "jacobi")}, "zonal spherical function on S^n"),
    Target("geom.sphere_expand", "transform", _sphere_expand, {"f": P("profile"), "n": P(I), "L": P(I)}, "zonal coefficients"),
    Target("geom.sphere_synth", "eval", lambda coeffs, theta, n: float(_scalar(geom.sphere_synth(coeffs, theta, n))),
           {"coeffs": P("floats"), "theta": P(F), "n": P(I)}, "zonal synthesis"),
    Target("geom.hyp_phi", "eval", lambda lam, r, n, branch: geom.hyp_phi(lam, r, n, branch),
           {"lam": P(C), "r": P(F), "n": P(I), "branch": P(S, "gauss2f1")}, "spherical function on H^n"),
    Target("geom.hyp_c_plancherel", "eval",
           lambda lam, n: (lambda cd: {"c_re": complex(cd[0]).real, "c_im": complex(cd[0]).imag,
                                          "density_re": complex(cd[1]).real, "density_im": complex(cd[1]).imag})(geom.hyp_c_plancherel(lam, n)),
           {"lam": P(F), "n": P(I)}, "c-function and Plancherel density on H^n"),
    Target("geom.hyp_abel", "transform", lambda f, r, n: float(_scalar(geom.hyp_abel(f, r, n))),
           {"f": P("profile"), "r": P(F), "n": P(I)}, "Abel transform on H^n"),
    Target("geom.hyp_abel_inverse", "transform", lambda g, r, n: float(_scalar(geom.hyp_abel_inverse(g, r, n))),
           {"g": P("profile"), "r": P(F), "n": P(I)}, "inverse Abel transform on H^n"),
    Target("geom.hyp_dual_abel", "transform", lambda g, r, n: float(_scalar(geom.hyp_dual_abel(g, r, n))),
           {"g": P("profile"), "r": P(F), "n": P(I)}, "dual Abel transform on H^n"),
    Target("geom.hyp_dual_abel_inverse", "transform", lambda f, r, n: float(_scalar(geom.hyp_dual_abel_inverse(f, r, n))),
           {"f": P("profile"), "r": P(F), "n": P(I)}, "inverse dual Abel transform on H^n"),
    Target("geom.hyp_heat", "heat", lambda t, r, n: float(_scalar(geom.hyp_heat(t, r, n))),
           {"t": P(F), "r": P(F), "n": P(I)}, "heat kernel on H^n"),
    Target("geom.hyp_schrodinger_bound", "heat",
           lambda t, r, n: (lambda ve: {"modulus": float(ve[0]), "envelope": float(ve[1])})(geom.hyp_schrodinger_bound(t, r, n)),
           {"t": P(F), "r": P(F), "n": P(I)}, "Schrodinger kernel modulus and envelope"),
    Target("geom.hyp_wave_radial", "wave", lambda f, g, t, n: geom.hyp_wave_radial(f, g, t, n),
           {"f": P("profile"), "g": P("profile"), "t": P(F), "n": P(I)}, "shifted wave solution at the origin"),
    Target("geom.model_convert", "eval", _model_convert,
           {"model": P(S), "coords": P("floats"), "target": P(S)}, "change of model of H^n"),
    # tree
    Target("tree.sphere_volume", "eval", tree.sphere_volume, {"q": P(I), "r": P(I)}, "number of vertices on a sphere"),
    Target("tree.phi", "eval", lambda lam, r, q: tree.tree_phi(lam, r, q), {"lam": P(C), "r": P(I), "q": P(I)},
           "spherical function on T_q"),
    Target("tree.c", "eval", lambda lam, q: tree.c_tree(lam, q), {"lam": P(C), "q": P(I)}, "c-function of T_q"),
    Target("tree.spherical_transform", "transform", lambda f, q, lam: tree.spherical_transform_tree(_radial(q, f), lam),
           {"f": P("fracs"), "q": P(I), "lam": P(C)}, "spherical transform of radial data"),
    Target("tree.inverse_spherical_transform", "transform", _tree_inverse, {"f": P("fracs"), "q": P(I), "r": P(I)},
           "inversion of the spherical transform of radial data"),
    Target("tree.abel", "transform", lambda f, q, h: tree.abel_tree(_radial(q, f), h), {"f": P("fracs"), "q": P(I), "h": P(I)},
           "Abel transform on T_q"),
    Target("tree.abel_inverse", "transform", lambda g, q, r: tree.abel_inverse_tree(_horo(g), r, q),
           {"g": P("fracs"), "q": P(I), "r": P(I)}, "inverse Abel transform on T_q"),
    Target("tree.dual_abel", "transform", lambda g, q, r: tree.dual_abel_tree(_horo(g), r, q),
           {"g": P("fracs"), "q": P(I), "r": P(I)}, "dual Abel transform on T_q"),
    Target("tree.dual_abel_inverse", "transform", lambda f, q, h: tree.dual_abel_inverse(_radial(q, f), h),
           {"f": P("fracs"), "q": P(I), "h": P(I)}, "inverse dual Abel transform on T_q"),
    Target("tree.heat_walk", "heat", lambda t, r, q: tree.heat_walk(t, r, q), {"t": P(I), "r": P(I), "q": P(I)},
           "simple random walk transition probability"),
    Target("tree.wave", "wave", _wave, {"f": P("fracs"), "g": P("fracs"), "q": P(I), "t": P(I)},
           "discrete shifted wave solution"),
    Target("tree.oracle", "eval", _oracle, {"depth": P(I), "q": P(I)}, "finite ball summary"),
]

TARGETS: Dict[str, Target] = {t.target_id: t for t in _TARGET_LIST}
assert len(TARGETS) == len(_TARGET_LIST), "duplicate target id"

ALIASES = {"λ": "lam", "θ": "theta", "ξ": "xi"}


def call_target(target_id: str, params: Dict[str, Any]):
    """Call a registered target with already-typed parameters."""
    return TARGETS[target_id].fn(**params)
