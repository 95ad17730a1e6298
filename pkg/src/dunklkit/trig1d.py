"""Trigonometric Dunkl analysis in dimension one.

The root system is ``{+-a, +-2a}`` with ``<a, x> = x``, multiplicities
``k1`` on ``+-a`` and ``k2`` on ``+-2a`` (either may vanish), and
``rho = k1/2 + k2``.  The reference weight is
``delta(x) = |2 sinh(x/2)|**(2 k1) |2 sinh x|**(2 k2)``.

Two independent evaluation routes exist for the hypergeometric functions:

* closed forms through Gauss's ``2F1`` (Jacobi functions), and
* the representing measure ``mu_x``: ``G_lam(x) = int e^(lam y) dmu_x(y)``,
  which stays stable for large imaginary ``lam`` and drives the transforms.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from . import dunkl1d
from .numerics import (
    KernelEval,
    NumericsError,
    PoleError,
    composite_nodes,
    gauss_2f1,
    gauss_jacobi,
    jacobi_rule_shifted,
    graded_breaks,
    loggamma_c,
)

__all__ = [
    "TrigMult1D",
    "DegenerateMultiplicityError",
    "InsufficientSupportError",
    "jacobi_phi",
    "ho_F",
    "opdam_G",
    "trig_weight",
    "c_function",
    "c_and_plancherel",
    "plancherel_forms",
    "harish_chandra_coeffs",
    "harish_chandra_F",
    "mu_trig_density",
    "mu_trig_nodes",
    "mu_trig_integrate",
    "opdam_G_vec",
    "nu_trig_density",
    "nu_trig_integrate",
    "nu_trig_mass",
    "cherednik_transform",
    "inverse_cherednik_transform",
    "cherednik_transform_pair",
    "calibrate_c_trig",
    "c_trig_closed",
    "cherednik_round_trip_error",
    "paley_wiener_profile",
    "rational_limit",
    "rational_limit_transform",
]


class DegenerateMultiplicityError(NumericsError):
    """``k1 = k2 = 0``: the object is a Dirac mass and has no density."""


class InsufficientSupportError(NumericsError):
    """A function is not supported inside the declared interval."""


@dataclass(frozen=True)
class TrigMult1D:
    """Multiplicities ``(k1, k2)`` of the rank-one root system ``BC1``."""

    k1: float
    k2: float = 0.0

    def __post_init__(self):
        for k in (self.k1, self.k2):
            if not (k >= 0 and math.isfinite(k)):
                raise ValueError("multiplicities must be finite and nonnegative")

    @property
    def rho(self) -> float:
        return self.k1 / 2 + self.k2

    @property
    def is_zero(self) -> bool:
        return self.k1 == 0 and self.k2 == 0


def _m(k1, k2) -> TrigMult1D:
    return TrigMult1D(float(k1), float(k2))


def trig_weight(x, k1: float, k2: float):
    """``|2 sinh(x/2)|^(2k1) |2 sinh x|^(2k2)`` (vectorized)."""
    x = np.asarray(x, dtype=float)
    return np.abs(2 * np.sinh(x / 2)) ** (2 * k1) * np.abs(2 * np.sinh(x)) ** (2 * k2)


# ---------------------------------------------------------------------------
# Jacobi, Heckman-Opdam and Opdam functions
# ---------------------------------------------------------------------------


def jacobi_phi(lam, t: float, alpha: float, beta: float, method: str = "gauss2f1") -> KernelEval:
    """Jacobi function ``phi_lam^(alpha,beta)(t)``.

    ``2F1((rho+i lam)/2, (rho-i lam)/2; alpha+1; -sinh(t)^2)`` with
    ``rho = alpha + beta + 1``.  With ``method="integral"`` (only for
    ``beta = -1/2``, the hyperbolic space case) the Laplace type integral
    ``Gamma(alpha+1)/(sqrt(pi) Gamma(alpha+1/2))
    int_0^pi (cosh t - sinh t cos th)^(i lam - rho) sin(th)^(2 alpha) dth``
    is used instead.

    Raises
    ------
    PoleError
        If ``alpha + 1`` is a nonpositive integer.
    """
    if not alpha > -1:
        raise PoleError("Jacobi functions need alpha > -1")
    rho = alpha + beta + 1
    if t == 0:
        return KernelEval(1.0, 0.0, 1, "phi(0) = 1")
    if method == "gauss2f1":
        a = (rho + 1j * lam) / 2
        b = (rho - 1j * lam) / 2
        res = gauss_2f1(_simplify(a), _simplify(b), alpha + 1, -math.sinh(t) ** 2)
        val = res.value
        if _is_real_pair(a, b) and isinstance(val, complex):
            val = val.real
        return KernelEval(val, res.err_est, res.terms_used, "jacobi via 2F1: " + (res.branch_note or ""))
    if method == "integral":
        if abs(beta + 0.5) > 1e-14:
            raise ValueError("the integral representation is implemented for beta = -1/2")
        # with cosh t - sinh t cos(th) = exp(t x) the integral becomes
        # (t/sinh t)**(2 alpha) int (1-x^2)**(alpha-1/2) S(x) exp(i lam t x) dx
        # where S(x) = (e1 e2)**(alpha-1/2) exp((1-rho) t x) stays bounded
        order = 40 + int(math.ceil(0.6 * abs(lam) * abs(t)))
        x, w = gauss_jacobi(order, alpha - 0.5, alpha - 0.5)
        tt = abs(t)
        z1 = tt * (1 + x)
        z2 = tt * (1 - x)
        log_e1 = np.log(np.where(z1 > 0, np.expm1(z1) / np.where(z1 > 0, z1, 1.0), 1.0))
        log_e2 = np.log(np.where(z2 > 0, -np.expm1(-z2) / np.where(z2 > 0, z2, 1.0), 1.0))
        smooth = np.exp((alpha - 0.5) * (log_e1 + log_e2) + (1 - rho) * tt * x)
        vals = smooth * np.exp(1j * lam * tt * x)
        pref = math.exp(2 * alpha * math.log(tt / math.sinh(tt)))
        const = math.exp(loggamma_c(alpha + 1) - loggamma_c(alpha + 0.5)) / math.sqrt(math.pi)
        val = const * pref * complex(np.sum(w * vals))
        if _is_real_pair((rho + 1j * lam) / 2, (rho - 1j * lam) / 2):
            val = val.real
        return KernelEval(val, 1e-13, order, "laplace integral")
    raise ValueError(f"unknown method {method!r}")


def _simplify(z):
    if isinstance(z, complex) and z.imag == 0:
        return z.real
    return z


def _is_real_pair(a, b) -> bool:
    """True when 2F1(a, b; c; z) is real for real ``c`` and ``z``: both real or ``b = conj(a)``."""
    a, b = complex(a), complex(b)
    if a.imag == 0 and b.imag == 0:
        return True
    return abs(a - b.conjugate()) <= 1e-15 * max(1.0, abs(a))


def ho_F(lam, x: float, k1: float, k2: float = 0.0, method: str = "hypergeometric") -> KernelEval:
    """Heckman-Opdam function ``F_lam(x) = 2F1(rho+lam, rho-lam; k1+k2+1/2; -sinh(x/2)^2)``."""
    m = _m(k1, k2)
    if method == "measure":
        return KernelEval(_sym_measure(lam, x, m), 1e-12, 0, "measure representation")
    if x == 0:
        return KernelEval(1.0, 0.0, 1, "F(0) = 1")
    res = gauss_2f1(_simplify(m.rho + lam), _simplify(m.rho - lam), m.k1 + m.k2 + 0.5, -math.sinh(x / 2) ** 2)
    val = res.value
    if _is_real_pair(m.rho + lam, m.rho - lam) and isinstance(val, complex):
        val = val.real
    return KernelEval(val, res.err_est, res.terms_used, "2F1")


def opdam_G(lam, x: float, k1: float, k2: float = 0.0, method: str = "hypergeometric") -> KernelEval:
    """Opdam function ``G_lam(x)``.

    ``F_lam(x) + (rho + lam)/(2k1 + 2k2 + 1) sinh(x)
    2F1(rho+1+lam, rho+1-lam; k1+k2+3/2; -sinh(x/2)^2)``; with
    ``method="measure"`` it is computed as ``int e^(lam y) dmu_x(y)``.
    """
    m = _m(k1, k2)
    if method == "measure":
        val = mu_trig_integrate(lambda y: np.exp(lam * y), x, m.k1, m.k2)
        return KernelEval(_realify(val, lam), 1e-12, 0, "measure representation")
    if x == 0:
        return KernelEval(1.0, 0.0, 1, "G(0) = 1")
    F = ho_F(lam, x, m.k1, m.k2)
    a, b = m.rho + 1 + lam, m.rho + 1 - lam
    second = gauss_2f1(_simplify(a), _simplify(b), m.k1 + m.k2 + 1.5, -math.sinh(x / 2) ** 2)
    val = F.value + (m.rho + lam) / (2 * m.k1 + 2 * m.k2 + 1) * math.sinh(x) * second.value
    if not isinstance(lam, complex) and isinstance(val, complex):
        val = val.real
    return KernelEval(val, F.err_est + abs(second.err_est * math.sinh(x)), 0, "2F1 combination")


def _realify(val, lam):
    if not isinstance(lam, complex) and isinstance(val, complex):
        return val.real
    return val


def _sym_measure(lam, x, m: TrigMult1D):
    g = lambda y: np.cosh(lam * y)
    if m.is_zero or x == 0:
        return _realify(complex(np.cosh(lam * x)), lam)
    val = 0.5 * (mu_trig_integrate(g, x, m.k1, m.k2) + mu_trig_integrate(g, -x, m.k1, m.k2))
    return _realify(val, lam)


# ---------------------------------------------------------------------------
# c-function and Plancherel density
# ---------------------------------------------------------------------------


def _c0(m: TrigMult1D) -> float:
    s = m.k1 + m.k2
    if s == 0:
        return 0.5
    return math.exp(loggamma_c(2 * s) - loggamma_c(s))


def c_function(lam, k1: float, k2: float = 0.0) -> complex:
    """``c(lam) = c0 Gamma(2 lam) Gamma(lam + k1/2) / (Gamma(2 lam + k1) Gamma(lam + rho))``.

    Normalized by ``c(rho) = 1``; for ``k1 = k2 = 0`` it is the constant 1/2.
    """
    m = _m(k1, k2)
    if m.is_zero:
        return 0.5
    try:
        z = complex(lam)  # the complex branch keeps the sign of Gamma on the negative axis
        lg = loggamma_c(2 * z) + loggamma_c(z + m.k1 / 2) - loggamma_c(2 * z + m.k1) - loggamma_c(z + m.rho)
    except (ValueError, ZeroDivisionError) as exc:
        raise PoleError(f"c-function pole at lam = {lam}") from exc
    val = _c0(m) * cmath.exp(lg)
    return val.real if not isinstance(lam, complex) else val


def _gamma_quot(num, den) -> complex:
    return cmath.exp(sum(loggamma_c(complex(a)) for a in num) - sum(loggamma_c(complex(b)) for b in den))


def plancherel_forms(lam: float, k1: float, k2: float = 0.0) -> tuple:
    """Two closed forms of the asymmetric density ``delta~(lam)``.

    First: ``c0^2 / |c(i lam)|^2 * (rho - i lam) / (-i lam)``, product over
    the non-multipliable root ``2a``.  Second: product of Gamma quotients
    over both positive roots.
    """
    m = _m(k1, k2)
    if m.is_zero:
        return 1.0 + 0j, 1.0 + 0j
    if lam == 0:
        return 0j, 0j
    il = 1j * lam
    c = c_function(il, m.k1, m.k2)
    first = _c0(m) ** 2 / abs(c) ** 2 * (m.rho - il) / (-il)
    second = 1.0 + 0j
    # root a: <lam, a^vee> = 2 lam, k_{a/2} = 0
    second *= _gamma_quot([2 * il + m.k1, -2 * il + m.k1 + 1], [2 * il, -2 * il + 1])
    # root 2a: <lam, (2a)^vee> = lam, k_{a} = k1
    h = m.k1 / 2
    second *= _gamma_quot([il + h + m.k2, -il + h + m.k2 + 1], [il + h, -il + h + 1])
    return first, second


def c_and_plancherel(lam, k1: float, k2: float = 0.0) -> tuple:
    """``(c(lam), delta~(lam))``; the density uses the Gamma quotient form.

    The density is only evaluated for real ``lam``; otherwise ``None``.
    """
    c = c_function(lam, k1, k2)
    dens = None
    if not isinstance(lam, complex) or lam.imag == 0:
        dens = plancherel_forms(float(np.real(lam)), k1, k2)[1]
    return c, dens


def _sym_density(lam: np.ndarray, m: TrigMult1D) -> np.ndarray:
    """``c0^2 / |c(i lam)|^2`` on an array."""
    out = np.empty(lam.shape)
    for i, l in enumerate(lam.flat):
        if m.is_zero:
            out.flat[i] = 1.0
        elif l == 0:
            out.flat[i] = 0.0
        else:
            out.flat[i] = _c0(m) ** 2 / abs(c_function(1j * l, m.k1, m.k2)) ** 2
    return out


def _asym_density(lam: np.ndarray, m: TrigMult1D) -> np.ndarray:
    return np.array([plancherel_forms(float(l), m.k1, m.k2)[1] for l in lam.flat]).reshape(lam.shape)


# ---------------------------------------------------------------------------
# Harish-Chandra expansion
# ---------------------------------------------------------------------------


def harish_chandra_coeffs(lam, k1: float, k2: float = 0.0, terms: int = 40) -> list:
    """Coefficients ``Gamma_n(lam)`` of ``Phi_lam = sum Gamma_n e^((lam-rho-n)x)``.

    Matching exponentials in the radial eigen-equation gives
    ``n (n - 2 lam) Gamma_n = -sum_{l<n} Gamma_l (lam-rho-l) (2 k1 + 4 k2 [n-l even])``.
    """
    m = _m(k1, k2)
    coeffs = [1.0 + 0j]
    for n in range(1, terms + 1):
        acc = 0j
        for l in range(n):
            acc += coeffs[l] * (lam - m.rho - l) * (2 * m.k1 + (4 * m.k2 if (n - l) % 2 == 0 else 0.0))
        den = n * (n - 2 * lam)
        if den == 0:
            raise PoleError(f"Harish-Chandra coefficient pole at lam = {lam}")
        coeffs.append(-acc / den)
    return coeffs


def harish_chandra_F(lam, x: float, k1: float, k2: float = 0.0, terms: int = 40) -> complex:
    """``c(lam) Phi_lam(x) + c(-lam) Phi_-lam(x)`` for ``x > 0``."""
    if not x > 0:
        raise ValueError("the expansion converges for x > 0")
    m = _m(k1, k2)
    total = 0j
    for sgn in (1, -1):
        l = sgn * lam
        coeffs = harish_chandra_coeffs(l, m.k1, m.k2, terms)
        phi = sum(g * cmath.exp((l - m.rho - n) * x) for n, g in enumerate(coeffs))
        total += c_function(l, m.k1, m.k2) * phi
    return total


# ---------------------------------------------------------------------------
# Representing measure mu_x
# ---------------------------------------------------------------------------


def _sinhc(t):
    t = np.asarray(t, dtype=float)
    out = np.ones_like(t)
    nz = np.abs(t) > 1e-8
    out[nz] = np.sinh(t[nz]) / t[nz]
    out[~nz] = 1 + t[~nz] ** 2 / 6
    return out


def _mu_exponent(m: TrigMult1D) -> float:
    if m.k1 > 0 and m.k2 > 0:
        return m.k1 + m.k2
    return m.k1 if m.k2 == 0 else m.k2


def _limit_reduced(x, u, k, scale):
    """``mu(x, |x| u) / (1-u^2)^(k-1)`` for the one-parameter formula.

    ``2^(k-1) Gamma(k+1/2)/(sqrt(pi) Gamma(k)) |sinh X|^(-2k)
    (cosh X - cosh Y)^(k-1) sign(X) (e^X - e^-Y)`` with ``X = x/scale``,
    ``Y = y/scale``; the halving for ``scale = 2`` is applied by the caller.
    """
    X = x / scale
    aX = abs(X)
    K = 2 ** (k - 1) * math.exp(loggamma_c(k + 0.5) - loggamma_c(k)) / math.sqrt(math.pi)
    # cosh X - cosh Y = 2 sinh(|X|(1+u)/2) sinh(|X|(1-u)/2)
    ratio = 2 * (aX / 2) ** 2 * _sinhc(aX * (1 + u) / 2) * _sinhc(aX * (1 - u) / 2)
    Y = aX * u
    sgn = 1.0 if X > 0 else -1.0
    return K * abs(math.sinh(X)) ** (-2 * k) * ratio ** (k - 1) * sgn * (math.exp(X) - np.exp(-Y))


def _generic_reduced(x, u, m: TrigMult1D, inner_order: int = 40):
    """``mu(x, |x| u) / (1-u^2)^(k1+k2-1)`` in the generic case.

    The inner integral is taken in ``w = cosh(z/2) - cosh(y/2)``, which turns
    it into a Gauss-Jacobi integral on ``[0, W]`` with
    ``W = cosh(x/2) - cosh(y/2)``.
    """
    k1, k2 = m.k1, m.k2
    kap = k1 + k2
    ax = abs(x)
    y = ax * u
    K = 2 ** (kap - 2) * math.exp(loggamma_c(kap + 0.5) - loggamma_c(k1) - loggamma_c(k2)) / math.sqrt(math.pi)
    Cx = math.cosh(x / 2)
    # W / (1 - u^2) computed without cancellation
    W_over = 2 * (ax / 4) ** 2 * _sinhc(ax * (1 + u) / 4) * _sinhc(ax * (1 - u) / 4)
    W = W_over * (1 - u) * (1 + u)
    v, om = jacobi_rule_shifted(inner_order, k2, k1)
    cz = np.cosh(y / 2)[:, None] + np.multiply.outer(W, (1 + v) / 2)
    sgn = 1.0 if x > 0 else -1.0
    integrand = (2 * (Cx + cz)) ** (k2 - 1) * sgn * 2 * (math.exp(x / 2) * Cx - np.exp(-y / 2)[:, None] * cz)
    J = integrand @ om
    # I = 2 (W/2)^(kap-1) J and W^(kap-1) = W_over^(kap-1) (1-u^2)^(kap-1)
    return K * abs(math.sinh(x / 2)) ** (-2 * k1) * abs(math.sinh(x)) ** (-2 * k2) * 2 * (W_over / 2) ** (kap - 1) * J


def _mu_reduced(x, u, m: TrigMult1D):
    u = np.asarray(u, dtype=float)
    if m.k1 > 0 and m.k2 > 0:
        return _generic_reduced(x, u, m)
    if m.k1 == 0:
        return _limit_reduced(x, u, m.k2, 1.0)
    return 0.5 * _limit_reduced(x, u, m.k1, 2.0)


def mu_trig_density(x: float, y: float, k1: float, k2: float = 0.0) -> float:
    """Density of ``mu_x`` against ``dy``, zero unless ``|y| < |x|``.

    Raises
    ------
    DegenerateMultiplicityError
        For ``k1 = k2 = 0`` (``mu_x`` is the Dirac mass at ``x``).
    """
    m = _m(k1, k2)
    if m.is_zero:
        raise DegenerateMultiplicityError("mu_x is a Dirac mass when k1 = k2 = 0")
    if x == 0:
        raise ValueError("mu_0 is the Dirac mass at 0")
    if not abs(y) < abs(x):
        return 0.0
    u = y / abs(x)
    kap = _mu_exponent(m)
    return float(_mu_reduced(x, np.array([u]), m)[0] * (1 - u * u) ** (kap - 1))


def mu_trig_nodes(x: float, k1: float, k2: float = 0.0, order: int = 60) -> tuple:
    """Nodes ``y_j`` and weights ``w_j`` with ``int g dmu_x ~ sum w_j g(y_j)``."""
    m = _m(k1, k2)
    if m.is_zero or x == 0:
        return np.array([float(x)]), np.array([1.0])
    kap = _mu_exponent(m)
    u, w = jacobi_rule_shifted(order, kap, kap)
    return abs(x) * u, abs(x) * w * _mu_reduced(x, u, m)


def mu_trig_integrate(g: Callable, x: float, k1: float, k2: float = 0.0, order: int = 60):
    """``<mu_x, g>`` for a vectorized ``g``."""
    y, w = mu_trig_nodes(x, k1, k2, order)
    return np.sum(w * g(y))


def opdam_G_vec(zeta: np.ndarray, xs: np.ndarray, k1: float, k2: float = 0.0, order: Optional[int] = None) -> np.ndarray:
    """``G_zeta(x)`` on the grid ``zeta x xs`` through the representing measure."""
    zeta = np.atleast_1d(np.asarray(zeta))
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    if order is None:
        order = 40 + int(math.ceil(0.6 * float(np.max(np.abs(zeta))) * float(np.max(np.abs(xs)))))
    out = np.empty((zeta.size, xs.size), dtype=complex)
    for j, x in enumerate(xs):
        y, w = mu_trig_nodes(x, k1, k2, order)
        out[:, j] = np.exp(np.multiply.outer(zeta, y)) @ w
    return out


# ---------------------------------------------------------------------------
# Product formula measure nu_{x,y}
# ---------------------------------------------------------------------------


def _nu_limit(x, y, z, k, scale):
    """One-parameter density (the ``k1 = 0`` formula) in the variables ``/scale``."""
    X, Y, Z = x / scale, y / scale, z / scale
    K = 2 ** (2 * k - 1) * math.exp(loggamma_c(k + 0.5) - loggamma_c(k)) / math.sqrt(math.pi)
    aX, aY, aZ = abs(X), abs(Y), np.abs(Z)
    A, B = abs(aX - aY), aX + aY
    prod = np.sinh((B + aZ) / 2) * np.sinh((aZ + A) / 2) * np.sinh((aZ - A) / 2) * np.sinh((B - aZ) / 2)
    prod = np.clip(prod, 0.0, None)
    sgn = np.sign(X * Y * Z)
    return K * sgn * abs(math.sinh(X) * math.sinh(Y)) ** (-2 * k) * prod**k / np.sinh((X + Y - Z) / 2) * np.exp((X + Y - Z) / 2)


def _nu_generic(x, y, z, m: TrigMult1D, order: int = 40):
    k1, k2 = m.k1, m.k2
    K = 2 ** (k1 - 2) * math.exp(loggamma_c(k1 + k2 + 0.5) - loggamma_c(k1) - loggamma_c(k2)) / math.sqrt(math.pi)
    z = np.atleast_1d(np.asarray(z, dtype=float))
    Cx, Cy = math.cosh(x / 2), math.cosh(y / 2)
    Cz = np.cosh(z / 2)
    P = Cx * Cy * Cz
    Q = (1 + math.cosh(x) + math.cosh(y) + np.cosh(z)) / 4
    t0 = Q / P
    out = np.zeros_like(z)
    for i in range(z.size):
        if t0[i] >= 1:
            continue
        if t0[i] > -1:
            v, om = jacobi_rule_shifted(order, k2, k1)
            half = (1 - t0[i]) / 2
            s = t0[i] + half * (1 + v)
            # (1-s)^(k2-1) (s-t0)^(k1-1) ds = half^(k1+k2-1) (1-v)^(k2-1) (1+v)^(k1-1) dv
            wts = om * half ** (k1 + k2 - 1) * (1 + s) ** (k2 - 1)
        else:
            v, om = jacobi_rule_shifted(order, k2, k2)
            s = v
            wts = om * (s - t0[i]) ** (k1 - 1)
        L = (
            math.sinh((x + y + z[i]) / 2)
            - 2 * Cx * Cy * math.sinh(z[i] / 2)
            + (k1 + 2 * k2) / k2 * P[i] * (1 - s * s)
            + (math.sinh(z[i]) - math.sinh(x) - math.sinh(y)) / 2 * s
        )
        inner = P[i] ** (k1 - 1) * np.sum(wts * L)
        out[i] = (
            K
            * np.sign(x * y * z[i])
            * abs(math.sinh(x / 2) * math.sinh(y / 2)) ** (-2 * k1 - 2 * k2)
            * Cz[i] ** (2 * k2)
            * inner
        )
    return out


def nu_trig_density(x: float, y: float, z, k1: float, k2: float = 0.0):
    """Density of ``nu_{x,y}`` against ``dz`` (vectorized in ``z``)."""
    m = _m(k1, k2)
    if m.is_zero:
        raise DegenerateMultiplicityError("nu_{x,y} is a Dirac mass when k1 = k2 = 0")
    z = np.atleast_1d(np.asarray(z, dtype=float))
    out = np.zeros_like(z)
    if x == 0 or y == 0:
        return out if out.size > 1 else float(out[0])
    A, B = abs(abs(x) - abs(y)), abs(x) + abs(y)
    inside = (np.abs(z) > A) & (np.abs(z) < B) & (z != 0)
    if np.any(inside):
        zi = z[inside]
        if m.k1 > 0 and m.k2 > 0:
            out[inside] = _nu_generic(x, y, zi, m)
        elif m.k1 == 0:
            out[inside] = _nu_limit(x, y, zi, m.k2, 1.0)
        else:
            out[inside] = 0.5 * _nu_limit(x, y, zi, m.k1, 2.0)
    return out if out.size > 1 else float(out[0])


def _nu_nodes(x, y, m: TrigMult1D, order: int):
    A, B = abs(abs(x) - abs(y)), abs(x) + abs(y)
    kap = _mu_exponent(m)
    zs, ws = [], []
    if A > 0:
        u, w = gauss_jacobi(order, kap - 1.0, kap - 1.0)
        half = (B - A) / 2
        zabs = (A + B) / 2 + half * u
        for sgn in (1.0, -1.0):
            z = sgn * zabs
            dens = nu_trig_density(x, y, z, m.k1, m.k2)
            zs.append(z)
            ws.append(w * half * np.asarray(dens) / ((1 - u) * (1 + u)) ** (kap - 1))
    else:
        # |x| = |y|: split (0, B) and grade towards the origin
        br = graded_breaks(0.0, B, levels=20, panels=4)
        # finish towards B with a Jacobi rule on the last panel
        zz, ww = composite_nodes(br[:-1], 20)
        lo = br[-2]
        u, w = gauss_jacobi(order, kap - 1.0, 0.0)
        half = (B - lo) / 2
        zj = lo + half * (1 + u)
        for sgn in (1.0, -1.0):
            d1 = np.asarray(nu_trig_density(x, y, sgn * zz, m.k1, m.k2))
            d2 = np.asarray(nu_trig_density(x, y, sgn * zj, m.k1, m.k2))
            zs += [sgn * zz, sgn * zj]
            ws += [ww * d1, w * half * d2 / (1 - u) ** (kap - 1)]
    return np.concatenate(zs), np.concatenate(ws)


def nu_trig_integrate(g: Callable, x: float, y: float, k1: float, k2: float = 0.0, order: int = 60, symmetric: bool = False):
    """``<nu_{x,y}, g>``, or the symmetrized pairing with ``symmetric=True``.

    The symmetrized measure averages ``nu_{+-x, +-y}`` over all four sign
    pairs; this is the average that carries ``F_lam(x) F_lam(y)``, since
    ``F_lam(x) F_lam(y)`` expands into the four products ``G_lam(+-x) G_lam(+-y)``.
    """
    m = _m(k1, k2)
    if symmetric:
        return 0.25 * sum(
            nu_trig_integrate(g, s * x, t * y, k1, k2, order) for s in (1.0, -1.0) for t in (1.0, -1.0)
        )
    if x == 0:
        return g(np.array([float(y)]))[0]
    if y == 0 or m.is_zero:
        return g(np.array([float(x + y if m.is_zero else x)]))[0]
    z, w = _nu_nodes(x, y, m, order)
    return np.sum(w * g(z))


def nu_trig_mass(x: float, y: float, k1: float, k2: float = 0.0, order: int = 60) -> float:
    return float(np.real(nu_trig_integrate(lambda z: np.ones_like(z), x, y, k1, k2, order)))


# ---------------------------------------------------------------------------
# Cherednik transform
# ---------------------------------------------------------------------------


def _space_nodes(support: float, m: TrigMult1D, panels: int = 16):
    levels = 0 if float(2 * (m.k1 + m.k2)).is_integer() else 14
    br = graded_breaks(0.0, support, levels=levels, panels=panels)
    x, w = composite_nodes(br, 20)
    return np.concatenate([-x[::-1], x]), np.concatenate([w[::-1], w])


def _spectral_nodes(band: float, panels: int = 40):
    return composite_nodes(list(np.linspace(-band, band, panels + 1)), 20)


def cherednik_transform(
    f: Callable,
    lam,
    k1: float,
    k2: float = 0.0,
    support: float = 1.0,
    symmetric: bool = False,
    decay_tol: float = 1e-12,
) -> np.ndarray:
    """``Hf(lam) = int delta(x) f(x) G_{i lam}(-x) dx`` (``F`` when symmetric).

    ``lam`` may be complex (Paley-Wiener checks).

    Raises
    ------
    InsufficientSupportError
        If ``f`` does not vanish at the ends of ``[-support, support]``.
    """
    m = _m(k1, k2)
    x, w = _space_nodes(support, m)
    fx = np.asarray(f(x), dtype=complex)
    edge = np.abs(np.asarray(f(np.array([-support, support])), dtype=complex))
    if float(np.max(edge)) > decay_tol * max(float(np.max(np.abs(fx))), 1e-300):
        raise InsufficientSupportError("function does not vanish at the edge of the declared support")
    lam = np.atleast_1d(np.asarray(lam))
    G = opdam_G_vec(1j * lam, -x, m.k1, m.k2)
    if symmetric:
        G = 0.5 * (G + opdam_G_vec(1j * lam, x, m.k1, m.k2))
    return G @ (w * trig_weight(x, m.k1, m.k2) * fx)


@lru_cache(maxsize=64)
def _calibrated(k1: float, k2: float) -> float:
    return calibrate_c_trig(k1, k2)


def c_trig_closed(k1: float, k2: float = 0.0) -> float:
    """``sqrt(8 pi) c0`` with ``c0 = Gamma(2k1+2k2)/Gamma(k1+k2)`` (``1/2`` at ``k = 0``).

    Derived from the Jacobi inversion formula through ``t = x/2``.
    """
    return math.sqrt(8 * math.pi) * _c0(_m(k1, k2))


def _reference_bump(x):
    x = np.asarray(x, dtype=float)
    return np.where(np.abs(x) < 1, (1 - np.minimum(x * x, 1.0)) ** 8, 0.0)


def calibrate_c_trig(k1: float, k2: float = 0.0, band: float = 60.0) -> float:
    """Fit ``c_trig`` so that the inversion reproduces a reference bump.

    The bump ``(1 - x^2)^8`` is transformed and inverted with ``c_trig = 1``;
    the constant is the square root of the least squares ratio on ``|x| <= 0.8``.
    """
    xs = np.linspace(-0.8, 0.8, 17)
    raw = np.real(_raw_inverse(_reference_bump, xs, _m(k1, k2), 1.0, band, False))
    f = _reference_bump(xs)
    return math.sqrt(float(raw @ f) / float(f @ f))


def _raw_inverse(f, xs, m: TrigMult1D, support, band, symmetric):
    lam, wl = _spectral_nodes(band)
    F = cherednik_transform(f, lam, m.k1, m.k2, support, symmetric)
    G = opdam_G_vec(1j * lam, xs, m.k1, m.k2).T
    if symmetric:
        G = 0.5 * (G + opdam_G_vec(1j * lam, -np.asarray(xs), m.k1, m.k2).T)
        dens = _sym_density(lam, m)
    else:
        dens = _asym_density(lam, m)
    return G @ (wl * dens * F)


def inverse_cherednik_transform(
    F: Callable,
    xs,
    k1: float,
    k2: float = 0.0,
    band: float = 40.0,
    symmetric: bool = False,
    c_trig: Optional[float] = None,
) -> np.ndarray:
    """``c_trig^-2 int delta~(lam) F(lam) G_{i lam}(x) dlam``.

    The symmetric branch uses ``c0^2 / |c(i lam)|^2`` and ``F_{i lam}``.
    ``c_trig`` defaults to the calibrated constant.
    """
    m = _m(k1, k2)
    if c_trig is None:
        c_trig = _calibrated(m.k1, m.k2)
    lam, wl = _spectral_nodes(band)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    G = opdam_G_vec(1j * lam, xs, m.k1, m.k2).T
    if symmetric:
        G = 0.5 * (G + opdam_G_vec(1j * lam, -xs, m.k1, m.k2).T)
        dens = _sym_density(lam, m)
    else:
        dens = _asym_density(lam, m)
    return G @ (wl * dens * np.asarray(F(lam), dtype=complex)) / c_trig**2


def cherednik_transform_pair(
    f: Callable,
    lam,
    k1: float,
    k2: float = 0.0,
    direction: str = "forward",
    support: float = 1.0,
    band: float = 40.0,
    symmetric: bool = False,
) -> KernelEval:
    """Cherednik transform or its inverse at one point (see the array versions)."""
    if direction == "forward":
        val = cherednik_transform(f, [lam], k1, k2, support, symmetric)[0]
        return KernelEval(complex(val), 1e-10, 0, "forward")
    if direction == "inverse":
        val = inverse_cherednik_transform(f, [lam], k1, k2, band, symmetric)[0]
        return KernelEval(complex(val), 1e-7, 0, "inverse")
    raise ValueError("direction must be 'forward' or 'inverse'")


def cherednik_round_trip_error(
    f: Callable,
    xs,
    k1: float,
    k2: float = 0.0,
    support: float = 1.0,
    band: float = 40.0,
    symmetric: bool = False,
    c_trig: Optional[float] = None,
) -> float:
    """``max |H^-1 H f - f|`` over ``xs``."""
    m = _m(k1, k2)
    if c_trig is None:
        c_trig = _calibrated(m.k1, m.k2)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    back = _raw_inverse(f, xs, m, support, band, symmetric) / c_trig**2
    return float(np.max(np.abs(back - f(xs))))


def paley_wiener_profile(
    f: Callable, k1: float, k2: float, support: float, gauge: float, mus, lams, N: int = 0
) -> np.ndarray:
    """``(1+|lam|)^N e^(-chi(mu)) |Hf(lam + i mu)|`` on the grid ``mus x lams``.

    ``chi(mu) = gauge |mu|`` is the gauge of the interval ``[-gauge, gauge]``
    and ``f`` is integrated over ``[-support, support]``.  The profile stays
    bounded exactly when ``f`` lives inside the gauge interval.
    """
    mus = np.asarray(mus, dtype=float)
    lams = np.asarray(lams, dtype=float)
    zeta = (lams[None, :] + 1j * mus[:, None]).ravel()
    h = cherednik_transform(f, zeta, k1, k2, support=support).reshape(mus.size, lams.size)
    return (1 + np.abs(lams[None, :])) ** N * np.exp(-np.abs(mus[:, None]) * gauge) * np.abs(h)


# ---------------------------------------------------------------------------
# Rational limit
# ---------------------------------------------------------------------------


def rational_limit(lam: float, x: float, k: float, eps_seq: Sequence[float]) -> np.ndarray:
    """``|G_{lam/eps}(eps x) - E_lam(x)|`` along ``eps_seq``.

    The trigonometric data are ``(k1, k2) = (k, 0)``: the reduced system
    ``{+-a}`` whose rational Dunkl operator is ``f' + k (f(x) - f(-x))/x``.
    """
    E = dunkl1d.kernel_E(lam, x, k).value
    return np.array([abs(opdam_G(lam / e, e * x, k, 0.0).value - E) for e in eps_seq])


def rational_limit_transform(f: Callable, lam, k: float, eps: float, support: float = 1.0) -> np.ndarray:
    """``eps^(-1-2k) H_trig[f(./eps)](lam/eps)`` with ``(k1, k2) = (k, 0)``."""
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    g = lambda x: f(np.asarray(x) / eps)
    return eps ** (-1 - 2 * k) * cherednik_transform(g, lam / eps, k, 0.0, support=support * eps)
