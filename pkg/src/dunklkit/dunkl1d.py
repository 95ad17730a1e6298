"""Rational Dunkl analysis on the line and on finite products of lines.

Everything here is for the reflection group ``{1, -1}`` acting on ``R``
with multiplicity ``k >= 0``.  The weight is ``|x|**(2k)``, the constant
``gamma`` equals ``k`` and the Mehta constant is ``c = 2**(k+1/2) Gamma(k+1/2)``.

The Dunkl kernel ``E_lam(x) = E(lam * x)`` is available through three
independent evaluations:

``"bessel"``
    ``j_{k-1/2}(s) + s/(2k+1) j_{k+1/2}(s)`` with normalized Bessel series.
``"confluent"``
    ``exp(s) 1F1(k; 2k+1; -2s)``.
``"integral"``
    Gauss-Jacobi quadrature of the intertwining representation
    ``C_k * int_{-1}^{1} exp(s u) (1-u)**(k-1) (1+u)**k du``.

The product case multiplies one-dimensional objects factor by factor.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .numerics import (
    DEFAULT_TOL,
    KernelEval,
    NumericsError,
    ToleranceProfile,
    _hyper_combo_exact,
    bessel_j_mod,
    composite_nodes,
    gamma_c,
    gauss_laguerre,
    jacobi_probability_rule,
    jacobi_rule_shifted,
    graded_breaks,
    loggamma_c,
    pfq_series,
    quad,
)

__all__ = [
    "Mult1D",
    "BranchDisagreementError",
    "InsufficientDecayError",
    "kernel_E",
    "kernel_E_branches",
    "kernel_E_vec",
    "kernel_E_scaled",
    "kernel_E_dx",
    "intertwiner_const",
    "mu_density",
    "mu_integrate",
    "nu_density",
    "nu_integrate",
    "nu_mass",
    "nu_total_variation",
    "nu_bound",
    "translate_radial",
    "translate_spectral",
    "dunkl_transform",
    "inverse_dunkl_transform",
    "transform_pair",
    "round_trip_error",
    "mehta_constant",
    "mehta_closed_form",
    "heat_kernel",
    "heat_upper_bound",
    "heat_envelope",
    "heat_sandwich_constants",
    "dunkl_laplacian",
    "asym_limit",
    "asym_limit_value",
    "asym_opposite",
    "asym_opposite_value",
    "product_kernel_E",
    "product_heat_kernel",
    "product_mehta_constant",
]


class BranchDisagreementError(NumericsError):
    """Two independent kernel evaluations disagree beyond tolerance."""


class InsufficientDecayError(NumericsError):
    """A sampled function does not decay inside its declared support."""


@dataclass(frozen=True)
class Mult1D:
    """Multiplicity of the rank-one rational root system."""

    k: float

    def __post_init__(self):
        if not (self.k >= 0 and math.isfinite(self.k)):
            raise ValueError(f"multiplicity must be a finite nonnegative number, got {self.k}")

    @property
    def gamma(self) -> float:
        return self.k

    @property
    def c(self) -> float:
        return mehta_closed_form(self.k)


def _check_k(k: float) -> float:
    return Mult1D(float(k)).k


def intertwiner_const(k: float) -> float:
    """``Gamma(k+1/2) / (sqrt(pi) Gamma(k))``, normalizing the density of ``mu_x``."""
    if k <= 0:
        raise ValueError("the intertwining density needs k > 0")
    return math.exp(loggamma_c(k + 0.5) - loggamma_c(k)) / math.sqrt(math.pi)


# ---------------------------------------------------------------------------
# Kernel
# ---------------------------------------------------------------------------


def _as_number(z):
    if isinstance(z, complex):
        return z if z.imag != 0 else z.real
    return float(z)


def _branch_bessel(s, k: float, tol: ToleranceProfile) -> complex:
    if s == 0:
        return 1.0
    a = bessel_j_mod(k - 0.5, s, tol)
    b = bessel_j_mod(k + 0.5, s, tol)
    val = a.value + s / (2 * k + 1) * b.value
    scale = abs(a.value) + abs(s / (2 * k + 1) * b.value)
    if abs(val) < 1e-4 * scale:
        # both terms are large and nearly opposite; combine them exactly
        w = s * s / 4
        if isinstance(s, complex) and s.real == 0:
            w = -(s.imag**2) / 4
        val = _hyper_combo_exact(
            [(1.0, [], [k + 0.5], w), (s / (2 * k + 1), [], [k + 1.5], w)],
            tol.series_rel_tol,
        )
        if not isinstance(s, complex):
            val = val.real
    return val


def _branch_confluent(s, k: float, tol: ToleranceProfile) -> complex:
    if k == 0:
        return cmath.exp(s) if isinstance(s, complex) else math.exp(s)
    f = pfq_series([k], [2 * k + 1], -2 * s, tol=tol)
    e = cmath.exp(s) if isinstance(s, complex) else math.exp(s)
    return e * f.value


def _jacobi_order(size: float) -> int:
    return int(math.ceil(0.6 * size)) + 30


def _mu_rule(order: int, k: float) -> tuple:
    """Nodes and weights of ``mu_1``, the density ``C_k (1-u)**(k-1) (1+u)**k`` on [-1, 1]."""
    return jacobi_probability_rule(order, k, k + 1.0)


def _branch_integral(s, k: float) -> complex:
    if k == 0:
        return cmath.exp(s) if isinstance(s, complex) else math.exp(s)
    u, w = _mu_rule(_jacobi_order(abs(s)), k)
    val = np.sum(w * np.exp(s * u))
    return complex(val) if isinstance(s, complex) else float(np.real(val))


_BRANCHES = {
    "bessel": _branch_bessel,
    "confluent": _branch_confluent,
}


def kernel_E_branches(lam, x, k: float, tol: ToleranceProfile = DEFAULT_TOL) -> dict:
    """Evaluate ``E_lam(x)`` on every available branch (diagnostics)."""
    k = _check_k(k)
    s = _as_number(lam * x)
    out = {name: fn(s, k, tol) for name, fn in _BRANCHES.items()}
    out["integral"] = _branch_integral(s, k)
    return out


def kernel_E(
    lam,
    x,
    k: float,
    symmetrize: bool = False,
    branch: str = "auto",
    tol: ToleranceProfile = DEFAULT_TOL,
    check: bool = True,
) -> KernelEval:
    """Dunkl kernel ``E_lam(x)`` in dimension one.

    Parameters
    ----------
    lam : complex
        Spectral parameter.
    x : float or complex
        Space variable; ``E`` depends on ``lam * x`` only.
    k : float
        Multiplicity, ``k >= 0``.
    symmetrize : bool
        Return the generalized Bessel function ``J_lam(x) = j_{k-1/2}(lam x)``,
        the average of ``E_lam(x)`` and ``E_lam(-x)``.
    branch : {"auto", "bessel", "confluent", "integral"}
        ``"auto"`` uses the Bessel combination for ``|lam x| <= 30`` and the
        integral representation beyond.  When ``Re(lam x) < -5`` the two
        Bessel terms cancel badly, so the confluent series is used there.
    check : bool
        With ``"auto"`` and ``|lam x| <= 30`` also evaluate a second branch
        (confluent, or the integral when the confluent one is primary) and
        raise :class:`BranchDisagreementError` if the two differ by more
        than ``tol.compare_tol`` relative.

    Returns
    -------
    KernelEval
        ``err_est`` is the branch discrepancy when a cross-check ran.
    """
    k = _check_k(k)
    s = _as_number(lam * x)
    if s == 0:
        return KernelEval(1.0, 0.0, 1, "E(0) = 1")
    if symmetrize:
        res = bessel_j_mod(k - 0.5, s, tol)
        return KernelEval(res.value, res.err_est, res.terms_used, "J = j_{k-1/2}")
    if k == 0:
        e = cmath.exp(s) if isinstance(s, complex) else math.exp(s)
        return KernelEval(e, 0.0, 1, "k = 0: exponential")
    partner = _branch_confluent
    if branch == "auto":
        if abs(s) > 30:
            branch = "integral"
        elif s.real < -5:
            # the two Bessel terms are of size exp|s| and cancel down to
            # exp(-|s|) + O(k exp|s|); 1F1(k; 2k+1; -2s) has no such cancellation
            branch = "confluent"
            partner = lambda s, k, tol: _branch_integral(s, k)
        else:
            branch = "bessel"
        cross = check and branch != "integral"
    else:
        cross = False
    if branch == "integral":
        val = _branch_integral(s, k)
        return KernelEval(val, 1e-13 * max(1.0, abs(val)), _jacobi_order(abs(s)), "integral (Gauss-Jacobi)")
    if branch not in _BRANCHES:
        raise ValueError(f"unknown branch {branch!r}")
    val = _BRANCHES[branch](s, k, tol)
    err = 0.0
    note = branch
    if cross:
        other = partner(s, k, tol)
        err = abs(val - other)
        if err > tol.compare_tol * max(abs(val), abs(other)):
            raise BranchDisagreementError(
                f"kernel branches disagree at lam*x={s}: {branch}={val}, cross-check={other}"
            )
        note = f"{branch} (cross-checked)"
    return KernelEval(val, err, 0, note)


def kernel_E_vec(s: np.ndarray, k: float, order: Optional[int] = None) -> np.ndarray:
    """Vectorized ``E(s)`` through the intertwining integral.

    Intended for arguments with a moderate real part (oscillatory kernels of
    the transform).  The Gauss-Jacobi order defaults to one resolving the
    largest ``|s|`` in the batch.
    """
    k = _check_k(k)
    s = np.asarray(s)
    if k == 0:
        return np.exp(s)
    if order is None:
        order = _jacobi_order(float(np.max(np.abs(s))) if s.size else 0.0)
    u, w = _mu_rule(order, k)
    flat = s.reshape(-1)
    out = np.empty(flat.shape, dtype=np.result_type(flat, float))
    step = max(1, 2_000_000 // max(order, 1))
    for i in range(0, flat.size, step):
        chunk = flat[i : i + step]
        out[i : i + step] = np.exp(np.multiply.outer(chunk, u)) @ w
    return out.reshape(s.shape)


def kernel_E_scaled(s: float, k: float) -> float:
    """``exp(-|s|) E(s)`` for real ``s``, safe for arbitrarily large ``|s|``.

    Moderate arguments use Gauss-Jacobi with the exponent shifted by
    ``-|s|``.  Large ones use generalized Gauss-Laguerre after the
    substitution ``v = |s| (1 -+ u)`` that moves the dominant endpoint to 0.
    """
    k = _check_k(k)
    s = float(s)
    if k == 0:
        return math.exp(s - abs(s))
    sigma = abs(s)
    if sigma <= 60:
        u, w = _mu_rule(_jacobi_order(sigma), k)
        return float(np.sum(w * np.exp(s * u - sigma)))
    C = intertwiner_const(k)
    if s > 0:
        g = lambda v: np.where(v < 2 * sigma, np.clip(2 - v / sigma, 0, None) ** k, 0.0)
        if k >= 0.5:
            v, w = gauss_laguerre(80, k - 1.0)
            return C * sigma ** (-k) * float(np.sum(w * g(v)))
        # peel off g(0) so that the weight v^k exp(-v) stays regular as k -> 0:
        # int g v^(k-1) e^-v = Gamma(k) (g(0) + k E[(g(v) - g(0)) / v]) and C Gamma(k) = Gamma(k+1/2)/sqrt(pi)
        v, w = gauss_laguerre(80, k)
        g0 = 2.0**k
        mean = float(np.sum(w * (g(v) - g0) / v)) / math.gamma(k + 1.0)
        return math.gamma(k + 0.5) / math.sqrt(math.pi) * sigma ** (-k) * (g0 + k * mean)
    v, w = gauss_laguerre(80, k)
    base = np.clip(2 - v / sigma, 0, None)
    g = np.zeros_like(v)
    inside = v < 2 * sigma
    g[inside] = base[inside] ** (k - 1)
    return C * sigma ** (-k - 1) * float(np.sum(w * g))


def kernel_E_dx(lam, x: float, k: float) -> complex:
    """``d/dx E_lam(x) = lam E'(lam x)`` through the differentiated integral."""
    k = _check_k(k)
    s = _as_number(lam * x)
    if k == 0:
        return lam * cmath.exp(s)
    u, w = _mu_rule(_jacobi_order(abs(s)) + 4, k)
    return lam * complex(np.sum(w * u * np.exp(s * u)))


# ---------------------------------------------------------------------------
# Intertwining measure
# ---------------------------------------------------------------------------


def mu_density(x: float, y: float, k: float) -> float:
    """Density of the representing measure ``mu_x`` against ``dy``.

    ``C_k |x|**(-2k) (|x| + sign(x) y) (x**2 - y**2)**(k-1)`` on
    ``(-|x|, |x|)`` and ``0`` elsewhere.  For ``x = 0`` the measure is the
    Dirac mass at the origin, which has no density.
    """
    if k <= 0:
        raise ValueError("mu_x has a density only for k > 0 (k = 0 gives the identity)")
    if x == 0:
        raise ValueError("mu_0 is the Dirac mass at 0")
    ax = abs(x)
    if not abs(y) < ax:
        return 0.0
    sgn = 1.0 if x > 0 else -1.0
    return intertwiner_const(k) * ax ** (-2 * k) * (ax + sgn * y) * (x * x - y * y) ** (k - 1)


def mu_integrate(g: Callable, x: float, k: float, order: int = 60) -> complex:
    """``int g(y) dmu_x(y)``, i.e. the intertwiner ``V g (x)``.

    Uses ``y = x u`` so that the density turns into the Jacobi weight
    ``C_k (1-u)**(k-1) (1+u)**k`` on ``[-1, 1]``.
    """
    k = _check_k(k)
    if x == 0 or k == 0:
        return g(np.asarray([x if k == 0 else 0.0]))[0]
    u, w = _mu_rule(order, k)
    return np.sum(w * g(x * u))


# ---------------------------------------------------------------------------
# Product formula measure
# ---------------------------------------------------------------------------


def nu_density(x: float, y: float, z: float, k: float) -> float:
    """Density of ``nu_{x,y}`` against ``|z|**(2k) dz`` (zero off the annulus)."""
    if k <= 0:
        raise ValueError("nu_{x,y} has a density only for k > 0")
    if x == 0 or y == 0 or z == 0:
        return 0.0
    ax, ay, az = abs(x), abs(y), abs(z)
    if not (abs(ax - ay) < az < ax + ay):
        return 0.0
    C = intertwiner_const(k)
    num = (z + x + y) * (z + x - y) * (z - x + y) / (2 * x * y * z)
    brace = (az * az - (ax - ay) ** 2) ** (k - 1) * ((ax + ay) ** 2 - az * az) ** (k - 1)
    return C * num * brace / (2 * ax * ay * az) ** (2 * k - 1)


def _nu_pieces(x: float, y: float, k: float, order: int):
    """Nodes and signed weights for ``dnu_{x,y}`` on both halves of the annulus.

    After cancelling powers of ``|z|`` the measure is
    ``C sgn(z) P(z) (z^2-A^2)^(k-1) (B^2-z^2)^(k-1) / (2xy (2|x||y|)^(2k-1)) dz``
    with ``P`` the cubic numerator, whose roots sit at ``|z| = A`` or ``B``.
    """
    C = intertwiner_const(k)
    ax, ay = abs(x), abs(y)
    A, B = abs(ax - ay), ax + ay
    pref = C / (2 * x * y * (2 * ax * ay) ** (2 * k - 1))
    pieces = []
    for sgn in (1.0, -1.0):
        if A > 0:
            u, w = jacobi_rule_shifted(order, k, k)
            half = 0.5 * (B - A)
            zabs = 0.5 * (A + B) + half * u
            # (z-A)^(k-1) (B-z)^(k-1) = half^(2k-2) (1+u)^(k-1) (1-u)^(k-1)
            smooth = (zabs + A) ** (k - 1) * (B + zabs) ** (k - 1) * half ** (2 * k - 2) * half
        else:
            # |x| = |y|: P has a simple zero at 0, (z^2)^(k-1) P = z^(2k-1) Q
            u, w = jacobi_rule_shifted(order, k, 2 * k)
            half = 0.5 * B
            zabs = half * (1 + u)
            smooth = (B + zabs) ** (k - 1) * half ** (k - 1) * half ** (2 * k - 1) * half
        z = sgn * zabs
        P = (z + x + y) * (z + x - y) * (z - x + y)
        if A == 0:
            # |z|^(2k-2) P(z) = |z|^(2k-1) sgn(z) P(z)/z
            with np.errstate(divide="ignore", invalid="ignore"):
                P = sgn * np.where(z != 0, P / z, -((x - y) ** 2))
        pieces.append((z, w * pref * sgn * P * smooth))
    return pieces


def nu_integrate(g: Callable, x: float, y: float, k: float, order: int = 60) -> complex:
    """``int g(z) dnu_{x,y}(z)``; Dirac cases when ``x`` or ``y`` vanish."""
    k = _check_k(k)
    if x == 0:
        return g(np.asarray([float(y)]))[0]
    if y == 0:
        return g(np.asarray([float(x)]))[0]
    if k == 0:
        return g(np.asarray([float(x + y)]))[0]
    return sum(np.sum(wt * g(z)) for z, wt in _nu_pieces(x, y, k, order))


def nu_mass(x: float, y: float, k: float, order: int = 60) -> float:
    """Total signed mass of ``nu_{x,y}``."""
    return float(np.real(nu_integrate(lambda z: np.ones_like(z), x, y, k, order)))


def nu_total_variation(x: float, y: float, k: float, order: int = 60) -> float:
    """Total variation ``int d|nu_{x,y}|``.

    The density keeps one sign on each of the two intervals of the annulus,
    so the variation is the sum of the absolute values of the two integrals.
    """
    k = _check_k(k)
    if x == 0 or y == 0 or k == 0:
        return 1.0
    return float(sum(abs(np.sum(wt)) for _, wt in _nu_pieces(x, y, k, order)))


def nu_bound(k: float) -> float:
    """``sqrt(2) Gamma(k+1/2)**2 / (Gamma(k+1/4) Gamma(k+3/4))``."""
    return math.sqrt(2) * math.exp(2 * loggamma_c(k + 0.5) - loggamma_c(k + 0.25) - loggamma_c(k + 0.75))


# ---------------------------------------------------------------------------
# Translations
# ---------------------------------------------------------------------------


def translate_radial(f_radial: Callable, y: float, x: float, k: float, order: int = 80) -> float:
    """Generalized translate ``tau_y f (x)`` of a radial function.

    ``f_radial`` is the profile ``r -> f(r)`` for ``r >= 0``; the result is
    ``int f(sqrt(x^2 + y^2 + 2 x y u)) C_k (1-u)^(k-1) (1+u)^k du``.
    """
    k = _check_k(k)
    if y == 0:
        return float(f_radial(np.asarray([abs(x)]))[0])
    if k == 0:
        return float(f_radial(np.asarray([abs(x + y)]))[0])
    u, w = _mu_rule(order, k)
    r = np.sqrt(np.clip(x * x + y * y + 2 * x * y * u, 0.0, None))
    return float(np.sum(w * f_radial(r)))


def translate_spectral(f: Callable, y: float, x: float, k: float, support: float, band: float, panels: int = 40) -> float:
    """``tau_y f(x) = c^-2 int Hf(lam) E(i lam x) E(i lam y) |lam|^(2k) dlam``.

    Independent route through the transform, used to cross-check
    :func:`translate_radial`.
    """
    lam, wl = _spectral_nodes(k, band, panels)
    F = dunkl_transform(f, lam, k, support)
    kern = kernel_E_vec(1j * lam * x, k) * kernel_E_vec(1j * lam * y, k)
    c = mehta_closed_form(k)
    return float(np.real(np.sum(wl * np.abs(lam) ** (2 * k) * F * kern)) / c**2)


# ---------------------------------------------------------------------------
# Transform
# ---------------------------------------------------------------------------


def _sym_nodes(half_width: float, k: float, panels: int, order: int = 20):
    """Composite nodes on ``[-L, L]`` graded towards 0 when ``2k`` is not even."""
    levels = 0 if float(2 * k).is_integer() else 14
    br = graded_breaks(0.0, half_width, levels=levels, panels=panels)
    x, w = composite_nodes(br, order)
    return np.concatenate([-x[::-1], x]), np.concatenate([w[::-1], w])


def _spectral_nodes(k: float, band: float, panels: int):
    return _sym_nodes(band, k, panels)


def dunkl_transform(f: Callable, lam, k: float, support: float, panels: int = 16, decay_tol: float = 1e-10) -> np.ndarray:
    """Forward transform ``Hf(lam) = int f(x) E(-i lam x) |x|^(2k) dx``.

    ``f`` must be vectorized and negligible outside ``[-support, support]``.

    Raises
    ------
    InsufficientDecayError
        If ``|f|`` at the edges of the support exceeds ``decay_tol`` times
        its maximum there.
    """
    k = _check_k(k)
    x, w = _sym_nodes(support, k, panels)
    fx = np.asarray(f(x), dtype=complex)
    edge = np.abs(np.asarray(f(np.array([-support, support])), dtype=complex))
    peak = max(float(np.max(np.abs(fx))), 1e-300)
    if float(np.max(edge)) > decay_tol * peak:
        raise InsufficientDecayError("function has not decayed at the edge of the declared support")
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    wx = w * np.abs(x) ** (2 * k) * fx
    order = _jacobi_order(float(np.max(np.abs(lam))) * support)
    out = np.empty(lam.shape, dtype=complex)
    for i in range(0, lam.size, 64):
        block = lam[i : i + 64]
        K = kernel_E_vec(-1j * np.multiply.outer(block, x), k, order)
        out[i : i + 64] = K @ wx
    return out


def inverse_dunkl_transform(F: Callable, x, k: float, band: float, panels: int = 40) -> np.ndarray:
    """``c^-2 int_{-band}^{band} F(lam) E(i lam x) |lam|^(2k) dlam``."""
    k = _check_k(k)
    lam, wl = _spectral_nodes(k, band, panels)
    Fl = np.asarray(F(lam), dtype=complex)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    order = _jacobi_order(band * float(np.max(np.abs(x))))
    K = kernel_E_vec(1j * np.multiply.outer(x, lam), k, order)
    return K @ (wl * np.abs(lam) ** (2 * k) * Fl) / mehta_closed_form(k) ** 2


def transform_pair(
    f: Callable,
    lam,
    k: float,
    direction: str = "forward",
    support: float = 1.0,
    band: float = 40.0,
) -> KernelEval:
    """Dunkl transform in either direction at a single point.

    For ``direction="forward"`` ``f`` is a function of ``x`` supported in
    ``[-support, support]``; for ``"inverse"`` it is a spectral function and
    ``lam`` plays the role of the space variable, the integral being cut at
    ``band``.
    """
    if direction == "forward":
        val = dunkl_transform(f, [lam], k, support)[0]
        return KernelEval(complex(val), 1e-10, 0, "forward transform")
    if direction == "inverse":
        val = inverse_dunkl_transform(f, [lam], k, band)[0]
        return KernelEval(complex(val), 1e-8, 0, "inverse transform")
    raise ValueError("direction must be 'forward' or 'inverse'")


def round_trip_error(f: Callable, xs, k: float, support: float = 1.0, band: float = 40.0, panels: int = 40) -> float:
    """``max |H^-1 H f - f|`` on the points ``xs``."""
    k = _check_k(k)
    lam, wl = _spectral_nodes(k, band, panels)
    F = dunkl_transform(f, lam, k, support)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    K = kernel_E_vec(1j * np.multiply.outer(xs, lam), k)
    back = K @ (wl * np.abs(lam) ** (2 * k) * F) / mehta_closed_form(k) ** 2
    return float(np.max(np.abs(back - f(xs))))


# ---------------------------------------------------------------------------
# Mehta constant
# ---------------------------------------------------------------------------


def mehta_closed_form(k: float) -> float:
    """``2**(k+1/2) Gamma(k+1/2)``."""
    return 2 ** (k + 0.5) * float(gamma_c(k + 0.5))


def mehta_constant(k: float, tol: float = 1e-13) -> float:
    """``int |x|**(2k) exp(-x**2/2) dx`` by adaptive quadrature."""
    k = _check_k(k)
    g = lambda x: x ** (2 * k) * math.exp(-0.5 * x * x)
    total = 0.0
    for a, b in [(0.0, 1.0), (1.0, 8.0), (8.0, 40.0)]:
        total += quad(g, a, b, tol=DEFAULT_TOL.replace(quad_abs_tol=tol)).value
    return 2 * total


# ---------------------------------------------------------------------------
# Heat kernel
# ---------------------------------------------------------------------------


def _check_time(t: float) -> None:
    if not t > 0:
        raise ValueError("heat kernel requires t > 0")


def heat_kernel(t: float, x: float, y: float, k: float) -> float:
    """``c^-1 (2t)^(-1/2-k) exp(-(x^2+y^2)/4t) E(x y / 2t)``.

    Computed as ``c^-1 (2t)^(-1/2-k) exp(-(|x|-|y|)^2/4t) exp(-|s|) E(s)``
    so that no overflow occurs for small ``t``.
    """
    _check_time(t)
    k = _check_k(k)
    s = x * y / (2 * t)
    pref = (2 * t) ** (-0.5 - k) / mehta_closed_form(k)
    return pref * math.exp(-((abs(x) - abs(y)) ** 2) / (4 * t)) * kernel_E_scaled(s, k)


def heat_upper_bound(t: float, x: float, y: float, k: float) -> float:
    """``c^-1 (2t)^(-1/2-k) max_w exp(-|w x - y|^2 / 4t)``."""
    _check_time(t)
    d = min(abs(x - y), abs(x + y))
    return (2 * t) ** (-0.5 - k) / mehta_closed_form(k) * math.exp(-d * d / (4 * t))


def heat_envelope(t: float, x: float, y: float, k: float) -> float:
    """Three-regime comparison function of the sharp one-dimensional estimate."""
    _check_time(t)
    p = x * y
    if abs(p) <= t:
        return t ** (-k - 0.5) * math.exp(-(x * x + y * y) / (4 * t))
    if p >= t:
        return t ** -0.5 * p ** (-k) * math.exp(-((x - y) ** 2) / (4 * t))
    return t**0.5 * (-p) ** (-k - 1) * math.exp(-((x + y) ** 2) / (4 * t))


def heat_sandwich_constants(ts: Sequence[float], xs: Sequence[float], ys: Sequence[float], k: float) -> tuple:
    """Smallest and largest ratio ``h_t(x,y) / envelope`` over a grid.

    Ratios are formed in log space, both sides sharing the Gaussian factor.
    """
    lo, hi = math.inf, 0.0
    for t in ts:
        for x in xs:
            for y in ys:
                lh = _log_heat(t, x, y, k)
                le = _log_envelope(t, x, y, k)
                r = math.exp(lh - le)
                lo, hi = min(lo, r), max(hi, r)
    return lo, hi


def _log_heat(t, x, y, k):
    s = x * y / (2 * t)
    return (
        (-0.5 - k) * math.log(2 * t)
        - math.log(mehta_closed_form(k))
        - (abs(x) - abs(y)) ** 2 / (4 * t)
        + math.log(kernel_E_scaled(s, k))
    )


def _log_envelope(t, x, y, k):
    p = x * y
    if abs(p) <= t:
        return (-k - 0.5) * math.log(t) - (x * x + y * y) / (4 * t)
    if p >= t:
        return -0.5 * math.log(t) - k * math.log(p) - (x - y) ** 2 / (4 * t)
    return 0.5 * math.log(t) - (k + 1) * math.log(-p) - (x + y) ** 2 / (4 * t)


def dunkl_laplacian(f: Callable, x: float, k: float, h: float = 1e-3) -> float:
    """Finite-difference Dunkl Laplacian ``f'' + 2k f'/x - k (f(x)-f(-x))/x^2``."""
    d1 = (f(x + h) - f(x - h)) / (2 * h)
    d2 = (f(x + h) - 2 * f(x) + f(x - h)) / (h * h)
    return d2 + 2 * k * d1 / x - k * (f(x) - f(-x)) / (x * x)


# ---------------------------------------------------------------------------
# Asymptotics
# ---------------------------------------------------------------------------


def asym_limit(lam: float, x: float, k: float, t_seq: Sequence[float]) -> np.ndarray:
    """``(i t)**k exp(-i t lam x) E_{i t lam}(x)`` along ``t_seq``."""
    if not (lam > 0 and x > 0):
        raise ValueError("asymptotics are stated for lam, x > 0")
    k = _check_k(k)
    out = []
    for t in t_seq:
        s = 1j * t * lam * x
        out.append((1j * t) ** k * cmath.exp(-s) * _branch_integral(s, k))
    return np.asarray(out)


def asym_limit_value(lam: float, x: float, k: float) -> float:
    """``(2 pi)^(-1/2) c (lam x)^(-k)``, the limit of :func:`asym_limit`."""
    return mehta_closed_form(k) / math.sqrt(2 * math.pi) * (lam * x) ** (-k)


def asym_opposite(lam: float, x: float, k: float, t_seq: Sequence[float]) -> np.ndarray:
    """``t**(k+1) exp(-t lam x) E_{t lam}(-x)`` along ``t_seq``."""
    if not (lam > 0 and x > 0):
        raise ValueError("asymptotics are stated for lam, x > 0")
    return np.asarray([t ** (k + 1) * kernel_E_scaled(-t * lam * x, k) for t in t_seq])


def asym_opposite_value(lam: float, x: float, k: float) -> float:
    """``2^(k-1) k Gamma(k+1/2) / sqrt(pi) (lam x)^(-k-1)``."""
    return 2 ** (k - 1) * k * float(gamma_c(k + 0.5)) / math.sqrt(math.pi) * (lam * x) ** (-k - 1)


# ---------------------------------------------------------------------------
# Product case
# ---------------------------------------------------------------------------


def product_kernel_E(lams: Sequence, xs: Sequence[float], ks: Sequence[float]) -> complex:
    """Dunkl kernel of ``A1 x ... x A1``: product of rank-one kernels."""
    val = 1.0
    for lam, x, k in zip(lams, xs, ks):
        val = val * kernel_E(lam, x, k).value
    return val


def product_heat_kernel(t: float, xs: Sequence[float], ys: Sequence[float], ks: Sequence[float]) -> float:
    val = 1.0
    for x, y, k in zip(xs, ys, ks):
        val *= heat_kernel(t, x, y, k)
    return val


def product_mehta_constant(ks: Sequence[float]) -> float:
    return math.prod(mehta_closed_form(k) for k in ks)
