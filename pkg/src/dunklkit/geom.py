"""Rank one spherical analysis on Euclidean spaces, spheres and hyperbolic spaces.

Radial functions on ``R^n``, ``S^n`` and ``H^n`` are handled through their
spherical functions:

* ``R^n``: ``phi_lam(r) = j_{(n-2)/2}(i lam r)``, with the Hankel pair,
* ``S^n``: ``phi_l(cos th) = l!/(n/2)_l P_l^{(n/2-1, n/2-1)}(cos th)``, with
  the Fourier expansion in these polynomials,
* ``H^n``: ``phi_lam(r) = 2F1((rho+i lam)/2, (rho-i lam)/2; n/2; -sinh(r)^2)``
  with ``rho = (n-1)/2``, together with the c-function, the spherical
  transform, the Abel transform, its dual and their inverses, the heat and
  Schrodinger kernels, the shifted wave equation and the three models of
  ``H^n``.

Iterated operators such as ``(-(1/sinh r) d/dr)^m`` are all rewritten as
derivatives in ``x = cosh r``.  They act on analytic functions of ``x`` and
are evaluated by differentiating Chebyshev interpolants.  Integrals with a
``(cosh s - cosh r)**p`` endpoint singularity use the substitution
``s = r + w**2`` near the endpoint.

Callables passed to this module must accept and return numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .dunkl1d import InsufficientDecayError
from .numerics import (
    KernelEval,
    PoleError,
    bessel_j_mod,
    composite_nodes,
    gamma_c,
    gauss_2f1,
    gauss_jacobi,
    loggamma_c,
    pfq_series,
)
from .trig1d import jacobi_phi

__all__ = [
    "SpaceSpec",
    "HypPoint",
    "ModelInvariantError",
    "NonpositiveTimeError",
    "euclid_phi",
    "euclid_phi_vec",
    "hankel_transform",
    "inverse_hankel_transform",
    "hankel_pair",
    "hankel_round_trip_error",
    "jacobi_poly",
    "sphere_phi",
    "sphere_phi_continued",
    "sphere_dim",
    "sphere_expand",
    "sphere_synth",
    "hyp_phi",
    "hyp_phi_vec",
    "hyp_harish_chandra",
    "hyp_c_plancherel",
    "hyp_plancherel_product",
    "hyp_spherical_transform",
    "inverse_hyp_spherical_transform",
    "hyp_round_trip_error",
    "hyp_abel",
    "hyp_abel_inverse",
    "hyp_dual_abel",
    "hyp_dual_abel_inverse",
    "hyp_heat",
    "hyp_heat_envelope",
    "hyp_heat_sandwich_constants",
    "hyp_heat_mass",
    "hyp_schrodinger_bound",
    "hyp_schrodinger_constants",
    "hyp_wave_radial",
    "hyp_wave_spectral",
    "model_convert",
    "hyp_distance",
]


class ModelInvariantError(ValueError):
    """A point does not lie in the model it claims to belong to."""


class NonpositiveTimeError(ValueError):
    """A heat kernel was requested at a time ``t <= 0``."""


@dataclass(frozen=True)
class SpaceSpec:
    """Rank one space ``kind`` of dimension ``dim``.

    ``kind`` is ``"euclidean"`` (``dim >= 1``), ``"sphere"`` or
    ``"hyperbolic"`` (``dim >= 2``).
    """

    kind: str
    dim: int

    def __post_init__(self):
        if self.kind not in ("euclidean", "sphere", "hyperbolic"):
            raise ValueError(f"unknown space kind {self.kind!r}")
        low = 1 if self.kind == "euclidean" else 2
        if int(self.dim) != self.dim or self.dim < low:
            raise ValueError(f"{self.kind} spaces need an integer dimension >= {low}")

    @property
    def rho(self) -> float:
        """Half sum of positive roots, ``(n-1)/2``."""
        return (self.dim - 1) / 2


def _check_dim(n: int, low: int = 2) -> int:
    if int(n) != n or n < low:
        raise ValueError(f"dimension must be an integer >= {low}")
    return int(n)


def _ratio_sinh(z):
    """``sinh(z)/z``, equal to 1 at 0."""
    z = np.asarray(z, dtype=float)
    safe = np.where(z == 0, 1.0, z)
    return np.where(np.abs(z) < 1e-8, 1.0 + z * z / 6, np.sinh(safe) / safe)


def _cheb_derivatives(func: Callable, lo: float, hi: float, x: float, max_order: int, deg: int = 40):
    """Derivatives ``func^(j)(x)``, ``j = 0..max_order``, of a Chebyshev interpolant on ``[lo, hi]``."""
    k = np.arange(deg + 1)
    theta = np.pi * (k + 0.5) / (deg + 1)
    t = np.cos(theta)
    vals = np.asarray(func(0.5 * (lo + hi) + 0.5 * (hi - lo) * t))
    coef = 2.0 / (deg + 1) * np.cos(np.outer(k, theta)) @ vals
    coef[0] /= 2
    xt = (2 * x - lo - hi) / (hi - lo)
    scale = 2.0 / (hi - lo)
    out = []
    c = coef
    for j in range(max_order + 1):
        out.append(np.polynomial.chebyshev.chebval(xt, c) * scale**j)
        c = np.polynomial.chebyshev.chebder(c)
    return out


class _PiecewiseCheb:
    """Piecewise Chebyshev interpolant of ``func`` with one derivative order baked in."""

    def __init__(self, func: Callable, breaks: Sequence[float], order: int, deg: int = 40):
        self.breaks = np.asarray(breaks, dtype=float)
        k = np.arange(deg + 1)
        theta = np.pi * (k + 0.5) / (deg + 1)
        t = np.cos(theta)
        basis = 2.0 / (deg + 1) * np.cos(np.outer(k, theta))
        self.coefs = []
        for lo, hi in zip(self.breaks[:-1], self.breaks[1:]):
            vals = np.asarray(func(0.5 * (lo + hi) + 0.5 * (hi - lo) * t))
            c = basis @ vals
            c[0] /= 2
            c = np.polynomial.chebyshev.chebder(c, order) * (2.0 / (hi - lo)) ** order if order else c
            self.coefs.append(c)

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        idx = np.clip(np.searchsorted(self.breaks, y, side="right") - 1, 0, len(self.coefs) - 1)
        out = np.empty(y.shape, dtype=np.result_type(self.coefs[0].dtype, float))
        for i in np.unique(idx):
            mask = idx == i
            lo, hi = self.breaks[i], self.breaks[i + 1]
            out[mask] = np.polynomial.chebyshev.chebval((2 * y[mask] - lo - hi) / (hi - lo), self.coefs[i])
        return out


def _abel_kernel_integral(h: Callable, r: float, p: float, upper: float, order: int = 24, near_breaks=None):
    """``int_r^upper (cosh s - cosh r)**p sinh(s) h(s) ds`` for ``p > -1``.

    On ``[r, r+1]`` the substitution ``s = r + w**2`` removes the endpoint
    singularity, using ``cosh s - cosh r = 2 sinh((s+r)/2) sinh(w**2/2)``.
    """
    if upper <= r:
        return 0.0
    wmax = math.sqrt(min(1.0, upper - r))
    brk = near_breaks if near_breaks is not None else (0.0, 0.02, 0.05, 0.1, 0.2, 0.4, 0.7, 1.0)
    w, ww = composite_nodes([b * wmax for b in brk], order)
    s = r + w * w
    z = 0.5 * w * w
    # (cosh s - cosh r)**p * 2w = 2 * w**(2p+1) * ratio(z)**p * sinh((s+r)/2)**p
    factor = 2 * w ** (2 * p + 1) * _ratio_sinh(z) ** p * np.sinh(0.5 * (s + r)) ** p
    total = np.sum(ww * factor * np.sinh(s) * h(s))
    lo = r + wmax * wmax
    if upper > lo:
        npan = max(1, int(math.ceil(2 * (upper - lo))))
        s, ws = composite_nodes([lo + (upper - lo) * j / npan for j in range(npan + 1)], order)
        diff = 2 * np.sinh(0.5 * (s + r)) * np.sinh(0.5 * (s - r))
        total = total + np.sum(ws * diff**p * np.sinh(s) * h(s))
    return total


def _as_array(v):
    arr = np.asarray(v, dtype=float)
    return arr, arr.ndim == 0


# ---------------------------------------------------------------------------
# Euclidean space
# ---------------------------------------------------------------------------


def euclid_phi(lam, r: float, n: int, branch: str = "series") -> KernelEval:
    """Radial spherical function ``j_{(n-2)/2}(i lam r)`` of ``R^n``.

    ``branch="series"`` sums ``0F1(n/2; -(lam r)**2/4)``; ``"integral"``
    averages plane waves over the sphere,
    ``Gamma(n/2)/(sqrt(pi) Gamma((n-1)/2)) int_0^pi sin(th)**(n-2) exp(i lam r cos th) dth``.
    For ``n = 1`` both reduce to ``cos(lam r)``.
    """
    n = _check_dim(n, 1)
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if r == 0:
        return KernelEval(1.0, 0.0, 1, "phi(0) = 1")
    if branch == "series":
        res = bessel_j_mod((n - 2) / 2, 1j * lam * r)
        val = res.value
        if not isinstance(lam, complex) and isinstance(val, complex):
            val = val.real
        return KernelEval(val, res.err_est, res.terms_used, res.branch_note)
    if branch == "integral":
        if n == 1:
            return KernelEval(complex(np.cos(lam * r)) if isinstance(lam, complex) else math.cos(lam * r), 0.0, 1, "cosine")
        val = euclid_phi_vec(np.array([lam * r]), n)[0]
        if not isinstance(lam, complex):
            val = float(np.real(val))
        return KernelEval(val, 1e-13, 0, "plane wave average")
    raise ValueError(f"unknown branch {branch!r}")


def euclid_phi_vec(z, n: int, order: Optional[int] = None) -> np.ndarray:
    """``j_{(n-2)/2}(i z)`` on an array of products ``z = lam * r``."""
    n = _check_dim(n, 1)
    z = np.asarray(z)
    if n == 1:
        return np.cos(z)
    a = (n - 3) / 2
    if order is None:
        zmax = float(np.max(np.abs(z))) if z.size else 0.0
        order = 30 + int(math.ceil(0.6 * zmax))
    u, w = gauss_jacobi(order, a, a)
    const = math.exp(loggamma_c(n / 2) - loggamma_c((n - 1) / 2)) / math.sqrt(math.pi)
    flat = z.reshape(-1)
    out = np.empty(flat.shape, dtype=np.result_type(flat.dtype, float))
    for i in range(0, flat.size, 4096):
        blk = flat[i : i + 4096]
        out[i : i + 4096] = const * (np.cos(np.multiply.outer(blk, u)) @ w)
    return out.reshape(z.shape)


def _surface(n: int) -> float:
    """Area ``2 pi**(n/2) / Gamma(n/2)`` of the unit sphere in ``R^n``."""
    return 2 * math.pi ** (n / 2) / math.exp(loggamma_c(n / 2))


def hankel_transform(f: Callable, lam, n: int, support: float, panels: int = 16, decay_tol: float = 1e-10) -> np.ndarray:
    """``F(lam) = 2 pi**(n/2)/Gamma(n/2) int_0^inf r**(n-1) f(r) phi_lam(r) dr``.

    ``f`` is a radial profile negligible beyond ``support``.

    Raises
    ------
    InsufficientDecayError
        If ``|f(support)|`` exceeds ``decay_tol`` times the peak of ``|f|``.
    """
    n = _check_dim(n, 1)
    r, w = composite_nodes([support * j / panels for j in range(panels + 1)], 20)
    fr = np.asarray(f(r), dtype=float)
    peak = max(float(np.max(np.abs(fr))), 1e-300)
    if abs(float(np.asarray(f(np.array([support])))[0])) > decay_tol * peak:
        raise InsufficientDecayError("profile has not decayed at the declared support")
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    wr = w * r ** (n - 1) * fr
    order = 30 + int(math.ceil(0.6 * float(np.max(np.abs(lam))) * support))
    out = np.empty(lam.shape)
    for i in range(0, lam.size, 64):
        blk = lam[i : i + 64]
        out[i : i + 64] = euclid_phi_vec(np.multiply.outer(blk, r), n, order) @ wr
    return _surface(n) * out


def inverse_hankel_transform(F: Callable, r, n: int, band: float, panels: int = 40) -> np.ndarray:
    """``f(r) = 1/(2**(n-1) pi**(n/2) Gamma(n/2)) int_0^band lam**(n-1) F(lam) phi_lam(r) dlam``."""
    n = _check_dim(n, 1)
    lam, wl = composite_nodes([band * j / panels for j in range(panels + 1)], 20)
    Fl = np.asarray(F(lam), dtype=float)
    r = np.atleast_1d(np.asarray(r, dtype=float))
    K = euclid_phi_vec(np.multiply.outer(r, lam), n)
    const = 1.0 / (2 ** (n - 1) * math.pi ** (n / 2) * math.exp(loggamma_c(n / 2)))
    return const * (K @ (wl * lam ** (n - 1) * Fl))


def hankel_pair(
    f: Callable,
    lam_or_r: float,
    n: int,
    direction: str = "forward",
    support: float = 1.0,
    band: float = 40.0,
) -> KernelEval:
    """Hankel transform of ``R^n`` in either direction at one point.

    ``direction="forward"`` integrates the radial profile ``f`` (negligible
    beyond ``support``); ``"inverse"`` integrates the spectral profile ``f``
    up to ``band``.
    """
    if direction == "forward":
        return KernelEval(float(hankel_transform(f, [lam_or_r], n, support)[0]), 1e-10, 0, "forward hankel")
    if direction == "inverse":
        return KernelEval(float(inverse_hankel_transform(f, [lam_or_r], n, band)[0]), 1e-8, 0, "inverse hankel")
    raise ValueError("direction must be 'forward' or 'inverse'")


def hankel_round_trip_error(f: Callable, rs, n: int, support: float = 1.0, band: float = 40.0, panels: int = 40) -> float:
    """``max |f - inverse(forward(f))|`` at the radii ``rs``."""
    lam, wl = composite_nodes([band * j / panels for j in range(panels + 1)], 20)
    F = hankel_transform(f, lam, n, support)
    rs = np.atleast_1d(np.asarray(rs, dtype=float))
    K = euclid_phi_vec(np.multiply.outer(rs, lam), n)
    const = 1.0 / (2 ** (n - 1) * math.pi ** (n / 2) * math.exp(loggamma_c(n / 2)))
    back = const * (K @ (wl * lam ** (n - 1) * F))
    return float(np.max(np.abs(back - f(rs))))


# ---------------------------------------------------------------------------
# Spheres
# ---------------------------------------------------------------------------


def jacobi_poly(ell: int, alpha: float, beta: float, x):
    """Jacobi polynomial ``P_ell^(alpha, beta)(x)`` by the three term recurrence."""
    if int(ell) != ell or ell < 0:
        raise ValueError("degree must be a nonnegative integer")
    x = np.asarray(x, dtype=float)
    p0 = np.ones_like(x)
    if ell == 0:
        return p0
    p1 = (alpha + 1) + (alpha + beta + 2) * (x - 1) / 2
    for m in range(2, int(ell) + 1):
        s = 2 * m + alpha + beta
        a1 = 2 * m * (m + alpha + beta) * (s - 2)
        a2 = (s - 1) * (alpha * alpha - beta * beta)
        a3 = (s - 1) * s * (s - 2)
        a4 = 2 * (m + alpha - 1) * (m + beta - 1) * s
        p0, p1 = p1, ((a2 + a3 * x) * p1 - a4 * p0) / a1
    return p1


def sphere_phi(ell: int, theta, n: int, branch: str = "jacobi"):
    """Spherical function ``phi_ell`` of ``S^n`` at polar angle ``theta``.

    ``branch="jacobi"`` uses ``ell!/(n/2)_ell P_ell^(n/2-1, n/2-1)(cos theta)``;
    ``"hypergeometric"`` uses ``2F1(-ell, ell+n-1; n/2; sin(theta/2)**2)``;
    ``"integral"`` averages ``(cos th1 + i sin th1 cos th2)**ell`` against
    ``sin(th2)**(n-2)``.
    """
    n = _check_dim(n)
    if int(ell) != ell or ell < 0:
        raise ValueError("ell must be a nonnegative integer")
    ell = int(ell)
    theta, scalar = _as_array(theta)
    if np.any(theta < -1e-15) or np.any(theta > math.pi + 1e-15):
        raise ValueError("theta must lie in [0, pi]")
    if branch == "jacobi":
        a = n / 2 - 1
        norm = math.exp(loggamma_c(ell + 1.0) + loggamma_c(n / 2) - loggamma_c(n / 2 + ell))
        out = norm * jacobi_poly(ell, a, a, np.cos(theta))
    elif branch == "hypergeometric":
        out = np.array([float(gauss_2f1(-ell, ell + n - 1, n / 2, math.sin(t / 2) ** 2).value) for t in theta.ravel()])
        out = out.reshape(theta.shape)
    elif branch == "integral":
        a = (n - 3) / 2
        u, w = gauss_jacobi(ell // 2 + 4, a, a)
        const = math.exp(loggamma_c(n / 2) - loggamma_c((n - 1) / 2)) / math.sqrt(math.pi)
        base = np.cos(theta)[..., None] + 1j * np.sin(theta)[..., None] * u
        out = const * np.real(base**ell @ w)
    else:
        raise ValueError(f"unknown branch {branch!r}")
    return float(out) if scalar else out


def sphere_phi_continued(ell: int, theta: float, n: int) -> float:
    """``phi_ell(cos theta)`` of ``S^n`` from the hyperbolic spherical function.

    Evaluates the ``H^n`` formula at ``lam = i(rho + ell)`` and
    ``r = i theta``, i.e. ``2F1(-ell/2, (ell+n-1)/2; n/2; sin(theta)**2)``,
    which converges for ``0 <= theta < pi/2``.
    """
    n = _check_dim(n)
    if not 0 <= theta < math.pi / 2:
        raise ValueError("the continued formula needs 0 <= theta < pi/2")
    return float(gauss_2f1(-ell / 2, (ell + n - 1) / 2, n / 2, math.sin(theta) ** 2).value)


def sphere_dim(ell: int, n: int) -> int:
    """``d_ell = n (n + 2 ell - 1) (n + ell - 2)! / (n! ell!)``."""
    n = _check_dim(n)
    num = n * (n + 2 * ell - 1) * math.factorial(n + ell - 2)
    den = math.factorial(n) * math.factorial(ell)
    if num % den:
        raise ArithmeticError("d_ell is not an integer")
    return num // den


def sphere_expand(f: Callable, n: int, L: int, order: Optional[int] = None) -> np.ndarray:
    """Coefficients ``<f, phi_ell>``, ``ell = 0..L``, of a radial profile ``f(theta)``.

    ``<f, phi> = Gamma((n+1)/2)/(sqrt(pi) Gamma(n/2)) int_0^pi sin(th)**(n-1) f(th) phi(th) dth``.
    """
    n = _check_dim(n)
    if order is None:
        order = 2 * L + 40
    a = (n - 2) / 2
    x, w = gauss_jacobi(order, a, a)
    th = np.arccos(x)
    fx = np.asarray(f(th), dtype=float)
    const = math.exp(loggamma_c((n + 1) / 2) - loggamma_c(n / 2)) / math.sqrt(math.pi)
    return np.array([const * np.sum(w * fx * sphere_phi(ell, th, n)) for ell in range(L + 1)])


def sphere_synth(coeffs: Sequence[float], theta, n: int):
    """``sum_ell d_ell c_ell phi_ell(theta)``, the inverse of :func:`sphere_expand`."""
    theta, scalar = _as_array(theta)
    out = np.zeros(theta.shape)
    for ell, c in enumerate(coeffs):
        out = out + sphere_dim(ell, n) * c * sphere_phi(ell, theta, n)
    return float(out) if scalar else out


# ---------------------------------------------------------------------------
# Hyperbolic space: spherical functions, c-function, transform
# ---------------------------------------------------------------------------


def _rho(n: int) -> float:
    return (_check_dim(n) - 1) / 2


def hyp_phi(lam, r: float, n: int, branch: str = "gauss2f1") -> KernelEval:
    """Spherical function ``phi_lam(r)`` of ``H^n``.

    ``branch`` is ``"gauss2f1"`` (Jacobi function ``phi^{((n-2)/2, -1/2)}``),
    ``"integral"`` (average of horocyclic waves over the sphere) or
    ``"dual_abel"`` (dual Abel transform of ``cos(lam s)``, real ``lam`` only).
    """
    n = _check_dim(n)
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if branch in ("gauss2f1", "integral"):
        return jacobi_phi(lam, r, (n - 2) / 2, -0.5, method=branch)
    if branch == "dual_abel":
        val = float(hyp_dual_abel(lambda s: np.cos(lam * s), r, n, order=40 + int(math.ceil(0.6 * abs(lam) * r))))
        return KernelEval(val, 1e-13, 0, "dual abel of cosine")
    raise ValueError(f"unknown branch {branch!r}")


def hyp_phi_vec(lam, r, n: int) -> np.ndarray:
    """``phi_lam(r)`` of ``H^n`` on the grid ``lam x r`` (real ``lam``), via the dual Abel integral."""
    n = _check_dim(n)
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    r = np.atleast_1d(np.asarray(r, dtype=float))
    order = 40 + int(math.ceil(0.6 * float(np.max(np.abs(lam))) * float(np.max(r))))
    nodes, w, scale = _dual_abel_rule(r, n, order)
    out = np.empty((lam.size, r.size))
    for i in range(0, lam.size, 32):
        blk = lam[i : i + 32]
        out[i : i + 32] = np.einsum("lrj,rj->lr", np.cos(blk[:, None, None] * nodes[None]), w) * scale
    out[:, r == 0] = 1.0
    return out


def hyp_harish_chandra(lam: float, r: float, n: int) -> complex:
    """``c(lam) Phi_lam(r) + c(-lam) Phi_-lam(r)`` for ``r > 0``, ``lam != 0``.

    ``Phi_lam(r) = (2 cosh r)**(i lam - rho)
    2F1((rho - i lam)/2, (rho + 1 - i lam)/2; 1 - i lam; cosh(r)**-2)``.
    """
    rho = _rho(n)
    if r <= 0:
        raise ValueError("the expansion needs r > 0")
    z = 1.0 / math.cosh(r) ** 2
    total = 0j
    for sgn in (1, -1):
        il = 1j * lam * sgn
        series = pfq_series([(rho - il) / 2, (rho + 1 - il) / 2], [1 - il], z).value
        Phi = np.exp((il - rho) * math.log(2 * math.cosh(r))) * series
        total += hyp_c_plancherel(sgn * lam, n)[0] * Phi
    return complex(total)


def hyp_c_plancherel(lam, n: int) -> Tuple[complex, float]:
    """``c(lam) = Gamma(2 rho)/Gamma(rho) Gamma(i lam)/Gamma(i lam + rho)`` and ``|c(lam)|**-2``.

    Raises
    ------
    PoleError
        At ``lam = 0``.
    """
    rho = _rho(n)
    if lam == 0:
        raise PoleError("c(lam) has a pole at lam = 0")
    il = 1j * complex(lam)
    c = gamma_c(2 * rho) / gamma_c(rho) * gamma_c(il) / gamma_c(il + rho)
    return complex(c), float(1.0 / abs(c) ** 2)


def hyp_plancherel_product(lam, n: int):
    """Closed form of ``|c(lam)|**-2`` as a polynomial (times ``lam tanh(pi lam)`` for even ``n``).

    Odd ``n``: ``pi/(2**(2n-4) Gamma(n/2)**2) prod_{j=0}^{(n-3)/2} (lam**2 + j**2)``.
    Even ``n``: ``pi/(2**(2n-4) Gamma(n/2)**2) lam tanh(pi lam)
    prod_{j=0}^{n/2-2} (lam**2 + (j+1/2)**2)``.
    """
    n = _check_dim(n)
    lam = np.asarray(lam, dtype=float)
    const = math.pi / (2 ** (2 * n - 4) * math.exp(2 * loggamma_c(n / 2)))
    out = np.full(lam.shape, const)
    if n % 2:
        for j in range((n - 3) // 2 + 1):
            out = out * (lam * lam + j * j)
    else:
        out = out * lam * np.tanh(math.pi * lam)
        for j in range(n // 2 - 1):
            out = out * (lam * lam + (j + 0.5) ** 2)
    return float(out) if out.ndim == 0 else out


def _hyp_nodes(support: float, panels: int = 16):
    return composite_nodes([support * j / panels for j in range(panels + 1)], 20)


def hyp_spherical_transform(f: Callable, lam, n: int, support: float, decay_tol: float = 1e-10) -> np.ndarray:
    """``Hf(lam) = int_{H^n} f phi_lam = 2 pi**(n/2)/Gamma(n/2) int_0^inf sinh(r)**(n-1) f(r) phi_lam(r) dr``.

    Raises
    ------
    InsufficientDecayError
        If the profile has not decayed at ``support``.
    """
    r, w = _hyp_nodes(support)
    fr = np.asarray(f(r), dtype=float)
    peak = max(float(np.max(np.abs(fr))), 1e-300)
    if abs(float(np.asarray(f(np.array([support])))[0])) > decay_tol * peak:
        raise InsufficientDecayError("profile has not decayed at the declared support")
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    phi = hyp_phi_vec(lam, r, n)
    return _surface(n) * (phi @ (w * np.sinh(r) ** (n - 1) * fr))


def _inverse_const(n: int) -> float:
    return 2.0 ** (n - 3) * math.pi ** (-n / 2 - 1) * math.exp(loggamma_c(n / 2))


def inverse_hyp_spherical_transform(H: Callable, r, n: int, band: float, panels: int = 40) -> np.ndarray:
    """``f(r) = 2**(n-3) pi**(-n/2-1) Gamma(n/2) int_0^band |c(lam)|**-2 H(lam) phi_lam(r) dlam``."""
    lam, wl = composite_nodes([band * j / panels for j in range(panels + 1)], 20)
    Hl = np.asarray(H(lam), dtype=float)
    phi = hyp_phi_vec(lam, r, n)
    return _inverse_const(n) * ((wl * hyp_plancherel_product(lam, n) * Hl) @ phi)


def hyp_round_trip_error(f: Callable, rs, n: int, support: float = 1.0, band: float = 40.0, panels: int = 40) -> float:
    """``max |f - inverse(H f)|`` at the radii ``rs``."""
    lam, wl = composite_nodes([band * j / panels for j in range(panels + 1)], 20)
    Hf = hyp_spherical_transform(f, lam, n, support)
    rs = np.atleast_1d(np.asarray(rs, dtype=float))
    back = _inverse_const(n) * ((wl * hyp_plancherel_product(lam, n) * Hf) @ hyp_phi_vec(lam, rs, n))
    return float(np.max(np.abs(back - f(rs))))


# ---------------------------------------------------------------------------
# Abel transform and its dual
# ---------------------------------------------------------------------------


def _check_decay(f: Callable, n: int, cutoff: float):
    rho = _rho(n)
    probe = np.array([0.5 * cutoff, cutoff])
    vals = np.abs(np.asarray(f(probe), dtype=float)) * np.exp(rho * probe)
    if not (vals[1] <= 1e-8 and vals[1] <= vals[0] + 1e-300):
        raise InsufficientDecayError("exp(rho r) f(r) has not decayed at the cutoff")


def hyp_abel(f: Callable, r, n: int, cutoff: float = 40.0, check: bool = True):
    """Abel transform ``Af(r) = (2 pi)**((n-1)/2)/Gamma((n-1)/2)
    int_|r|^inf sinh(s) (cosh s - cosh r)**((n-3)/2) f(s) ds``.

    The integral is cut at ``cutoff``.

    Raises
    ------
    InsufficientDecayError
        If ``exp(rho s) f(s)`` is not negligible at the cutoff.
    """
    n = _check_dim(n)
    if check:
        _check_decay(f, n, cutoff)
    r, scalar = _as_array(r)
    const = (2 * math.pi) ** ((n - 1) / 2) / math.exp(loggamma_c((n - 1) / 2))
    out = np.array([const * _abel_kernel_integral(f, abs(float(v)), (n - 3) / 2, cutoff) for v in r.ravel()])
    out = out.reshape(r.shape)
    return float(out) if scalar else out


def _cosh_panels(upper: float, step: float = 0.5):
    m = max(1, int(math.ceil(upper / step)))
    return [math.cosh(upper * j / m) for j in range(m + 1)]


def hyp_abel_inverse(g: Callable, r, n: int, cutoff: float = 30.0):
    """Inverse Abel transform of an even profile ``g``.

    Odd ``n``: ``(2 pi)**(-(n-1)/2) (-(1/sinh r) d/dr)**((n-1)/2) g(r)``.
    Even ``n``: ``2**(-(n-1)/2) pi**(-n/2) int_|r|^inf (cosh s - cosh r)**(-1/2)
    (-d/ds) (-(1/sinh s) d/ds)**(n/2-1) g(s) ds``.

    With ``x = cosh r`` the operator ``-(1/sinh r) d/dr`` is ``-d/dx``; the
    derivatives are taken on piecewise Chebyshev interpolants of
    ``G(x) = g(arccosh x)``.
    """
    n = _check_dim(n)
    r, scalar = _as_array(r)
    G = lambda y: g(np.arccosh(np.maximum(y, 1.0)))
    if n % 2:
        m = (n - 1) // 2
        top = float(np.max(np.abs(r))) + 1.0
        dG = _PiecewiseCheb(G, _cosh_panels(top), m)
        out = (-1) ** m * dG(np.cosh(r)) / (2 * math.pi) ** m
    else:
        m = n // 2 - 1
        dG = _PiecewiseCheb(G, _cosh_panels(cutoff), m + 1)
        h = lambda s: (-1) ** (m + 1) * dG(np.cosh(s))
        const = 1.0 / (2 ** ((n - 1) / 2) * math.pi ** (n / 2))
        out = np.array([const * _abel_kernel_integral(h, abs(float(v)), -0.5, cutoff) for v in r.ravel()])
        out = out.reshape(r.shape)
    return float(out) if scalar else out


def _dual_abel_const(n: int) -> float:
    return 2 ** ((n - 1) / 2) * math.exp(loggamma_c(n / 2) - loggamma_c((n - 1) / 2)) / math.sqrt(math.pi)


def _dual_abel_rule(r: np.ndarray, n: int, order: int):
    """Nodes ``s_rj`` and weights ``w_rj`` with ``A*g(r) = scale_r * sum_j w_rj g(s_rj)``.

    With ``s = r t`` and ``t = (1+u)/2`` the kernel
    ``(cosh r - cosh s)**p``, ``p = (n-3)/2``, becomes the Jacobi weight
    ``(1-u)**p`` times the smooth factor ``(r sinh((r+s)/2) ratio)**p``.
    """
    p = (n - 3) / 2
    u, wu = gauss_jacobi(order, p, 0.0)
    t = 0.5 * (1 + u)
    rr = np.where(r > 0, r, 1.0)[:, None]
    s = r[:, None] * t[None, :]
    smooth = (rr * np.sinh(0.5 * (rr + rr * t)) * _ratio_sinh(0.5 * rr * (1 - t[None, :]))) ** p
    w = rr * 2.0 ** (-p - 1) * wu[None, :] * smooth
    with np.errstate(divide="ignore", invalid="ignore"):
        scale = _dual_abel_const(n) * np.where(r > 0, np.sinh(r), 1.0) ** (2 - n)
    return s, w, scale


def hyp_dual_abel(g: Callable, r, n: int, order: int = 48):
    """Dual Abel transform ``A*g(r) = 2**((n-1)/2) Gamma(n/2)/(sqrt(pi) Gamma((n-1)/2))
    sinh(r)**(2-n) int_0^r (cosh r - cosh s)**((n-3)/2) g(s) ds``, with ``A*g(0) = g(0)``."""
    n = _check_dim(n)
    r, scalar = _as_array(r)
    flat = np.abs(r.reshape(-1))
    s, w, scale = _dual_abel_rule(flat, n, order)
    vals = np.asarray(g(s))
    out = np.sum(w * vals, axis=1) * scale
    zero = flat == 0
    if np.any(zero):
        out = np.asarray(out, dtype=np.result_type(vals.dtype, float))
        out[zero] = np.asarray(g(np.zeros(1)))[0]
    out = out.reshape(r.shape)
    return out.item() if scalar else out


def _falling(a: float, i: int) -> float:
    out = 1.0
    for k in range(i):
        out *= a - k
    return out


def _power_derivative(K: Callable, a: float, j: int, x: float, window: Tuple[float, float]) -> Tuple[np.ndarray, np.ndarray]:
    """Pieces of ``d^j/dx^j [(x-1)**a K(x)]`` by the Leibniz rule.

    Returns the coefficients ``binom(j,i) a(a-1)..(a-i+1) K^(j-i)(x)`` and
    the exponents ``a - i``, ``i = 0..j``.
    """
    ders = _cheb_derivatives(K, window[0], window[1], x, j)
    coef = np.array([math.comb(j, i) * _falling(a, i) * ders[j - i] for i in range(j + 1)])
    expo = np.array([a - i for i in range(j + 1)])
    return coef, expo


def _dual_inverse_parts(f: Callable, n: int):
    """``(a, K, j)`` with ``H(x) = (x-1)**a K(x)`` and ``j`` the derivative count.

    Odd ``n``: ``H(x) = (x**2-1)**((n-2)/2) f(arccosh x)``.
    Even ``n``: ``H(x) = int_1^x (x-y)**(-1/2) (y**2-1)**((n-2)/2) f(arccosh y) dy``.
    """
    F = lambda y: f(np.arccosh(np.maximum(y, 1.0)))
    if n % 2:
        a = (n - 2) / 2
        return a, (lambda x: (x + 1) ** a * F(x)), (n - 1) // 2
    beta = (n - 2) / 2
    u, wu = gauss_jacobi(48, -0.5, beta)
    t = 0.5 * (1 + u)
    const = 2.0 ** (-0.5 - beta)

    def K(x):
        x = np.asarray(x, dtype=float)
        y = 1 + (x[..., None] - 1) * t
        return const * np.sum(wu * (y + 1) ** beta * F(y), axis=-1)

    return (n - 1) / 2, K, n // 2


def _window(r: float, delta: float = 0.5) -> Tuple[float, float]:
    """Chebyshev window in ``x = cosh`` ending at ``cosh r``; it never looks beyond ``r``."""
    if r <= delta:
        return 1.0, math.cosh(r)
    return math.cosh(r - delta), math.cosh(r)


def _apply_power_derivative(K, a, j, r: float, with_sinh: bool) -> float:
    """``sinh(r)**e d^j/dx^j [(x-1)**a K(x)]`` at ``x = cosh r`` (``e`` is 1 or 0)."""
    x = math.cosh(r)
    xm1 = 2 * math.sinh(r / 2) ** 2
    if r == 0:
        # only the most singular Leibniz term survives: (x-1)**(a-j) ~ 1/sinh r
        if not with_sinh:
            return float(K(np.array([1.0]))[0]) if j == 0 and a == 0 else 0.0
        return math.sqrt(2.0) * _falling(a, j) * float(K(np.array([1.0]))[0])
    coef, expo = _power_derivative(K, a, j, x, _window(r))
    if with_sinh:
        return float(math.sqrt(x + 1) * np.sum(coef * xm1 ** (expo + 0.5)))
    return float(np.sum(coef * xm1**expo))


def hyp_dual_abel_inverse(f: Callable, r, n: int):
    """Inverse of the dual Abel transform.

    Odd ``n``: ``sqrt(pi)/(2**((n-1)/2) Gamma(n/2)) d/dr ((1/sinh r) d/dr)**((n-3)/2)
    {sinh(r)**(n-2) f(r)}``.
    Even ``n``: ``1/(2**((n-1)/2) (n/2-1)!) d/dr ((1/sinh r) d/dr)**(n/2-1)
    int_0^r (cosh r - cosh s)**(-1/2) sinh(s)**(n-1) f(s) ds``.
    Only values of ``f`` on ``[0, r]`` are used.
    """
    n = _check_dim(n)
    r, scalar = _as_array(r)
    a, K, j = _dual_inverse_parts(f, n)
    if n % 2:
        const = math.sqrt(math.pi) / (2 ** ((n - 1) / 2) * math.exp(loggamma_c(n / 2)))
    else:
        const = 1.0 / (2 ** ((n - 1) / 2) * math.exp(loggamma_c(n / 2)))
    out = np.array([const * _apply_power_derivative(K, a, j, abs(float(v)), True) for v in r.ravel()])
    out = out.reshape(r.shape)
    return float(out) if scalar else out


# ---------------------------------------------------------------------------
# Heat, Schrodinger and wave equations
# ---------------------------------------------------------------------------

_SERIES_TERMS = 60
_SERIES_RADIUS = 1.5


def _recip_sinhc_series(K: int) -> np.ndarray:
    """Coefficients of ``r / sinh r`` as a series in ``v = r**2``."""
    s = np.array([1.0 / math.factorial(2 * j + 1) for j in range(K)])
    out = np.zeros(K)
    out[0] = 1.0
    for k in range(1, K):
        out[k] = -np.dot(s[1 : k + 1], out[k - 1 :: -1][:k])
    return out


def _ratio_series(m: int, a: complex, K: int = _SERIES_TERMS) -> np.ndarray:
    """Series in ``v = r**2`` of ``q_m = D^m u / u`` with ``u = exp(-a r**2)`` and ``D = -(1/sinh r) d/dr``.

    ``D(u q) = u (2 a r/sinh r) q - u q'/sinh r``; writing ``q = Q(r**2)``
    gives ``Q_new = R (2 a Q - 2 Q')`` with ``R`` the series of ``r/sinh r``.
    """
    R = _recip_sinhc_series(K)
    Q = np.zeros(K, dtype=complex)
    Q[0] = 1.0
    for _ in range(m):
        dQ = np.zeros(K, dtype=complex)
        dQ[:-1] = np.arange(1, K) * Q[1:]
        inner = 2 * a * Q - 2 * dQ
        Q = np.convolve(R, inner)[:K]
    return Q


def _ratio_terms(m: int, a: complex) -> dict:
    """Terms ``{(i, j, k): c}`` of ``q_m = sum c r**i sinh(r)**-j cosh(r)**k``."""
    q = {(0, 0, 0): 1.0 + 0j}
    for _ in range(m):
        new: dict = {}

        def add(key, val):
            new[key] = new.get(key, 0) + val

        for (i, j, k), c in q.items():
            # 2 a r q / sinh r
            add((i + 1, j + 1, k), 2 * a * c)
            # - q' / sinh r
            if i:
                add((i - 1, j + 1, k), -i * c)
            add((i, j + 2, k + 1), j * c)
            if k:
                add((i, j, k - 1), -k * c)
        q = {key: v for key, v in new.items() if v != 0}
    return q


def _ratio_eval(m: int, a: complex, r) -> np.ndarray:
    """``D^m exp(-a r**2) / exp(-a r**2)`` at ``r >= 0``."""
    r = np.asarray(r, dtype=float)
    out = np.empty(r.shape, dtype=complex)
    small = r <= _SERIES_RADIUS
    if np.any(small):
        Q = _ratio_series(m, a)
        out[small] = np.polynomial.polynomial.polyval(r[small] ** 2, Q)
    if np.any(~small):
        rl = r[~small]
        acc = np.zeros(rl.shape, dtype=complex)
        coth = 1 / np.tanh(rl)
        sh = np.sinh(rl)
        for (i, j, k), c in _ratio_terms(m, a).items():
            acc += c * rl**i * coth**k * sh ** (k - j)
        out[~small] = acc
    return out


def _kernel_scaled(tau: complex, r: float, n: int) -> complex:
    """``h_tau(r) exp(r**2/(4 tau))`` for ``Re tau >= 0`` (heat kernel at complex time)."""
    rho = _rho(n)
    a = 1 / (4 * tau)
    pref = np.exp(-rho * rho * tau) / np.sqrt(tau)
    if n % 2:
        m = (n - 1) // 2
        const = 1.0 / (2 ** ((n + 1) / 2) * math.pi ** (n / 2))
        return complex(const * pref * _ratio_eval(m, a, np.array([r]))[0])
    m = n // 2 - 1
    const = (2 * math.pi) ** (-(n + 1) / 2)
    # (-d/ds) D^m u = sinh(s) D^(m+1) u
    if tau.imag == 0:
        upper = math.sqrt(r * r + 160 * tau.real) + 2
    else:
        # purely oscillatory Gaussian: the algebraic factors decay like exp(-s/2)
        upper = r + 80.0
    h = lambda s: np.exp(-a * (s - r) * (s + r)) * _ratio_eval(m + 1, a, s)
    val = _abel_kernel_integral(h, r, -0.5, upper, order=30)
    return complex(const * pref * val)


def hyp_heat(t: float, r, n: int, log: bool = False):
    """Heat kernel ``h_t(r)`` of ``H^n`` (``log=True`` returns ``log h_t``).

    Odd ``n``: ``2**(-(n+1)/2) pi**(-n/2) t**(-1/2) exp(-rho**2 t)
    (-(1/sinh r) d/dr)**((n-1)/2) exp(-r**2/(4t))``; even ``n`` uses the
    Abel type integral of ``(-d/ds)(-(1/sinh s) d/ds)**(n/2-1) exp(-s**2/(4t))``.

    Raises
    ------
    NonpositiveTimeError
        If ``t <= 0``.
    """
    n = _check_dim(n)
    if not t > 0:
        raise NonpositiveTimeError("the heat kernel needs t > 0")
    r, scalar = _as_array(r)
    vals = []
    for v in np.abs(r.ravel()):
        sc = _kernel_scaled(complex(t), float(v), n).real
        vals.append(math.log(sc) - v * v / (4 * t) if log else sc * math.exp(-v * v / (4 * t)))
    out = np.array(vals).reshape(r.shape)
    return float(out) if scalar else out


def hyp_heat_envelope(t: float, r, n: int, log: bool = False):
    """Two regime envelope of the heat kernel.

    ``exp(-rho**2 t - rho r - r**2/(4t))`` times ``t**(-3/2)(1+r)`` when
    ``t >= 1 + r`` and ``t**(-n/2)(1+r)**((n-1)/2)`` otherwise.
    """
    rho = _rho(n)
    r = np.asarray(r, dtype=float)
    base = -rho * rho * t - rho * r - r * r / (4 * t)
    late = -1.5 * math.log(t) + np.log1p(r)
    early = -n / 2 * math.log(t) + (n - 1) / 2 * np.log1p(r)
    out = base + np.where(t >= 1 + r, late, early)
    return out if log else np.exp(out)


def hyp_heat_sandwich_constants(ts: Sequence[float], rs: Sequence[float], n: int) -> Tuple[float, float]:
    """Smallest and largest value of ``h_t(r) / envelope`` over the grid."""
    lo, hi = math.inf, -math.inf
    for t in ts:
        lh = hyp_heat(t, np.asarray(rs, dtype=float), n, log=True)
        le = hyp_heat_envelope(t, np.asarray(rs, dtype=float), n, log=True)
        d = np.atleast_1d(lh - le)
        lo = min(lo, float(np.min(d)))
        hi = max(hi, float(np.max(d)))
    return math.exp(lo), math.exp(hi)


def hyp_heat_mass(t: float, n: int, panels: int = 48) -> float:
    """``int_{H^n} h_t = 2 pi**(n/2)/Gamma(n/2) int_0^inf sinh(r)**(n-1) h_t(r) dr``."""
    rho = _rho(n)
    upper = 2 * rho * t + 14 * math.sqrt(t) + 4
    r, w = composite_nodes([upper * j / panels for j in range(panels + 1)], 20)
    h = hyp_heat(t, r, n)
    return float(_surface(n) * np.sum(w * np.sinh(r) ** (n - 1) * h))


def hyp_schrodinger_bound(t: float, r: float, n: int) -> Tuple[float, float]:
    """``(|h_{-it}(r)|, envelope)`` for the Schrodinger kernel of ``H^n``.

    The kernel is the heat kernel at complex time ``-i t``; the envelope is
    ``exp(-rho r)`` times ``|t|**(-3/2)(1+r)`` when ``|t| >= 1 + r`` and
    ``|t|**(-n/2)(1+r)**((n-1)/2)`` otherwise.
    """
    n = _check_dim(n)
    if t == 0:
        raise ValueError("the Schrodinger kernel needs t != 0")
    r = abs(float(r))
    val = abs(_kernel_scaled(complex(0.0, -t), r, n))
    rho = _rho(n)
    at = abs(t)
    if at >= 1 + r:
        env = at**-1.5 * (1 + r)
    else:
        env = at ** (-n / 2) * (1 + r) ** ((n - 1) / 2)
    return float(val), float(math.exp(-rho * r) * env)


def hyp_schrodinger_constants(ts: Sequence[float], rs: Sequence[float], n: int) -> float:
    """Largest ``|h_{-it}(r)| / envelope`` over the grid."""
    best = 0.0
    for t in ts:
        for r in rs:
            v, e = hyp_schrodinger_bound(t, r, n)
            best = max(best, v / e)
    return best


def hyp_wave_radial(f: Callable, g: Callable, t: float, n: int) -> float:
    """Solution at the origin of ``u_tt = (Delta + rho**2) u`` with radial data ``u = f``, ``u_t = g``.

    Spherical means about the origin reduce to ``|S(0,s)| f(s)``, so the
    odd dimensional formula becomes
    ``c_n [d/dt ((1/sinh t) d/dt)**((n-3)/2) (sinh(t)**(n-2) f(t))
    + ((1/sinh t) d/dt)**((n-3)/2) (sinh(t)**(n-2) g(t))]`` and the even one
    the matching Abel type integrals over the ball.  Only data on
    ``[0, |t|]`` is used.
    """
    n = _check_dim(n)
    at = abs(float(t))
    if at == 0:
        return float(np.asarray(f(np.zeros(1)))[0])
    u = float(hyp_dual_abel_inverse(f, at, n))
    a, K, j = _dual_inverse_parts(g, n)
    if n % 2:
        const = math.sqrt(math.pi) / (2 ** ((n - 1) / 2) * math.exp(loggamma_c(n / 2)))
    else:
        const = 1.0 / (2 ** ((n - 1) / 2) * math.exp(loggamma_c(n / 2)))
    u += math.copysign(1.0, t) * const * _apply_power_derivative(K, a, j - 1, at, False)
    return u


def hyp_wave_spectral(f: Callable, g: Callable, t: float, n: int, support: float = 1.0, band: float = 40.0) -> float:
    """Same solution through the spherical transform:
    ``u(t, 0) = inverse[cos(lam t) Hf + sin(lam t)/lam Hg](0)``."""
    lam, wl = composite_nodes([band * j / 40 for j in range(41)], 20)
    Hf = hyp_spherical_transform(f, lam, n, support)
    Hg = hyp_spherical_transform(g, lam, n, support)
    spec = np.cos(lam * t) * Hf + np.sin(lam * t) / lam * Hg
    return float(_inverse_const(n) * np.sum(wl * hyp_plancherel_product(lam, n) * spec))


# ---------------------------------------------------------------------------
# Models of H^n
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HypPoint:
    """A point of ``H^n`` in one of three models.

    ``"hyperboloid"``: ``coords = (x_0, .., x_n)`` with ``-x_0**2 + |x'|**2 = -1``, ``x_0 >= 1``;
    ``"halfspace"``: ``coords = (y_1, .., y_n)`` with ``y_n > 0``;
    ``"ball"``: ``coords = (z_1, .., z_n)`` with ``|z| < 1``.
    """

    model: str
    coords: Tuple[float, ...]

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float)
        object.__setattr__(self, "coords", tuple(float(v) for v in c))
        if self.model == "hyperboloid":
            if c.size < 3:
                raise ModelInvariantError("hyperboloid points need n + 1 >= 3 coordinates")
            lor = -c[0] ** 2 + np.sum(c[1:] ** 2)
            if c[0] < 1 - 1e-12 or abs(lor + 1) > 1e-9 * max(1.0, c[0] ** 2):
                raise ModelInvariantError("point is not on the upper sheet L(x,x) = -1")
        elif self.model == "halfspace":
            if c.size < 2 or not c[-1] > 0:
                raise ModelInvariantError("half space points need y_n > 0")
        elif self.model == "ball":
            if c.size < 2 or not np.sum(c**2) < 1:
                raise ModelInvariantError("ball points need |z| < 1")
        else:
            raise ModelInvariantError(f"unknown model {self.model!r}")

    @property
    def dim(self) -> int:
        return len(self.coords) - 1 if self.model == "hyperboloid" else len(self.coords)


def _to_hyperboloid(p: HypPoint) -> np.ndarray:
    c = np.asarray(p.coords)
    if p.model == "hyperboloid":
        return c
    if p.model == "halfspace":
        y2 = np.sum(c**2)
        yn = c[-1]
        return np.concatenate([[(1 + y2) / (2 * yn)], c[:-1] / yn, [(1 - y2) / (2 * yn)]])
    z2 = np.sum(c**2)
    return np.concatenate([[(1 + z2) / (1 - z2)], 2 * c / (1 - z2)])


def model_convert(p: HypPoint, target: str) -> HypPoint:
    """Convert ``p`` to the ``target`` model with the stereographic and inversion maps.

    Raises
    ------
    ModelInvariantError
        For an unknown target (invalid points are rejected on construction).
    """
    if target == p.model:
        return p
    c = np.asarray(p.coords)
    if target == "hyperboloid":
        return HypPoint("hyperboloid", tuple(_to_hyperboloid(p)))
    if target == "ball":
        if p.model == "halfspace":
            y2 = np.sum(c**2)
            den = 1 + y2 + 2 * c[-1]
            z = np.concatenate([2 * c[:-1] / den, [(1 - y2) / den]])
        else:
            z = c[1:] / (1 + c[0])
        return HypPoint("ball", tuple(z))
    if target == "halfspace":
        if p.model == "ball":
            z2 = np.sum(c**2)
            den = 1 + z2 + 2 * c[-1]
            y = np.concatenate([2 * c[:-1] / den, [(1 - z2) / den]])
        else:
            s = c[0] + c[-1]
            y = np.concatenate([c[1:-1] / s, [1 / s]])
        return HypPoint("halfspace", tuple(y))
    raise ModelInvariantError(f"unknown model {target!r}")


def hyp_distance(p: HypPoint) -> float:
    """Distance to the base point: ``arccosh x_0`` or ``2 artanh |z|``."""
    if p.model == "ball":
        return 2 * math.atanh(math.sqrt(sum(v * v for v in p.coords)))
    return math.acosh(max(1.0, float(_to_hyperboloid(p)[0])))
