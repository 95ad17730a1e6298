"""Exact spherical analysis on the homogeneous tree ``T_q``.

``T_q`` is the tree in which every vertex has ``q + 1`` neighbours.  Radial
functions are finitely supported maps ``r -> f(r)`` on the radii
``0, 1, 2, ...``.  Horocyclic functions are maps ``h -> g(h)`` on the
integers, with ``h`` the height along a fixed oriented geodesic ``omega``.

Many of the transforms carry half-integer powers ``q**(m/2)``.  To keep
them exact, values are elements of the quadratic field ``Q(sqrt(q))``
represented by :class:`Surd`.  With rational inputs, every Abel, dual Abel
and wave computation is an exact identity in this field.  Spectral objects
in ``lam`` (spherical functions, the c-function, the spherical transform)
are complex floating point numbers.

A literal finite ball ``B(0, D)`` of the tree, with radii and heights on
every vertex, is available from :func:`brute_force_oracle`.  It is used to
check the radial recursions against direct sums over the graph.
"""

from __future__ import annotations

import cmath
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .numerics import PoleError, QuadratureError

__all__ = [
    "Surd",
    "RadialSeq",
    "HoroSeq",
    "FiniteTree",
    "TreeSizeError",
    "half_power",
    "sphere_volume",
    "tree_tau",
    "tree_gamma",
    "gamma0",
    "gamma0_exact",
    "is_singular",
    "c_tree",
    "c_tree_density",
    "tree_phi",
    "radial_average",
    "sphere_sum",
    "mean_operator",
    "radial_mass",
    "spherical_transform_tree",
    "inverse_spherical_transform_tree",
    "tree_round_trip_error",
    "fourier_z",
    "abel_tree",
    "abel_tree_seq",
    "abel_inverse_tree",
    "abel_inverse_seq",
    "dual_abel_tree",
    "dual_abel_seq",
    "dual_abel_inverse",
    "duality_pairing",
    "heat_walk",
    "heat_walk_profile",
    "heat_estimate",
    "heat_estimate_constants",
    "spectral_radius_estimate",
    "wave_tree",
    "wave_residual",
    "brute_force_oracle",
]

# ---------------------------------------------------------------------------
# Exact arithmetic in Q(sqrt(q))
# ---------------------------------------------------------------------------


def _is_square(q: int) -> Optional[int]:
    s = math.isqrt(q)
    return s if s * s == q else None


class Surd:
    """Element ``a + b*sqrt(q)`` of the field ``Q(sqrt(q))``.

    ``a`` and ``b`` are usually :class:`Fraction`; floats are accepted and
    propagate, which gives the same formulas in floating point.  When ``q``
    is a perfect square the irrational part is folded into ``a``.

    Parameters
    ----------
    a, b : int, Fraction or float
        Rational and irrational coordinates.
    q : int
        The radicand, ``q >= 2``.
    """

    __slots__ = ("a", "b", "q")

    def __init__(self, a=0, b=0, q: int = 2):
        s = _is_square(q)
        if s is not None and b != 0:
            a, b = a + b * s, 0
        self.a = a
        self.b = b
        self.q = q

    def _coerce(self, other) -> "Surd":
        if isinstance(other, Surd):
            if other.q != self.q:
                raise ValueError(f"mixing Q(sqrt({self.q})) and Q(sqrt({other.q}))")
            return other
        if isinstance(other, (int, Fraction, float)):
            return Surd(other, 0, self.q)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Surd(self.a + o.a, self.b + o.b, self.q)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.q)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Surd(self.a - o.a, self.b - o.b, self.q)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Surd(self.a * o.a + self.q * self.b * o.b, self.a * o.b + self.b * o.a, self.q)

    __rmul__ = __mul__

    def inverse(self) -> "Surd":
        norm = self.a * self.a - self.q * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("Surd division by zero")
        return Surd(self.a / norm if isinstance(norm, float) else Fraction(self.a) / norm,
                    -self.b / norm if isinstance(norm, float) else -Fraction(self.b) / norm, self.q)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return Surd(other, 0, self.q) * self.inverse()

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.q))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.q)

    def __complex__(self) -> complex:
        return complex(float(self))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __repr__(self) -> str:
        return f"Surd({self.a}, {self.b}, q={self.q})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.q})"


def half_power(q: int, m: int) -> Surd:
    """Exact ``q**(m/2)`` as a :class:`Surd`."""
    if m % 2 == 0:
        return Surd(Fraction(q) ** (m // 2), 0, q)
    return Surd(0, Fraction(q) ** ((m - 1) // 2), q)


def _is_zero(v) -> bool:
    return v.is_zero() if isinstance(v, Surd) else v == 0


# ---------------------------------------------------------------------------
# Sequences
# ---------------------------------------------------------------------------


def _check_q(q: int) -> int:
    if int(q) != q or q < 2:
        raise ValueError(f"q must be an integer >= 2, got {q!r}")
    return int(q)


@dataclass
class RadialSeq:
    """Finitely supported radial function ``r -> f(r)`` on ``T_q``.

    Parameters
    ----------
    q : int
        Branching number; every vertex has ``q + 1`` neighbours.
    values : dict
        Map from radius ``r >= 0`` to a value.  Missing radii are zero.
    """

    q: int
    values: Dict[int, object] = field(default_factory=dict)

    def __post_init__(self):
        self.q = _check_q(self.q)
        for r in self.values:
            if int(r) != r or r < 0:
                raise ValueError(f"radii must be nonnegative integers, got {r!r}")
        self.values = {int(r): v for r, v in self.values.items() if not _is_zero(v)}

    @classmethod
    def from_list(cls, q: int, seq: Sequence) -> "RadialSeq":
        """Build from the list ``[f(0), f(1), ...]``."""
        return cls(q, {r: v for r, v in enumerate(seq)})

    @classmethod
    def delta(cls, q: int, r: int = 0) -> "RadialSeq":
        """Indicator of the sphere of radius ``r``."""
        return cls(q, {r: Fraction(1)})

    def __call__(self, r: int):
        return self.values.get(r, 0)

    @property
    def support(self) -> int:
        """Largest radius carrying a nonzero value, or -1 for the zero function."""
        return max(self.values, default=-1)

    def to_list(self, length: Optional[int] = None) -> list:
        n = self.support + 1 if length is None else length
        return [self(r) for r in range(n)]

    def __add__(self, other: "RadialSeq") -> "RadialSeq":
        keys = set(self.values) | set(other.values)
        return RadialSeq(self.q, {r: self(r) + other(r) for r in keys})

    def __sub__(self, other: "RadialSeq") -> "RadialSeq":
        keys = set(self.values) | set(other.values)
        return RadialSeq(self.q, {r: self(r) - other(r) for r in keys})

    def scale(self, c) -> "RadialSeq":
        return RadialSeq(self.q, {r: c * v for r, v in self.values.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, RadialSeq) or other.q != self.q:
            return False
        keys = set(self.values) | set(other.values)
        return all(_is_zero(self(r) - other(r)) if isinstance(self(r), Surd) or isinstance(other(r), Surd)
                   else self(r) == other(r) for r in keys)


@dataclass
class HoroSeq:
    """Finitely supported function ``h -> g(h)`` on the heights ``h`` in ``Z``."""

    values: Dict[int, object] = field(default_factory=dict)

    def __post_init__(self):
        self.values = {int(h): v for h, v in self.values.items() if not _is_zero(v)}

    def __call__(self, h: int):
        return self.values.get(h, 0)

    @property
    def support(self) -> int:
        """Largest ``|h|`` carrying a nonzero value, or -1 for the zero function."""
        return max((abs(h) for h in self.values), default=-1)

    def is_even(self) -> bool:
        return all(_eq(self(h), self(-h)) for h in self.values)


def _eq(a, b) -> bool:
    return _is_zero(a - b) if isinstance(a, Surd) or isinstance(b, Surd) else a == b


# ---------------------------------------------------------------------------
# Basic constants
# ---------------------------------------------------------------------------


def sphere_volume(q: int, r: int) -> int:
    """Number of vertices at distance ``r`` from a point: ``1`` or ``(q+1) q**(r-1)``."""
    q = _check_q(q)
    if r < 0:
        raise ValueError("radius must be nonnegative")
    return 1 if r == 0 else (q + 1) * q ** (r - 1)


def tree_tau(q: int) -> float:
    """Spectral period ``tau = 2 pi / log q``."""
    return 2.0 * math.pi / math.log(_check_q(q))


def _qpow(q: int, z: complex) -> complex:
    return cmath.exp(z * math.log(q))


def tree_gamma(lam, q: int) -> complex:
    """Eigenvalue ``gamma(lam) = (q**(i lam) + q**(-i lam)) / (q**(1/2) + q**(-1/2))`` of ``A``."""
    q = _check_q(q)
    return (_qpow(q, 1j * lam) + _qpow(q, -1j * lam)) / (math.sqrt(q) + 1.0 / math.sqrt(q))


def gamma0(q: int) -> float:
    """Spectral radius ``gamma(0) = 2 / (q**(1/2) + q**(-1/2))`` of the average operator."""
    q = _check_q(q)
    return 2.0 / (math.sqrt(q) + 1.0 / math.sqrt(q))


def gamma0_exact(q: int) -> Surd:
    """``gamma(0) = 2 sqrt(q) / (q + 1)`` in ``Q(sqrt(q))``."""
    q = _check_q(q)
    return Surd(0, Fraction(2, q + 1), q)


def is_singular(lam, q: int, tol: float = 1e-12) -> Optional[int]:
    """Return ``j`` if ``lam`` lies within ``tol`` of ``(tau/2) j``, otherwise ``None``."""
    lam = complex(lam)
    if abs(lam.imag) > tol:
        return None
    x = 2.0 * lam.real / tree_tau(q)
    j = round(x)
    return int(j) if abs(x - j) * tree_tau(q) / 2.0 <= tol else None


def c_tree(lam, q: int) -> complex:
    """Harish-Chandra function of ``T_q``.

    ``c(lam) = (q**(1/2 + i lam) - q**(-1/2 - i lam)) / ((q**(1/2) + q**(-1/2)) (q**(i lam) - q**(-i lam)))``.

    Raises
    ------
    PoleError
        If ``lam`` lies in ``(tau/2) Z``, where the denominator vanishes.
    """
    q = _check_q(q)
    if is_singular(lam, q) is not None:
        raise PoleError(f"c(lam) has a pole at lam = {lam} for q = {q}")
    s = math.sqrt(q)
    num = s * _qpow(q, 1j * lam) - _qpow(q, -1j * lam) / s
    den = (s + 1.0 / s) * (_qpow(q, 1j * lam) - _qpow(q, -1j * lam))
    return num / den


def c_tree_density(lam, q: int) -> float:
    """Plancherel density ``|c(lam)|**-2`` for real ``lam``; zero on ``(tau/2) Z``."""
    q = _check_q(q)
    s = math.sqrt(q)
    num = (s + 1.0 / s) * abs(_qpow(q, 1j * lam) - _qpow(q, -1j * lam))
    den = abs(s * _qpow(q, 1j * lam) - _qpow(q, -1j * lam) / s)
    return (num / den) ** 2


def tree_phi(lam, r: int, q: int, branch: str = "explicit") -> complex:
    """Spherical function ``phi_lam(r)`` of ``T_q``.

    Parameters
    ----------
    lam : complex
        Spectral parameter.
    r : int
        Radius, ``r >= 0``.
    q : int
        Branching number.
    branch : {"explicit", "recursion"}
        ``"explicit"`` uses ``c(lam) q**((-1/2 + i lam) r) + c(-lam) q**((-1/2 - i lam) r)``,
        switching to the closed form
        ``(-1)**(j r) (1 + r (q**(1/2) - q**(-1/2)) / (q**(1/2) + q**(-1/2))) q**(-r/2)``
        at ``lam = (tau/2) j``.  ``"recursion"`` runs the eigen-relation
        ``A phi = gamma(lam) phi`` outward from ``phi(0) = 1``.

    Returns
    -------
    complex
    """
    q = _check_q(q)
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if branch == "recursion":
        g = tree_gamma(lam, q)
        prev, cur = 1.0 + 0j, g
        if r == 0:
            return prev
        for _ in range(1, r):
            prev, cur = cur, ((q + 1) * g * cur - prev) / q
        return cur
    if branch != "explicit":
        raise ValueError(f"unknown branch {branch!r}")
    j = is_singular(lam, q)
    s = math.sqrt(q)
    if j is not None:
        sign = -1.0 if (j * r) % 2 else 1.0
        return complex(sign * (1.0 + (s - 1.0 / s) / (s + 1.0 / s) * r) * q ** (-r / 2.0))
    c_plus = c_tree(lam, q)
    c_minus = c_tree(-lam, q)
    return c_plus * _qpow(q, (-0.5 + 1j * lam) * r) + c_minus * _qpow(q, (-0.5 - 1j * lam) * r)


# ---------------------------------------------------------------------------
# Radial operators
# ---------------------------------------------------------------------------


def sphere_sum(f: RadialSeq, d: int) -> RadialSeq:
    """Radial form of ``x -> sum_{d(y, x) = d} f(y)``.

    Built from ``S_0 = I``, ``S_1 S_1 = S_2 + (q+1) I`` and
    ``S_1 S_d = S_{d+1} + q S_{d-1}`` for ``d >= 2``.
    """
    if d < 0:
        raise ValueError("sphere radius must be nonnegative")
    q = f.q
    if d == 0:
        return RadialSeq(q, dict(f.values))
    s1 = _neighbour_sum
    prev, cur = f, s1(f)
    for k in range(1, d):
        nxt = s1(cur) - prev.scale(q + 1 if k == 1 else q)
        prev, cur = cur, nxt
    return cur


def _neighbour_sum(f: RadialSeq) -> RadialSeq:
    q = f.q
    out: Dict[int, object] = {}
    top = f.support
    for r in range(0, top + 2):
        if r == 0:
            v = (q + 1) * f(1)
        else:
            v = f(r - 1) + q * f(r + 1)
        out[r] = v
    return RadialSeq(q, out)


def radial_average(f: RadialSeq) -> RadialSeq:
    """Average operator ``A f(x) = (q+1)**-1 sum_{|y - x| = 1} f(y)`` on radial ``f``.

    For ``r >= 1`` this is ``(f(r-1) + q f(r+1)) / (q+1)``; at the origin it is ``f(1)``.
    """
    q = f.q
    return _neighbour_sum(f).scale(Fraction(1, q + 1))


def mean_operator(f: RadialSeq, t: int) -> RadialSeq:
    """``M_t f(x) = q**(-t/2) sum f(y)`` over ``d(y, x) <= t`` with ``t - d(y, x)`` even.

    ``M_t = 0`` for ``t < 0``.  Values are exact :class:`Surd` numbers.
    """
    q = f.q
    if t < 0:
        return RadialSeq(q, {})
    total = RadialSeq(q, {})
    s_prev = f
    s_cur = _neighbour_sum(f)
    for d in range(0, t + 1):
        sd = s_prev if d == 0 else s_cur
        if (t - d) % 2 == 0:
            total = total + sd
        if d >= 1:
            nxt = _neighbour_sum(s_cur) - s_prev.scale(q + 1 if d == 1 else q)
            s_prev, s_cur = s_cur, nxt
    return total.scale(half_power(q, -t))


def radial_mass(f: RadialSeq):
    """Total mass ``sum_x f(|x|) = sum_r delta(r) f(r)`` under the counting measure."""
    return sum((sphere_volume(f.q, r) * v for r, v in f.values.items()), Fraction(0))


# ---------------------------------------------------------------------------
# Spherical transform
# ---------------------------------------------------------------------------


def spherical_transform_tree(f: RadialSeq, lam) -> complex:
    """``H f(lam) = sum_x f(x) phi_lam(x) = sum_r delta(r) f(r) phi_lam(r)``.

    This is a finite sum; it is even and ``tau``-periodic in ``lam``.
    """
    total = 0j
    for r, v in f.values.items():
        total += sphere_volume(f.q, r) * complex(v) * tree_phi(lam, r, f.q)
    return total


def inverse_spherical_transform_tree(
    H: Callable[[float], complex],
    r: int,
    q: int,
    tol: float = 1e-12,
    start: int = 16,
    max_level: int = 14,
) -> float:
    """Recover ``f(r)`` from ``H = Hf`` sampled on ``[0, tau/2]``.

    ``f(r) = q**(1/2) / (q**(1/2) + q**(-1/2)) / tau * int_0^{tau/2} |c|**-2 H(lam) phi_lam(r) dlam``.

    The integrand is smooth, even and ``tau``-periodic, so the trapezoid rule
    converges geometrically.  The step is halved until two successive values
    agree to ``tol``.

    Raises
    ------
    QuadratureError
        If ``max_level`` halvings do not reach ``tol``.
    """
    q = _check_q(q)
    tau = tree_tau(q)
    s = math.sqrt(q)
    pref = s / (s + 1.0 / s) / tau

    def integrand(lam: float) -> complex:
        return c_tree_density(lam, q) * complex(H(lam)) * tree_phi(lam, r, q)

    n = start
    h = tau / 2.0 / n
    samples = [integrand(k * h) for k in range(n + 1)]
    prev = h * (sum(samples) - 0.5 * (samples[0] + samples[-1]))
    for _ in range(max_level):
        h_new = h / 2.0
        mids = sum(integrand((2 * k + 1) * h_new) for k in range(n))
        cur = 0.5 * prev + h_new * mids
        n *= 2
        h = h_new
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return float((pref * cur).real)
        prev = cur
    raise QuadratureError(f"tree inversion missed tol {tol} at r = {r}", best=float((pref * prev).real))


def tree_round_trip_error(f: RadialSeq, tol: float = 1e-12) -> float:
    """Max error of ``inverse(H f)`` against ``f`` on ``0 <= r <= support + 2``."""
    err = 0.0
    for r in range(f.support + 3):
        back = inverse_spherical_transform_tree(lambda lam: spherical_transform_tree(f, lam), r, f.q, tol=tol)
        err = max(err, abs(back - float(f(r))))
    return err


def fourier_z(g: HoroSeq, lam, q: int) -> complex:
    """Fourier variant ``F g(lam) = sum_h q**(i lam h) g(h)`` on ``Z``."""
    q = _check_q(q)
    return sum((_qpow(q, 1j * lam * h) * complex(v) for h, v in g.values.items()), 0j)


# ---------------------------------------------------------------------------
# Abel transforms
# ---------------------------------------------------------------------------


def abel_tree(f: RadialSeq, h: int) -> Surd:
    """Horocyclic Abel transform of a radial function.

    ``A f(h) = q**(|h|/2) f(|h|) + (q-1)/q sum_{j >= 1} q**(|h|/2 + j) f(|h| + 2j)``,
    a finite sum for finitely supported ``f``.
    """
    q = f.q
    m = abs(h)
    tail = Fraction(0)
    j = 1
    while m + 2 * j <= f.support:
        tail = tail + Fraction(q) ** j * f(m + 2 * j)
        j += 1
    return half_power(q, m) * (f(m) + Fraction(q - 1, q) * tail)


def abel_tree_seq(f: RadialSeq) -> HoroSeq:
    """Abel transform on every height where it can be nonzero."""
    return HoroSeq({h: abel_tree(f, h) for h in range(-f.support, f.support + 1)})


def abel_inverse_tree(g: HoroSeq, r: int, q: int) -> Surd:
    """Inverse Abel transform ``sum_{j >= 0} q**(-r/2 - j) (g(r + 2j) - g(r + 2j + 2))``."""
    q = _check_q(q)
    if r < 0:
        raise ValueError("radius must be nonnegative")
    total = Surd(0, 0, q)
    j = 0
    while r + 2 * j <= g.support:
        total = total + half_power(q, -r - 2 * j) * (g(r + 2 * j) - g(r + 2 * j + 2))
        j += 1
    return total


def abel_inverse_seq(g: HoroSeq, q: int) -> RadialSeq:
    return RadialSeq(q, {r: abel_inverse_tree(g, r, q) for r in range(g.support + 1)})


def dual_abel_tree(g: HoroSeq, r: int, q: int) -> Surd:
    """Dual Abel transform of an even function on ``Z``.

    ``A* g(0) = g(0)`` and, for ``r >= 1``,
    ``A* g(r) = 2q/(q+1) q**(-r/2) g(r) + (q-1)/(q+1) q**(-r/2) sum g(h)``
    over ``-r < h < r`` with ``h = r (mod 2)``.
    """
    q = _check_q(q)
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if r == 0:
        return Surd(g(0), 0, q)
    inner = sum((g(h) for h in range(-r + 2, r, 2)), Fraction(0))
    return half_power(q, -r) * (Fraction(2 * q, q + 1) * g(r) + Fraction(q - 1, q + 1) * inner)


def dual_abel_seq(g: HoroSeq, q: int, radius: int) -> RadialSeq:
    return RadialSeq(q, {r: dual_abel_tree(g, r, q) for r in range(radius + 1)})


def dual_abel_inverse(f: RadialSeq, h: int) -> Surd:
    """Inverse of the dual Abel transform, evaluated at height ``h``.

    ``(A*)**-1 f(0) = f(0)``.  For ``h >= 1``,
    ``(q**(1/2) + q**(-1/2))/2 q**((h-1)/2) f(h) - (q - 1/q)/2 q**(-h/2) sum q**r f(r)``
    over ``0 < r < h`` of the parity of ``h``; for even ``h`` there is the extra term
    ``-(q**(1/2) - q**(-1/2))/2 q**(-(h-1)/2) f(0)``.  Negative ``h`` use evenness.
    """
    q = f.q
    m = abs(h)
    if m == 0:
        return Surd(f(0), 0, q)
    s_plus = half_power(q, 1) + half_power(q, -1)
    s_minus = half_power(q, 1) - half_power(q, -1)
    out = s_plus * Fraction(1, 2) * half_power(q, m - 1) * f(m)
    inner = sum((Fraction(q) ** r * f(r) for r in range(2 - m % 2, m, 2)), Fraction(0))
    out = out - Fraction(q * q - 1, 2 * q) * half_power(q, -m) * inner
    if m % 2 == 0:
        out = out - s_minus * Fraction(1, 2) * half_power(q, -(m - 1)) * f(0)
    return out


def duality_pairing(f: RadialSeq, g: HoroSeq) -> Tuple[Surd, Surd]:
    """Both sides of ``sum_x f(x) A*g(|x|) = sum_h A f(h) g(h)``."""
    q = f.q
    left = Surd(0, 0, q)
    for r, v in f.values.items():
        left = left + sphere_volume(q, r) * v * dual_abel_tree(g, r, q)
    right = Surd(0, 0, q)
    for h, v in g.values.items():
        right = right + abel_tree(f, h) * v
    return left, right


# ---------------------------------------------------------------------------
# Heat (simple random walk)
# ---------------------------------------------------------------------------


def heat_walk_profile(t: int, q: int) -> RadialSeq:
    """Radial profile of ``h_t = A**t delta_0``, exact rationals."""
    q = _check_q(q)
    if t < 0:
        raise ValueError("time must be a nonnegative integer")
    u = RadialSeq.delta(q)
    for _ in range(t):
        u = radial_average(u)
    return u


def heat_walk(t: int, r: int, q: int) -> Fraction:
    """Transition probability of the simple random walk to a vertex at distance ``r`` after ``t`` steps."""
    return Fraction(heat_walk_profile(t, q)(r))


def _psi(z: float) -> float:
    out = 0.5 * (1.0 + z) * math.log1p(z)
    if z < 1.0:
        out += 0.5 * (1.0 - z) * math.log1p(-z)
    return out


def heat_estimate(t: int, r: int, q: int) -> float:
    """Two-sided envelope for ``h_t(r)``.

    ``(1 + r) / ((1 + t) sqrt(1 + t - r)) gamma0**t q**(-r/2) exp(-t psi((1 + r)/(1 + t)))``
    with ``psi(z) = (1+z)/2 log(1+z) + (1-z)/2 log(1-z)``, the large deviation
    rate of a symmetric walk on ``Z``.  With a minus sign in front of the second
    term the envelope decays exponentially faster than ``h_t`` in the bulk
    ``0 < r/t < 1`` and no two-sided constant exists.
    """
    q = _check_q(q)
    z = (1.0 + r) / (1.0 + t)
    log_env = (
        math.log1p(r)
        - math.log1p(t)
        - 0.5 * math.log(1.0 + t - r)
        + t * math.log(gamma0(q))
        - 0.5 * r * math.log(q)
        - t * _psi(z)
    )
    return math.exp(log_env)


def heat_estimate_constants(ts: Iterable[int], q: int) -> Tuple[float, float]:
    """Extreme ratios ``h_t(r) / envelope`` over ``t`` in ``ts`` and admissible ``r``.

    Admissible means ``0 <= r <= t`` with ``r = t (mod 2)``.
    """
    lo, hi = math.inf, 0.0
    for t in ts:
        prof = heat_walk_profile(t, q)
        for r in range(t % 2, t + 1, 2):
            ratio = float(prof(r)) / heat_estimate(t, r, q)
            lo, hi = min(lo, ratio), max(hi, ratio)
    return lo, hi


def spectral_radius_estimate(t: int, q: int, method: str = "root") -> float:
    """Empirical spectral radius of ``A`` from the orbit of ``delta_0``.

    ``"root"`` returns ``||A**t delta_0||_2**(1/t)`` and ``"ratio"`` returns
    ``||A**(t+1) delta_0||_2 / ||A**t delta_0||_2``.  Both tend to ``gamma0``.
    """
    def norm2(k: int) -> float:
        prof = heat_walk_profile(k, q)
        return math.sqrt(float(sum(sphere_volume(q, r) * v * v for r, v in prof.values.items())))

    if method == "root":
        return norm2(t) ** (1.0 / t)
    if method == "ratio":
        return norm2(t + 1) / norm2(t)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# Shifted wave equation
# ---------------------------------------------------------------------------


def wave_tree(f: RadialSeq, g: RadialSeq, t: int, convention: str = "initial") -> RadialSeq:
    """Solution ``u(., t) = C_t f + S_t g`` of the discrete shifted wave equation.

    ``C_t = (M_|t| - M_{|t|-2}) / 2`` and ``S_t = sign(t) M_{|t|-1}``.

    Parameters
    ----------
    f, g : RadialSeq
        Initial data ``u(., 0)`` and ``(u(., 1) - u(., -1)) / 2``.
    t : int
        Discrete time.
    convention : {"initial", "literal"}
        ``"literal"`` reads ``M_s = 0`` for every ``s < 0``, so that ``C_0 = f / 2``.
        ``"initial"`` (default) takes ``C_0 = I``, which is ``M_{-2} = -M_0``
        as in the Chebyshev recursion ``M_1 M_s = M_{s+1} + M_{s-1}``.  Only
        this choice meets ``u(., 0) = f`` and the equation at ``t in {0, +-1}``.

    Returns
    -------
    RadialSeq
        Values in ``Q(sqrt(q))``.
    """
    if f.q != g.q:
        raise ValueError("f and g must live on the same tree")
    if convention not in ("initial", "literal"):
        raise ValueError(f"unknown convention {convention!r}")
    a = abs(t)
    if a == 0 and convention == "initial":
        cos_part = f
    else:
        cos_part = (mean_operator(f, a) - mean_operator(f, a - 2)).scale(Fraction(1, 2))
    sign = (t > 0) - (t < 0)
    sin_part = mean_operator(g, a - 1).scale(sign)
    return cos_part + sin_part


def wave_residual(f: RadialSeq, g: RadialSeq, t: int, convention: str = "initial") -> RadialSeq:
    """``gamma0 Delta_t u - (Delta_x + 1 - gamma0) u`` at time ``t``; zero for an exact solution.

    ``Delta_t u(t) = (u(t+1) + u(t-1)) / 2 - u(t)`` and ``Delta_x = A - I``.
    """
    q = f.q
    g0 = gamma0_exact(q)
    u_m = wave_tree(f, g, t - 1, convention)
    u_0 = wave_tree(f, g, t, convention)
    u_p = wave_tree(f, g, t + 1, convention)
    lhs = ((u_p + u_m).scale(Fraction(1, 2)) - u_0).scale(g0)
    rhs = radial_average(u_0) - u_0.scale(g0)
    return lhs - rhs


# ---------------------------------------------------------------------------
# Finite graph oracle
# ---------------------------------------------------------------------------


class TreeSizeError(ValueError):
    """Raised when a requested finite ball exceeds the vertex cap."""


MAX_VERTICES = 1 + 4 * (3 ** 8 - 1) // 2


@dataclass
class FiniteTree:
    """The ball ``B(0, D)`` of ``T_q`` as an explicit graph.

    Attributes
    ----------
    q, depth : int
        Branching number and radius ``D`` of the ball.
    adjacency : list of list of int
        Neighbours of every vertex inside the ball.
    radius : list of int
        ``|x|``, the distance to the origin (vertex 0).
    height : list of int
        Horocyclic height ``h(x)``.  The geodesic ray ``omega(1), omega(2), ...``
        points upward: each vertex has one neighbour of height ``h + 1`` (its
        parent) and ``q`` neighbours of height ``h - 1``.
    """

    q: int
    depth: int
    adjacency: List[List[int]]
    radius: List[int]
    height: List[int]

    @property
    def size(self) -> int:
        return len(self.radius)

    def interior(self, margin: int = 1) -> List[int]:
        """Vertices whose ``margin``-ball lies inside the finite ball."""
        return [v for v in range(self.size) if self.radius[v] <= self.depth - margin]

    def lift(self, f: RadialSeq) -> list:
        """Values of a radial function on every vertex."""
        return [f(r) for r in self.radius]

    def average(self, values: Sequence, vertices: Optional[Iterable[int]] = None) -> Dict[int, object]:
        """Literal ``A f(x) = (q+1)**-1 sum_{y ~ x} f(y)`` on interior vertices."""
        vs = self.interior(1) if vertices is None else vertices
        w = Fraction(1, self.q + 1)
        return {v: w * sum((values[y] for y in self.adjacency[v]), Fraction(0)) for v in vs}

    def distances_from(self, x: int, limit: int) -> Dict[int, int]:
        """Breadth-first distances from ``x`` up to ``limit``."""
        dist = {x: 0}
        queue = deque([x])
        while queue:
            v = queue.popleft()
            if dist[v] == limit:
                continue
            for y in self.adjacency[v]:
                if y not in dist:
                    dist[y] = dist[v] + 1
                    queue.append(y)
        return dist

    def mean_operator(self, values: Sequence, t: int, vertices: Optional[Iterable[int]] = None) -> Dict[int, Surd]:
        """Literal ``M_t`` as a sum over the graph, on vertices with ``|x| + t <= D``."""
        vs = self.interior(t) if vertices is None else vertices
        out: Dict[int, Surd] = {}
        scale = half_power(self.q, -t)
        for x in vs:
            dist = self.distances_from(x, t)
            acc = sum((values[y] for y, d in dist.items() if (t - d) % 2 == 0), Fraction(0))
            out[x] = scale * acc
        return out

    def horocycle_sum(self, f: RadialSeq, h: int) -> Surd:
        """``q**(h/2) sum_{h(x) = h} f(|x|)`` over the ball."""
        acc = sum((f(self.radius[v]) for v in range(self.size) if self.height[v] == h), Fraction(0))
        return half_power(self.q, h) * acc

    def sphere_height_sum(self, g: HoroSeq, r: int) -> Surd:
        """``delta(r)**-1 sum_{|x| = r} q**(h(x)/2) g(h(x))``."""
        acc = Surd(0, 0, self.q)
        for v in range(self.size):
            if self.radius[v] == r:
                acc = acc + half_power(self.q, self.height[v]) * g(self.height[v])
        return acc * Fraction(1, sphere_volume(self.q, r))


def brute_force_oracle(depth: int, q: int, max_vertices: int = MAX_VERTICES) -> FiniteTree:
    """Build ``B(0, depth)`` in ``T_q`` with radii and horocyclic heights.

    The default cap allows ``depth <= 8`` for ``q = 3`` and ``depth <= 12`` for ``q = 2``.

    Raises
    ------
    TreeSizeError
        If the ball has more than ``max_vertices`` vertices.
    """
    q = _check_q(q)
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    total = 1 + sum(sphere_volume(q, r) for r in range(1, depth + 1))
    if total > max_vertices:
        raise TreeSizeError(f"B(0, {depth}) in T_{q} has {total} vertices, cap is {max_vertices}")
    adjacency: List[List[int]] = [[]]
    radius = [0]
    height = [0]
    on_ray = [True]  # vertices omega(0), omega(1), ...
    queue = deque([0])
    while queue:
        v = queue.popleft()
        if radius[v] == depth:
            continue
        if v == 0:
            # one parent omega(1) and q children
            kids = [(1, True)] + [(-1, False)] * q
        elif on_ray[v]:
            # reached from the child omega(n-1): parent omega(n+1) and q-1 other children
            kids = [(height[v] + 1, True)] + [(height[v] - 1, False)] * (q - 1)
        else:
            # reached from the parent: q children
            kids = [(height[v] - 1, False)] * q
        for h, ray in kids:
            w = len(radius)
            radius.append(radius[v] + 1)
            height.append(h)
            on_ray.append(ray)
            adjacency.append([v])
            adjacency[v].append(w)
            queue.append(w)
    return FiniteTree(q, depth, adjacency, radius, height)
