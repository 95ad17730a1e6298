"""Exact Dunkl, Cherednik and Heckman operators.

Operators act on

* :class:`MultiPoly` -- polynomials with rational coefficients
  (rational Dunkl operators), and
* :class:`LaurentWeightPoly` -- finite combinations of exponentials
  ``e^mu`` with ``mu`` in the weight lattice (Cherednik and Heckman
  operators).

All arithmetic is done with :class:`fractions.Fraction`, so structural
identities such as commutativity are checked as exact equalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .rootsys import Multiplicity, RootSystem, RootSystemError, WeylElement, coroot, inner, reflect, rho_gamma

__all__ = [
    "DivisionError",
    "LatticeError",
    "MultiPoly",
    "LaurentWeightPoly",
    "dunkl_apply",
    "cherednik_apply",
    "heckman_prime_apply",
    "laplacian_apply",
    "commutator_residual",
    "monomials_up_to",
    "fundamental_weights",
    "weight_monomials_up_to",
    "act_weyl",
    "heckman_commutator_formula",
]


class DivisionError(ArithmeticError):
    """A divided difference left a nonzero remainder."""


class LatticeError(ValueError):
    """A weight is not in the weight lattice of the root system."""


Exponent = Tuple[int, ...]
Weight = Tuple[Fraction, ...]


def _clean(terms: Mapping) -> Dict:
    return {m: c for m, c in terms.items() if c != 0}


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultiPoly:
    """Polynomial ``sum c_e x^e`` with exact rational coefficients.

    ``terms`` maps exponent tuples to nonzero :class:`Fraction`
    coefficients; ``rank`` is the number of variables.
    """

    terms: Mapping[Exponent, Fraction]
    rank: int

    def __post_init__(self):
        clean = {tuple(int(e) for e in m): Fraction(c) for m, c in self.terms.items() if c != 0}
        for m in clean:
            if len(m) != self.rank or min(m, default=0) < 0:
                raise ValueError(f"bad exponent {m} for rank {self.rank}")
        object.__setattr__(self, "terms", clean)

    @classmethod
    def zero(cls, rank: int) -> "MultiPoly":
        return cls({}, rank)

    @classmethod
    def const(cls, c, rank: int) -> "MultiPoly":
        return cls({(0,) * rank: Fraction(c)}, rank)

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "MultiPoly":
        return cls({tuple(exps): Fraction(c)}, len(exps))

    @classmethod
    def linear(cls, coeffs: Sequence) -> "MultiPoly":
        n = len(coeffs)
        return cls({tuple(int(i == j) for j in range(n)): Fraction(c) for i, c in enumerate(coeffs)}, n)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return MultiPoly(out, self.rank)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({m: -c for m, c in self.terms.items()}, self.rank)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def scale(self, s) -> "MultiPoly":
        s = Fraction(s)
        return MultiPoly({m: c * s for m, c in self.terms.items()}, self.rank)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        out: Dict[Exponent, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly(out, self.rank)

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiPoly) and self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def pow(self, e: int) -> "MultiPoly":
        out = MultiPoly.const(1, self.rank)
        for _ in range(e):
            out = out * self
        return out

    def partial(self, i: int) -> "MultiPoly":
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = out.get(tuple(mm), 0) + c * m[i]
        return MultiPoly(out, self.rank)

    def directional(self, xi: Sequence) -> "MultiPoly":
        out = MultiPoly.zero(self.rank)
        for i, a in enumerate(xi):
            if a != 0:
                out = out + self.partial(i).scale(a)
        return out

    def compose_linear(self, M: Sequence[Sequence]) -> "MultiPoly":
        """``x -> p(M x)`` for an exact square matrix ``M``."""
        n = self.rank
        forms = [MultiPoly.linear(row) for row in M]
        cache: Dict[Tuple[int, int], MultiPoly] = {}

        def power(j, e):
            if (j, e) not in cache:
                cache[(j, e)] = forms[j].pow(e)
            return cache[(j, e)]

        out = MultiPoly.zero(n)
        for m, c in self.terms.items():
            t = MultiPoly.const(c, n)
            for j, e in enumerate(m):
                if e:
                    t = t * power(j, e)
            out = out + t
        return out

    def divide_linear(self, a: Sequence) -> "MultiPoly":
        """Exact quotient by the linear form ``<a, x>``.

        Raises
        ------
        DivisionError
            If the division leaves a remainder.
        """
        a = [Fraction(c) for c in a]
        piv = next(i for i, c in enumerate(a) if c != 0)
        rem = dict(self.terms)
        quot: Dict[Exponent, Fraction] = {}
        while rem:
            # leading term: highest power of the pivot variable, then lex
            m = max(rem, key=lambda e: (e[piv], e))
            c = rem[m]
            if m[piv] == 0:
                raise DivisionError("polynomial is not divisible by the linear form")
            qm = list(m)
            qm[piv] -= 1
            qm = tuple(qm)
            qc = c / a[piv]
            quot[qm] = quot.get(qm, 0) + qc
            for i, ai in enumerate(a):
                if ai == 0:
                    continue
                mm = list(qm)
                mm[i] += 1
                mm = tuple(mm)
                v = rem.get(mm, 0) - qc * ai
                if v == 0:
                    rem.pop(mm, None)
                else:
                    rem[mm] = v
        return MultiPoly(quot, self.rank)

    def evaluate(self, x: Sequence):
        total = 0
        for m, c in self.terms.items():
            t = c
            for xi, e in zip(x, m):
                t = t * xi**e
            total += t
        return total

    def max_abs_coeff(self) -> Fraction:
        return max((abs(c) for c in self.terms.values()), default=Fraction(0))

    def __repr__(self) -> str:
        if not self.terms:
            return "MultiPoly(0)"
        parts = []
        for m in sorted(self.terms, reverse=True):
            mon = "*".join(f"x{i}^{e}" if e > 1 else f"x{i}" for i, e in enumerate(m) if e)
            parts.append(f"{self.terms[m]}" + (f"*{mon}" if mon else ""))
        return "MultiPoly(" + " + ".join(parts) + ")"


def monomials_up_to(rank: int, degree: int) -> List[MultiPoly]:
    """All monomials ``x^e`` with ``|e| <= degree`` (sorted by degree)."""
    out = []
    for d in range(degree + 1):
        for e in product(range(d + 1), repeat=rank):
            if sum(e) == d:
                out.append(MultiPoly.monomial(e))
    return out


# ---------------------------------------------------------------------------
# Exponential polynomials on the weight lattice
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LaurentWeightPoly:
    """Finite sum ``sum c_mu e^mu`` with ``mu`` a weight (exact coordinates)."""

    terms: Mapping[Weight, Fraction]
    rank: int

    def __post_init__(self):
        clean = {tuple(Fraction(c) for c in m): Fraction(v) for m, v in self.terms.items() if v != 0}
        for m in clean:
            if len(m) != self.rank:
                raise ValueError(f"weight {m} has the wrong length")
        object.__setattr__(self, "terms", clean)

    @classmethod
    def zero(cls, rank: int) -> "LaurentWeightPoly":
        return cls({}, rank)

    @classmethod
    def exp(cls, mu: Sequence, c=1) -> "LaurentWeightPoly":
        return cls({tuple(Fraction(x) for x in mu): Fraction(c)}, len(mu))

    @classmethod
    def const(cls, c, rank: int) -> "LaurentWeightPoly":
        return cls({(Fraction(0),) * rank: Fraction(c)}, rank)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return LaurentWeightPoly(out, self.rank)

    def __neg__(self):
        return LaurentWeightPoly({m: -c for m, c in self.terms.items()}, self.rank)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = Fraction(s)
        return LaurentWeightPoly({m: c * s for m, c in self.terms.items()}, self.rank)

    def __eq__(self, other):
        return isinstance(other, LaurentWeightPoly) and self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def map_weights(self, fn: Callable[[Weight], Weight]) -> "LaurentWeightPoly":
        out: Dict[Weight, Fraction] = {}
        for m, c in self.terms.items():
            w = tuple(fn(m))
            out[w] = out.get(w, 0) + c
        return LaurentWeightPoly(out, self.rank)

    def evaluate(self, x: Sequence[float]) -> float:
        import math

        return sum(float(c) * math.exp(sum(float(a) * b for a, b in zip(m, x))) for m, c in self.terms.items())

    def max_abs_coeff(self) -> Fraction:
        return max((abs(c) for c in self.terms.values()), default=Fraction(0))

    def __repr__(self) -> str:
        if not self.terms:
            return "LaurentWeightPoly(0)"
        parts = [f"{c}*e^{tuple(str(x) for x in m)}" for m, c in sorted(self.terms.items())]
        return "LaurentWeightPoly(" + " + ".join(parts) + ")"


def _solve(A: List[List[Fraction]], b: List[Fraction]) -> List[Fraction]:
    n = len(A)
    M = [list(row) + [bi] for row, bi in zip(A, b)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col] / M[col][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] / M[i][i] for i in range(n)]


def fundamental_weights(R: RootSystem) -> List[Weight]:
    """Weights ``omega_i`` in the span of ``R`` with ``<omega_i, alpha_j^vee> = delta_ij``."""
    if R.is_dihedral:
        raise RootSystemError("weight lattices need a crystallographic root system")
    simple = list(R.simple_roots)
    cor = [coroot(a) for a in simple]
    r = len(simple)
    # omega_i = sum_l G[i][l] alpha_l; <omega_i, cor_j> = sum_l G[i][l] <alpha_l, cor_j>
    C = [[inner(simple[l], cor[j]) for l in range(r)] for j in range(r)]
    out = []
    for i in range(r):
        rhs = [Fraction(int(i == j)) for j in range(r)]
        g = _solve(C, rhs)
        out.append(tuple(sum((g[l] * simple[l][d] for l in range(r)), Fraction(0)) for d in range(R.dim)))
    return out


def weight_monomials_up_to(R: RootSystem, degree: int) -> List[LaurentWeightPoly]:
    """``e^mu`` for ``mu = sum c_i omega_i`` with integers ``sum |c_i| <= degree``."""
    omegas = fundamental_weights(R)
    r = len(omegas)
    out = []
    seen = set()
    for cs in product(range(-degree, degree + 1), repeat=r):
        if sum(abs(c) for c in cs) > degree:
            continue
        mu = tuple(sum((c * w[d] for c, w in zip(cs, omegas)), Fraction(0)) for d in range(R.dim))
        if mu not in seen:
            seen.add(mu)
            out.append(LaurentWeightPoly.exp(mu))
    out.sort(key=lambda f: (sum(abs(x) for x in next(iter(f.terms))), next(iter(f.terms))))
    return out


# ---------------------------------------------------------------------------
# Operators
# ---------------------------------------------------------------------------


def _k(R: RootSystem, k) -> Multiplicity:
    return k if isinstance(k, Multiplicity) else Multiplicity.of(R, k)


def _reflection_matrix(alpha) -> tuple:
    d = len(alpha)
    nn = inner(alpha, alpha)
    return tuple(tuple((Fraction(1) if i == j else Fraction(0)) - 2 * alpha[i] * alpha[j] / nn for j in range(d)) for i in range(d))


def _require_rational(R: RootSystem) -> None:
    if R.is_dihedral:
        raise RootSystemError("exact operators need a root system with rational coordinates")


def dunkl_apply(R: RootSystem, k, xi: Sequence, p: MultiPoly) -> MultiPoly:
    """Rational Dunkl operator ``D_xi`` applied to a polynomial.

    ``D_xi p = d_xi p + sum_{alpha > 0} k_alpha <alpha, xi> (p - p o r_alpha) / <alpha, x>``;
    each divided difference is an exact polynomial quotient.

    Examples
    --------
    In rank one (``A1^n`` with one factor), ``D x = 1 + 2k``:

    >>> from dunklkit.rootsys import build_root_system
    >>> R = build_root_system("A1^n", 1)
    >>> dunkl_apply(R, 3, (1,), MultiPoly.monomial((1,))).terms
    {(0,): Fraction(7, 1)}
    """
    _require_rational(R)
    K = _k(R, k)
    xi = tuple(Fraction(c) for c in xi)
    out = p.directional(xi)
    for a in R.positive_roots:
        ka = Fraction(K.of_root(R, a))
        ax = inner(a, xi)
        if ka == 0 or ax == 0:
            continue
        diff = p - p.compose_linear(_reflection_matrix(a))
        if diff.is_zero():
            continue
        out = out + diff.divide_linear(a).scale(ka * ax)
    return out


def _check_lattice(R: RootSystem, mu: Weight, alpha) -> int:
    m = inner(mu, coroot(alpha))
    if m.denominator != 1:
        raise LatticeError(f"weight {tuple(str(x) for x in mu)} is not in the weight lattice")
    return int(m)


def _divided_exp(R: RootSystem, mu: Weight, alpha) -> Dict[Weight, Fraction]:
    """``(e^mu - e^{r_alpha mu}) / (1 - e^{-alpha})`` as a finite sum."""
    m = _check_lattice(R, mu, alpha)
    out: Dict[Weight, Fraction] = {}
    if m > 0:
        for j in range(m):
            w = tuple(x - j * a for x, a in zip(mu, alpha))
            out[w] = out.get(w, 0) + 1
    elif m < 0:
        for j in range(1, -m + 1):
            w = tuple(x + j * a for x, a in zip(mu, alpha))
            out[w] = out.get(w, 0) - 1
    return out


def _trig_apply(R, k, xi, f: LaurentWeightPoly, kind: str) -> LaurentWeightPoly:
    _require_rational(R)
    if not R.crystallographic:
        raise RootSystemError("trigonometric operators need a crystallographic root system")
    K = _k(R, k)
    xi = tuple(Fraction(c) for c in xi)
    out: Dict[Weight, Fraction] = {}

    def add(w, c):
        out[w] = out.get(w, 0) + c

    rho, _ = rho_gamma(R, K)
    rho_xi = inner(rho, xi)
    for mu, c in f.terms.items():
        add(mu, c * inner(mu, xi))
        for a in R.positive_roots:
            ka = Fraction(K.of_root(R, a))
            ax = inner(a, xi)
            if ka == 0 or ax == 0:
                continue
            div = _divided_exp(R, mu, a)
            if kind == "cherednik":
                for w, v in div.items():
                    add(w, c * ka * ax * v)
            else:
                # (k/2) coth(alpha/2) (e^mu - e^{r mu}) = k/2 (1 + e^{-alpha}) * div
                for w, v in div.items():
                    add(w, c * ka * ax * v / 2)
                    add(tuple(x - y for x, y in zip(w, a)), c * ka * ax * v / 2)
        if kind == "cherednik":
            add(mu, -c * rho_xi)
    return LaurentWeightPoly(out, f.rank)


def cherednik_apply(R: RootSystem, k, xi: Sequence, f: LaurentWeightPoly) -> LaurentWeightPoly:
    """Cherednik operator ``D_xi`` on an exponential polynomial.

    ``D_xi f = d_xi f + sum_{alpha>0} k_alpha <alpha, xi> (f - f o r_alpha) / (1 - e^{-alpha}) - <rho, xi> f``.
    On ``e^mu`` the quotient is the finite geometric sum
    ``e^mu (1 + e^{-alpha} + ... + e^{-(m-1) alpha})`` with
    ``m = <mu, alpha^vee>`` when ``m > 0``, its negative counterpart when
    ``m < 0`` and zero when ``m = 0``.

    Raises
    ------
    LatticeError
        If a weight of ``f`` is not in the weight lattice.
    """
    return _trig_apply(R, k, xi, f, "cherednik")


def heckman_prime_apply(R: RootSystem, k, xi: Sequence, f: LaurentWeightPoly) -> LaurentWeightPoly:
    """Heckman's operator ``'D_xi f = d_xi f + sum (k_alpha/2) <alpha, xi> coth(alpha/2) (f - f o r_alpha)``."""
    return _trig_apply(R, k, xi, f, "heckman")


def _basis(dim: int) -> List[Tuple[Fraction, ...]]:
    return [tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)]


def laplacian_apply(R: RootSystem, k, f, mode: str = "rational"):
    """Sum of squares ``sum_j D_j^2`` over an orthonormal basis.

    ``mode="rational"`` uses Dunkl operators on a :class:`MultiPoly`;
    ``mode="trigonometric"`` uses Cherednik operators on a
    :class:`LaurentWeightPoly` (the Heckman-Opdam Laplacian).
    """
    if mode == "rational":
        op = dunkl_apply
        out = MultiPoly.zero(f.rank)
    elif mode == "trigonometric":
        op = cherednik_apply
        out = LaurentWeightPoly.zero(f.rank)
    else:
        raise ValueError("mode must be 'rational' or 'trigonometric'")
    for e in _basis(R.dim):
        out = out + op(R, k, e, op(R, k, e, f))
    return out


def commutator_residual(op_a: Callable, op_b: Callable, test_set: Iterable) -> Fraction:
    """Largest coefficient of ``(AB - BA) f`` over the test set (exact)."""
    worst = Fraction(0)
    for f in test_set:
        d = op_a(op_b(f)) - op_b(op_a(f))
        worst = max(worst, d.max_abs_coeff())
    return worst


def act_weyl(w: WeylElement, f):
    """Left action ``(w.f)(x) = f(w^{-1} x)`` on polynomials or exponentials."""
    if isinstance(f, MultiPoly):
        # f(w^{-1} x) = f(w^T x) for orthogonal w
        wt = tuple(zip(*w.data))
        return f.compose_linear(wt)
    return f.map_weights(w.act)


def heckman_commutator_formula(R: RootSystem, k, xi, eta, f: LaurentWeightPoly) -> LaurentWeightPoly:
    """Right-hand side of the commutator of two Heckman operators.

    ``sum_{alpha, beta > 0} k_alpha k_beta / 4 (<alpha,xi><beta,eta> - <beta,xi><alpha,eta>) f(r_alpha r_beta x)``.
    """
    K = _k(R, k)
    out = LaurentWeightPoly.zero(f.rank)
    xi = tuple(Fraction(c) for c in xi)
    eta = tuple(Fraction(c) for c in eta)
    for a in R.positive_roots:
        for b in R.positive_roots:
            coef = Fraction(K.of_root(R, a)) * Fraction(K.of_root(R, b)) / 4
            coef *= inner(a, xi) * inner(b, eta) - inner(b, xi) * inner(a, eta)
            if coef == 0:
                continue
            # f(r_a r_b x) = sum c e^{<mu, r_a r_b x>} = sum c e^{<r_b r_a mu, x>}
            g = f.map_weights(lambda mu: reflect(b, reflect(a, mu)))
            out = out + g.scale(coef)
    return out
