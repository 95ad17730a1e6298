"""Classical and dihedral root systems, Weyl groups and multiplicities.

Crystallographic families (``A``, ``B``, ``C``, ``BC``, ``D`` and products of
rank-one systems) are stored with exact :class:`~fractions.Fraction`
coordinates.  The dihedral systems ``I2(m)`` are stored by angle index: the
root with index ``j`` is ``exp(i*pi*j/m)``.  Group operations on ``I2(m)``
are index arithmetic and therefore exact; inner products are only turned
into floating point numbers when a numeric module asks for vectors.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

Vec = Tuple[Fraction, ...]
Scalar = Union[int, Fraction, float]

__all__ = [
    "RootSystemError",
    "RootSystem",
    "Multiplicity",
    "WeylElement",
    "WeylGroup",
    "vec",
    "inner",
    "reflect",
    "coroot",
    "build_root_system",
    "weyl_group",
    "dominant",
    "delta_weight",
    "rho_gamma",
    "root_system_to_json",
    "root_system_from_json",
]

MAX_WEYL_RANK = 6


class RootSystemError(ValueError):
    """Unsupported family, parameter out of range or violated invariant."""


def vec(*coords: Scalar) -> Vec:
    """Build an exact vector from numbers (floats are taken at face value)."""
    if len(coords) == 1 and isinstance(coords[0], (list, tuple)):
        coords = tuple(coords[0])
    return tuple(Fraction(c) for c in coords)


def inner(a: Sequence, b: Sequence):
    """Euclidean inner product (exact for Fraction inputs)."""
    return sum((x * y for x, y in zip(a, b)), Fraction(0) if isinstance(a[0], Fraction) else 0.0)


def reflect(alpha: Sequence, x: Sequence) -> tuple:
    """Reflection ``r_alpha(x) = x - 2 <alpha, x> / |alpha|^2 alpha``.

    Exact when both inputs have rational coordinates.
    """
    nn = inner(alpha, alpha)
    if nn == 0:
        raise RootSystemError("cannot reflect in the zero vector")
    c = 2 * inner(alpha, x) / nn
    return tuple(xi - c * ai for xi, ai in zip(x, alpha))


def coroot(alpha: Sequence) -> tuple:
    """Coroot ``2 alpha / |alpha|^2``."""
    nn = inner(alpha, alpha)
    return tuple(2 * a / nn for a in alpha)


def _e(n: int, i: int, scale: int = 1) -> Vec:
    return tuple(Fraction(scale) if j == i else Fraction(0) for j in range(n))


def _add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def _neg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def _scale(a: Vec, s) -> Vec:
    return tuple(s * x for x in a)


# ---------------------------------------------------------------------------
# Root system
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootSystem:
    """A root system together with its positive system and root orbits.

    Attributes
    ----------
    family : str
        ``"A"``, ``"B"``, ``"C"``, ``"BC"``, ``"D"``, ``"I2"``, ``"A1^n"``
        or ``"BC1^n"``.
    n : int
        Family parameter (``m`` for ``I2``, the number of factors for
        products).
    rank : int
        Dimension of the span of the roots.
    dim : int
        Ambient dimension of the stored coordinates.
    roots, positive_roots, simple_roots : tuple
        Exact vectors, or angle indices for ``I2``.
    orbit_of : dict
        Root -> name of its W-orbit.
    orbit_names : tuple
        Orbit names in canonical order.
    """

    family: str
    n: int
    rank: int
    dim: int
    roots: tuple
    positive_roots: tuple
    simple_roots: tuple
    crystallographic: bool
    reduced: bool
    orbit_of: Mapping
    orbit_names: tuple
    chamber_functional: tuple

    @property
    def name(self) -> str:
        if self.family in ("A1^n", "BC1^n"):
            return f"{self.family[:-2]}x{self.n}"
        return f"{self.family}{self.n}" if self.family != "I2" else f"I2({self.n})"

    @property
    def is_dihedral(self) -> bool:
        return self.family == "I2"

    def vector(self, root) -> tuple:
        """Coordinates of a root: exact tuple, or floats for ``I2``."""
        if self.is_dihedral:
            ang = math.pi * root / self.n
            return (math.cos(ang), math.sin(ang))
        return root

    def float_vectors(self, positive: bool = True) -> List[Tuple[float, ...]]:
        src = self.positive_roots if positive else self.roots
        return [tuple(float(c) for c in self.vector(r)) for r in src]

    def reflect_root(self, alpha, beta):
        """Image of root ``beta`` under ``r_alpha`` (exact for ``I2``)."""
        if self.is_dihedral:
            return (2 * alpha + self.n - beta) % (2 * self.n)
        return reflect(alpha, beta)

    def pairing(self, alpha, beta):
        """``2 <alpha, beta> / |alpha|^2``; exact rational when possible."""
        if self.is_dihedral:
            return 2 * math.cos(math.pi * (alpha - beta) / self.n)
        return 2 * inner(alpha, beta) / inner(alpha, alpha)

    def is_positive(self, root) -> bool:
        if self.is_dihedral:
            # angle of root minus chamber direction, in units of pi/(2m)
            d = (2 * root - self.n + 1) % (4 * self.n)
            return d < self.n or d > 3 * self.n
        return inner(root, self.chamber_functional) > 0

    def in_closed_chamber(self, x: Sequence) -> bool:
        """Exact test ``<alpha_i, x> >= 0`` for all simple roots."""
        if self.is_dihedral:
            return all(inner(self.vector(a), x) >= -1e-12 for a in self.simple_roots)
        return all(inner(a, x) >= 0 for a in self.simple_roots)

    def check_point(self, x: Sequence) -> tuple:
        """Validate ambient coordinates (sum-zero constraint for ``A``)."""
        if len(x) != self.dim:
            raise RootSystemError(f"expected {self.dim} coordinates, got {len(x)}")
        if self.family == "A" and sum(x) != 0:
            raise RootSystemError("points of A_n must lie on the sum-zero hyperplane")
        return tuple(x)


def _orbits(roots: Sequence, reflect_fn) -> List[List]:
    remaining = list(roots)
    orbits = []
    while remaining:
        seed = remaining[0]
        orb = {seed}
        frontier = [seed]
        while frontier:
            b = frontier.pop()
            for a in roots:
                c = reflect_fn(a, b)
                if c not in orb:
                    orb.add(c)
                    frontier.append(c)
        orbits.append([r for r in roots if r in orb])
        remaining = [r for r in remaining if r not in orb]
    return orbits


def _simple_from_positive(pos: Sequence, is_dihedral: bool, m: int = 0) -> tuple:
    if is_dihedral:
        # in rank two the simple roots are the two positive roots of extreme
        # angle relative to the chamber direction pi/2 - pi/(2m)
        def offset(j):
            d = (2 * j - m + 1) % (4 * m)
            return d if d < m else d - 4 * m

        ordered = sorted(pos, key=offset)
        return (ordered[0], ordered[-1])
    posset = set(pos)
    simple = []
    for a in pos:
        decomposable = False
        for b in pos:
            c = tuple(x - y for x, y in zip(a, b))
            if c in posset:
                decomposable = True
                break
        if not decomposable:
            simple.append(a)
    return tuple(simple)


def build_root_system(family: str, n: int) -> RootSystem:
    """Construct a root system of a classical or dihedral family.

    Parameters
    ----------
    family : {"A", "B", "C", "BC", "D", "I2", "A1^n", "BC1^n"}
        ``"A1^n"`` and ``"BC1^n"`` are products of ``n`` rank-one systems
        ``{+-e_i}`` and ``{+-e_i, +-2e_i}``.
    n : int
        Rank parameter, or ``m`` for ``I2(m)``.

    Examples
    --------
    >>> R = build_root_system("B", 2)
    >>> len(R.roots)
    8
    """
    fam = family.upper().replace("_", "").replace("(", "").replace(")", "")
    fam = {"A1^N": "A1^n", "BC1^N": "BC1^n", "I2M": "I2"}.get(fam, fam)
    if fam in ("E", "F", "G", "H") or fam[:1] in ("E", "F", "G", "H"):
        raise RootSystemError(f"exceptional family {family} is not supported")
    n = int(n)
    roots: List = []
    if fam == "A":
        if n < 1:
            raise RootSystemError("A_n needs n >= 1")
        dim = n + 1
        for i in range(dim):
            for j in range(dim):
                if i != j:
                    roots.append(_add(_e(dim, i), _neg(_e(dim, j))))
        functional = tuple(Fraction(n - i) for i in range(dim))
        rank = n
    elif fam in ("B", "C", "BC"):
        if fam in ("B", "C") and n < 2:
            raise RootSystemError(f"{fam}_n needs n >= 2")
        if n < 1:
            raise RootSystemError("BC_n needs n >= 1")
        dim = rank = n
        for i in range(n):
            if fam in ("B", "BC"):
                roots += [_e(n, i), _neg(_e(n, i))]
            if fam in ("C", "BC"):
                roots += [_e(n, i, 2), _neg(_e(n, i, 2))]
        for i, j in combinations(range(n), 2):
            for si in (1, -1):
                for sj in (1, -1):
                    roots.append(_add(_e(n, i, si), _e(n, j, sj)))
        functional = tuple(Fraction(n - i) for i in range(n))
    elif fam == "D":
        if n < 3:
            raise RootSystemError("D_n needs n >= 3")
        dim = rank = n
        for i, j in combinations(range(n), 2):
            for si in (1, -1):
                for sj in (1, -1):
                    roots.append(_add(_e(n, i, si), _e(n, j, sj)))
        functional = tuple(Fraction(n - 1 - i) for i in range(n))
    elif fam in ("A1^n", "BC1^n"):
        if n < 1:
            raise RootSystemError("products need at least one factor")
        dim = rank = n
        for i in range(n):
            roots += [_e(n, i), _neg(_e(n, i))]
            if fam == "BC1^n":
                roots += [_e(n, i, 2), _neg(_e(n, i, 2))]
        functional = tuple(Fraction(n - i) for i in range(n))
    elif fam == "I2":
        if n < 3:
            raise RootSystemError("I2(m) needs m >= 3")
        m = n
        roots = list(range(2 * m))
        dim = rank = 2
        functional = ()
        pos = [j for j in roots if _dihedral_positive(j, m)]
        simple = _simple_from_positive(pos, True, m)
        orbit_lists = _orbits(roots, lambda a, b: (2 * a + m - b) % (2 * m))
        orbit_lists.sort(key=lambda o: min(o))
        names = tuple(f"o{i}" for i in range(len(orbit_lists)))
        orbit_of = {r: names[i] for i, o in enumerate(orbit_lists) for r in o}
        cryst = all((2 * d) % m == 0 or (3 * d) % m == 0 for d in range(2 * m))
        R = RootSystem("I2", m, rank, dim, tuple(roots), tuple(pos), simple, cryst, True, orbit_of, names, functional)
        _verify(R)
        return R
    else:
        raise RootSystemError(f"unsupported family {family}")

    roots = list(dict.fromkeys(roots))
    pos = tuple(r for r in roots if inner(r, functional) > 0)
    simple = _simple_from_positive(pos, False)
    orbit_lists = _orbits(roots, reflect)
    names = _name_orbits(fam, n, orbit_lists)
    orbit_of = {}
    for i, o in enumerate(orbit_lists):
        for r in o:
            orbit_of[r] = names[i]
    cryst = all(Fraction(2) * inner(a, b) / inner(a, a) == int(Fraction(2) * inner(a, b) / inner(a, a)) for a in roots for b in roots)
    reduced = not any(_scale(a, 2) in set(roots) for a in roots)
    R = RootSystem(fam, n, rank, dim, tuple(roots), pos, simple, cryst, reduced, orbit_of, tuple(sorted(set(names), key=_orbit_sort_key)), functional)
    _verify(R)
    return R


def _orbit_sort_key(name: str):
    rank = {"short": 0, "middle": 1, "long": 2}
    if name.startswith("f"):
        idx, _, kind = name[1:].partition("_")
        return (int(idx), rank.get(kind, 0))
    return (0, rank.get(name, 0))


def _dihedral_positive(j: int, m: int) -> bool:
    d = (2 * j - m + 1) % (4 * m)
    return d < m or d > 3 * m


def _name_orbits(fam: str, n: int, orbit_lists) -> List[str]:
    names = []
    for o in orbit_lists:
        r = o[0]
        nn = inner(r, r)
        nz = [i for i, c in enumerate(r) if c != 0]
        if fam in ("A", "D"):
            names.append("all")
        elif fam == "B":
            names.append("short" if nn == 1 else "long")
        elif fam == "C":
            names.append("short" if nn == 2 else "long")
        elif fam == "BC":
            names.append({1: "short", 2: "middle", 4: "long"}[int(nn)])
        elif fam == "A1^n":
            names.append(f"f{nz[0]}")
        else:
            names.append(f"f{nz[0]}_{'short' if nn == 1 else 'long'}")
    return names


def _verify(R: RootSystem) -> None:
    rootset = set(R.roots)
    for a in R.roots:
        for b in R.roots:
            if R.reflect_root(a, b) not in rootset:
                raise RootSystemError("root set not closed under reflections")
    if len(R.positive_roots) * 2 != len(R.roots):
        raise RootSystemError("positive system does not split the roots")
    if len(R.simple_roots) != R.rank:
        raise RootSystemError("simple root count differs from the rank")


# ---------------------------------------------------------------------------
# Multiplicities and weights
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Multiplicity:
    """W-invariant multiplicity function, one value per root orbit."""

    values: Mapping[str, Scalar]

    @classmethod
    def of(cls, R: RootSystem, k) -> "Multiplicity":
        """Build from a scalar, a sequence in orbit order, or a mapping."""
        if isinstance(k, Multiplicity):
            k = dict(k.values)
        if isinstance(k, Mapping):
            missing = set(R.orbit_names) - set(k)
            extra = set(k) - set(R.orbit_names)
            if missing or extra:
                raise RootSystemError(f"multiplicity keys must be {R.orbit_names}")
            vals = dict(k)
        elif isinstance(k, (list, tuple)):
            if len(k) != len(R.orbit_names):
                raise RootSystemError(f"{R.name} needs {len(R.orbit_names)} multiplicity values")
            vals = dict(zip(R.orbit_names, k))
        else:
            vals = {name: k for name in R.orbit_names}
        return cls({name: vals[name] for name in R.orbit_names})

    @property
    def nonneg(self) -> bool:
        return all(v >= 0 for v in self.values.values())

    def of_root(self, R: RootSystem, root) -> Scalar:
        return self.values[R.orbit_of[root]]

    def half_root(self, R: RootSystem, root) -> Scalar:
        """``k_{alpha/2}``, zero when ``alpha/2`` is not a root."""
        if R.is_dihedral:
            return 0
        half = tuple(c / 2 for c in root)
        if half in R.orbit_of:
            return self.values[R.orbit_of[half]]
        return 0


def _k_dict(R: RootSystem, k) -> Multiplicity:
    return k if isinstance(k, Multiplicity) else Multiplicity.of(R, k)


def delta_weight(R: RootSystem, k, x: Sequence, mode: str = "rational") -> float:
    """Reference density ``prod_{alpha > 0} w(<alpha, x>)^{2 k_alpha}``.

    ``w(t) = |t|`` in rational mode and ``|2 sinh(t/2)|`` in trigonometric
    mode.

    Raises
    ------
    RootSystemError
        For a negative multiplicity.
    """
    K = _k_dict(R, k)
    if not K.nonneg:
        raise RootSystemError("delta_weight needs nonnegative multiplicities")
    out = 1.0
    for a in R.positive_roots:
        ka = float(K.of_root(R, a))
        if ka == 0:
            continue
        t = float(inner([float(c) for c in R.vector(a)], [float(c) for c in x]))
        if mode == "rational":
            base = abs(t)
        elif mode == "trigonometric":
            base = abs(2 * math.sinh(t / 2))
        else:
            raise ValueError("mode must be 'rational' or 'trigonometric'")
        out *= base ** (2 * ka)
    return out


def rho_gamma(R: RootSystem, k) -> Tuple[tuple, Scalar]:
    """``rho = sum_{alpha>0} k_alpha alpha / 2`` and ``gamma = sum k_alpha``."""
    K = _k_dict(R, k)
    if R.is_dihedral:
        rho = [0.0, 0.0]
        gamma = 0
        for a in R.positive_roots:
            ka = K.of_root(R, a)
            v = R.vector(a)
            rho[0] += float(ka) * v[0] / 2
            rho[1] += float(ka) * v[1] / 2
            gamma += ka
        return tuple(rho), gamma
    rho = [Fraction(0)] * R.dim
    gamma = 0
    for a in R.positive_roots:
        ka = K.of_root(R, a)
        rho = [r + Fraction(ka) * c / 2 if not isinstance(ka, float) else r + ka * float(c) / 2 for r, c in zip(rho, a)]
        gamma += ka
    return tuple(rho), gamma


# ---------------------------------------------------------------------------
# Weyl group
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeylElement:
    """Element of a Weyl group.

    For crystallographic systems ``data`` is an exact orthogonal matrix
    (tuple of rows).  For ``I2(m)`` it is ``(flip, rot)`` acting on angle
    indices by ``j -> rot - j`` (flip) or ``j -> j + rot``.
    """

    data: tuple
    word: tuple
    m: int = 0

    def act(self, x: Sequence) -> tuple:
        if self.m:
            flip, rot = self.data
            ang = math.pi * rot / self.m
            c, s = math.cos(ang), math.sin(ang)
            x0, x1 = float(x[0]), float(x[1])
            if flip:
                x1 = -x1
            return (c * x0 - s * x1, s * x0 + c * x1)
        return tuple(sum((a * b for a, b in zip(row, x)), Fraction(0) if isinstance(x[0], Fraction) else 0.0) for row in self.data)

    def act_root(self, root):
        if self.m:
            flip, rot = self.data
            return ((rot - root) if flip else (root + rot)) % (2 * self.m)
        return self.act(root)

    def compose(self, other: "WeylElement") -> "WeylElement":
        """``self o other``."""
        if self.m:
            f1, r1 = self.data
            f2, r2 = other.data
            # self(other(j)) with other(j) = (r2 - j) or (j + r2)
            if not f1:
                data = (f2, (r1 + r2) % (2 * self.m))
            else:
                data = (not f2, (r1 - r2) % (2 * self.m))
            return WeylElement(data, self.word + other.word, self.m)
        rows = tuple(
            tuple(sum((self.data[i][l] * other.data[l][j] for l in range(len(self.data))), Fraction(0)) for j in range(len(self.data)))
            for i in range(len(self.data))
        )
        return WeylElement(rows, self.word + other.word)

    @property
    def key(self):
        return (self.m, self.data)

    @property
    def length(self) -> int:
        return len(self.word)

    def __hash__(self):
        return hash(self.key)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.key == other.key


@dataclass(frozen=True)
class WeylGroup:
    """Enumerated Weyl group in shortlex order of reduced words."""

    elements: tuple
    generators: tuple
    longest: WeylElement

    def __len__(self):
        return len(self.elements)

    @property
    def identity(self) -> WeylElement:
        return self.elements[0]


def _reflection_element(R: RootSystem, alpha, idx: int) -> WeylElement:
    if R.is_dihedral:
        return WeylElement((True, (2 * alpha + R.n) % (2 * R.n)), (idx,), R.n)
    d = R.dim
    nn = inner(alpha, alpha)
    rows = tuple(tuple((Fraction(1) if i == j else Fraction(0)) - 2 * alpha[i] * alpha[j] / nn for j in range(d)) for i in range(d))
    return WeylElement(rows, (idx,))


def _identity(R: RootSystem) -> WeylElement:
    if R.is_dihedral:
        return WeylElement((False, 0), (), R.n)
    d = R.dim
    return WeylElement(tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)), ())


_WEYL_CACHE: Dict[Tuple[str, int], WeylGroup] = {}


def weyl_group(R: RootSystem) -> WeylGroup:
    """Enumerate ``W`` by breadth-first closure of the simple reflections.

    Elements are listed by word length, then lexicographically by word, and
    each carries its shortlex-minimal reduced word.

    Raises
    ------
    RootSystemError
        If the rank exceeds the enumeration bound.
    """
    key = (R.family, R.n)
    if key in _WEYL_CACHE:
        return _WEYL_CACHE[key]
    if R.rank > MAX_WEYL_RANK:
        raise RootSystemError(f"Weyl group enumeration is capped at rank {MAX_WEYL_RANK}")
    gens = tuple(_reflection_element(R, a, i) for i, a in enumerate(R.simple_roots))
    ident = _identity(R)
    seen = {ident.key: ident}
    order = [ident]
    level = [ident]
    while level:
        nxt = []
        for w in level:
            for g in gens:
                u = w.compose(g)
                if u.key not in seen:
                    seen[u.key] = u
                    nxt.append(u)
                    order.append(u)
        level = nxt
    longest = order[-1]
    W = WeylGroup(tuple(order), gens, longest)
    _WEYL_CACHE[key] = W
    return W


def dominant(R: RootSystem, x: Sequence) -> Tuple[tuple, WeylElement]:
    """Dominant representative of the W-orbit of ``x``.

    Returns ``(x_plus, w)`` with ``w.act(x) == x_plus`` in the closed
    positive chamber; ``w`` is the shortlex-first element doing so.
    """
    if not R.is_dihedral:
        x = R.check_point(tuple(Fraction(c) if not isinstance(c, float) else c for c in x))
    for w in weyl_group(R).elements:
        y = w.act(x)
        if R.in_closed_chamber(y):
            return y, w
    raise RootSystemError("no dominant representative found")  # pragma: no cover


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _frac_str(c) -> str:
    return str(Fraction(c))


def root_system_to_json(R: RootSystem, k=None) -> str:
    """JSON document with family, rank, roots and multiplicity orbits."""
    if R.is_dihedral:
        roots = [{"angle_index": j, "orbit": R.orbit_of[j]} for j in R.roots]
    else:
        roots = [{"coords": [_frac_str(c) for c in r], "orbit": R.orbit_of[r]} for r in R.roots]
    doc = {
        "family": R.family,
        "n": R.n,
        "rank": R.rank,
        "crystallographic": R.crystallographic,
        "reduced": R.reduced,
        "roots": roots,
        "positive_roots": [j if R.is_dihedral else [_frac_str(c) for c in r] for r in R.positive_roots],
        "orbits": list(R.orbit_names),
    }
    if k is not None:
        K = _k_dict(R, k)
        doc["multiplicity"] = {name: _frac_str(v) if not isinstance(v, float) else v for name, v in K.values.items()}
    return json.dumps(doc, sort_keys=True)


def root_system_from_json(text: str) -> RootSystem:
    """Rebuild a root system from :func:`root_system_to_json` output."""
    doc = json.loads(text)
    return build_root_system(doc["family"], doc["n"])
