"""Reduced and non-reduced root systems over exact rationals.

Root systems are realised in their standard Bourbaki coordinates (type A
keeps the p+1 zero-sum coordinates, E8 uses half-integer entries).  All
arithmetic is done with `fractions.Fraction`, so every membership,
orthogonality and proportionality test in this package is decided exactly.

Each family carries a fixed coordinate-significance order that defines
the lexicographic order used throughout (``RootSystem.sort_key``).  The
order is chosen so that the Bourbaki positive roots are exactly the
lexicographically positive vectors and the highest root is the maximum:
first-coordinate-first for the classical families and F4, reversed for
E6/E7/E8, and (e3, e1, e2) for G2.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from . import linalg

HALF = Fraction(1, 2)


class InvariantViolation(RuntimeError):
    """A structural fact the library relies on failed to hold."""


class RootVec:
    """Immutable vector with exact rational coordinates.

    The coordinates are stored as integers over one reduced common
    denominator, which keeps inner products, arithmetic and hashing
    cheap; `coords` materialises them as Fractions on demand.
    """

    __slots__ = ("_num", "_den", "_hash", "_coords")

    def __init__(self, coords):
        cs = tuple(Fraction(c) for c in coords)
        den = lcm(*(c.denominator for c in cs)) if cs else 1
        object.__setattr__(self, "_num", tuple(int(c * den) for c in cs))
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_hash", hash((self._num, den)))
        object.__setattr__(self, "_coords", cs)

    @classmethod
    def _raw(cls, num: tuple[int, ...], den: int) -> "RootVec":
        # Internal fast path: integer data, normalised here.
        g = gcd(den, *num)
        if g > 1:
            den //= g
            num = tuple(x // g for x in num)
        obj = object.__new__(cls)
        object.__setattr__(obj, "_num", num)
        object.__setattr__(obj, "_den", den)
        object.__setattr__(obj, "_hash", hash((num, den)))
        object.__setattr__(obj, "_coords", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("RootVec is immutable")

    @property
    def coords(self) -> tuple[Fraction, ...]:
        if self._coords is None:
            den = self._den
            object.__setattr__(
                self, "_coords", tuple(Fraction(x, den) for x in self._num)
            )
        return self._coords

    @property
    def dim(self) -> int:
        return len(self._num)

    def _aligned(self, other: "RootVec"):
        d1, d2 = self._den, other._den
        if d1 == d2:
            return self._num, other._num, d1
        den = lcm(d1, d2)
        f1, f2 = den // d1, den // d2
        return (
            tuple(x * f1 for x in self._num),
            tuple(x * f2 for x in other._num),
            den,
        )

    def __add__(self, other: "RootVec") -> "RootVec":
        a, b, den = self._aligned(other)
        return RootVec._raw(tuple(x + y for x, y in zip(a, b)), den)

    def __sub__(self, other: "RootVec") -> "RootVec":
        a, b, den = self._aligned(other)
        return RootVec._raw(tuple(x - y for x, y in zip(a, b)), den)

    def __neg__(self) -> "RootVec":
        return RootVec._raw(tuple(-x for x in self._num), self._den)

    def __mul__(self, scalar) -> "RootVec":
        s = Fraction(scalar)
        return RootVec._raw(
            tuple(x * s.numerator for x in self._num), self._den * s.denominator
        )

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RootVec)
            and self._den == other._den
            and self._num == other._num
        )

    def __hash__(self) -> int:
        return self._hash

    def is_zero(self) -> bool:
        return not any(self._num)

    def __repr__(self) -> str:
        return "RootVec(%s)" % (", ".join(str(c) for c in self.coords))

    @classmethod
    def parse(cls, text: str) -> "RootVec":
        """Parse a comma-separated list of rationals, e.g. ``1,-1/2,0``."""
        try:
            return cls(Fraction(part.strip()) for part in text.split(","))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse vector {text!r}: {exc}") from None


def rootvec(*coords) -> RootVec:
    return RootVec(coords)


def basis_vector(i: int, dim: int) -> RootVec:
    return RootVec(tuple(int(j == i) for j in range(dim)))


def inner(a: RootVec, b: RootVec) -> Fraction:
    """Exact Euclidean inner product."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return Fraction(sum(x * y for x, y in zip(a._num, b._num)), a._den * b._den)


def _dot_sign_num(a: RootVec, b: RootVec) -> int:
    # Numerator of <a, b> over the positive denominator a._den * b._den;
    # valid for zero/sign tests without building a Fraction.
    return sum(x * y for x, y in zip(a._num, b._num))


def is_orthogonal(a: RootVec, b: RootVec) -> bool:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return _dot_sign_num(a, b) == 0


def primitive_ray(v: RootVec) -> RootVec:
    """The integer vector with coprime entries on the ray of v."""
    if v.is_zero():
        raise ValueError("zero vector has no ray")
    g = gcd(*v._num)
    return RootVec._raw(tuple(x // g for x in v._num), 1)


def norm_sq(a: RootVec) -> Fraction:
    return inner(a, a)


def is_parallel(a: RootVec, b: RootVec) -> bool:
    """True when a and b are nonzero multiples of each other (either sign)."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    an, bn = a._num, b._num
    j = next((i for i, x in enumerate(bn) if x), None)
    if j is None or not any(an):
        return False
    aj, bj = an[j], bn[j]
    return all(x * bj == aj * y for x, y in zip(an, bn))


FAMILIES = ("A", "B", "C", "D", "BC", "E6", "E7", "E8", "F4", "G2")
_FIXED_RANK = {"E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2}

_POSITIVE_COUNT = {
    "A": lambda p: p * (p + 1) // 2,
    "B": lambda p: p * p,
    "C": lambda p: p * p,
    "D": lambda p: p * (p - 1),
    "BC": lambda p: p * p + p,
    "E6": lambda p: 36,
    "E7": lambda p: 63,
    "E8": lambda p: 120,
    "F4": lambda p: 24,
    "G2": lambda p: 6,
}


class RootSystemType:
    """Family label plus rank, validated against the family constraints."""

    __slots__ = ("family", "rank")

    def __init__(self, family: str, rank: int):
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
        fixed = _FIXED_RANK.get(family)
        if fixed is not None:
            if rank != fixed:
                raise ValueError(f"family {family} has fixed rank {fixed}, got {rank}")
        elif family == "D":
            if rank < 2:
                raise ValueError(f"family D requires rank >= 2, got {rank}")
        elif rank < 1:
            raise ValueError(f"family {family} requires rank >= 1, got {rank}")
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "rank", rank)

    def __setattr__(self, name, value):
        raise AttributeError("RootSystemType is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, RootSystemType)
            and self.family == other.family
            and self.rank == other.rank
        )

    def __hash__(self):
        return hash((self.family, self.rank))

    def __repr__(self):
        return f"RootSystemType({self.family}, {self.rank})"

    def label(self) -> str:
        if self.family in _FIXED_RANK:
            return self.family
        return f"{self.family}{self.rank}"


def _parse_type(family: str, rank: int | None) -> RootSystemType:
    if rank is None:
        if family in _FIXED_RANK:
            return RootSystemType(family, _FIXED_RANK[family])
        raise ValueError(f"family {family} needs an explicit rank")
    return RootSystemType(family, rank)


class RootSystem:
    """A constructed root system; instances are cached singletons per type."""

    __slots__ = (
        "rstype",
        "ambient_dim",
        "simple_roots",
        "positive_roots",
        "positive_norms",
        "highest_root",
        "significance",
        "_all_set",
        "_pos_set",
        "_length_classes",
        "_gram_inv",
    )

    def __init__(self, rstype, ambient_dim, simple_roots, positive_roots,
                 highest_root, significance):
        object.__setattr__(self, "rstype", rstype)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "simple_roots", tuple(simple_roots))
        positive = tuple(
            sorted(positive_roots, key=lambda v: tuple(v.coords[i] for i in significance))
        )
        object.__setattr__(self, "positive_roots", positive)
        object.__setattr__(
            self, "positive_norms", tuple(norm_sq(v) for v in positive)
        )
        object.__setattr__(self, "highest_root", highest_root)
        object.__setattr__(self, "significance", tuple(significance))
        object.__setattr__(self, "_pos_set", frozenset(positive))
        object.__setattr__(
            self, "_all_set", frozenset(positive) | frozenset(-v for v in positive)
        )
        lengths = sorted(set(self.positive_norms), reverse=True)
        labels = {1: ("long",), 2: ("long", "short"), 3: ("long", "middle", "short")}
        object.__setattr__(
            self,
            "_length_classes",
            dict(zip(lengths, labels[len(lengths)])),
        )
        gram = [[inner(a, b) for b in self.simple_roots] for a in self.simple_roots]
        object.__setattr__(self, "_gram_inv", linalg.invert(gram))

    def __setattr__(self, name, value):
        raise AttributeError("RootSystem is immutable")

    def __repr__(self):
        return f"<RootSystem {self.rstype.label()}, {len(self.positive_roots)} positive roots>"

    @property
    def rank(self) -> int:
        return self.rstype.rank

    def sort_key(self, v: RootVec):
        """Key of the fixed lexicographic order on the ambient space."""
        return tuple(v.coords[i] for i in self.significance)

    def contains(self, v: RootVec) -> bool:
        return v in self._all_set

    def contains_positive(self, v: RootVec) -> bool:
        return v in self._pos_set

    def length_classes(self) -> dict[Fraction, str]:
        """Map from squared length to class label (long/middle/short)."""
        return dict(self._length_classes)

    def root_class(self, v: RootVec) -> str:
        if not self.contains(v):
            raise ValueError(f"{v!r} is not a root of {self.rstype.label()}")
        return self._length_classes[norm_sq(v)]

    def simple_coefficients(self, v: RootVec) -> tuple[Fraction, ...]:
        """Coefficients of v in the simple-root basis (v must lie in the span)."""
        rhs = [inner(s, v) for s in self.simple_roots]
        coeffs = [
            sum(row[j] * rhs[j] for j in range(self.rank))
            for row in self._gram_inv
        ]
        check = RootVec([0] * self.ambient_dim)
        for c, s in zip(coeffs, self.simple_roots):
            check = check + c * s
        if check != v:
            raise ValueError(f"{v!r} is not in the span of the simple roots")
        return tuple(coeffs)

    def simple_combination(self, coeffs) -> RootVec:
        """The vector sum(c_i * alpha_i) for Bourbaki-numbered simple roots."""
        v = RootVec([0] * self.ambient_dim)
        for c, s in zip(coeffs, self.simple_roots):
            v = v + Fraction(c) * s
        return v

    def fundamental_coweights(self) -> tuple[RootVec, ...]:
        """Dual basis H_i with <H_i, alpha_j> = delta_ij, inside the root span."""
        out = []
        for j in range(self.rank):
            v = RootVec([0] * self.ambient_dim)
            for i, s in enumerate(self.simple_roots):
                v = v + self._gram_inv[i][j] * s
            out.append(v)
        return tuple(out)


def build(family, rank: int | None = None) -> RootSystem:
    """Construct the root system for a family label ("G2", "BC", ...).

    Accepts a RootSystemType or a family string plus rank.  Results are
    cached; systems of rank at most eight are structurally verified on
    first construction.
    """
    if isinstance(family, RootSystemType):
        rstype = family
    else:
        rstype = _parse_type(family, rank)
    return _build_cached(rstype.family, rstype.rank)


@lru_cache(maxsize=None)
def _build_cached(family: str, rank: int) -> RootSystem:
    rstype = RootSystemType(family, rank)
    simple, positive, highest, significance = _CONSTRUCTORS[family](rank)
    system = RootSystem(rstype, simple[0].dim, simple, positive, highest, significance)
    _check_build(system)
    return system


def _e(i: int, dim: int) -> RootVec:
    return basis_vector(i, dim)


def _classical_simple(p: int) -> list[RootVec]:
    return [_e(i, p) - _e(i + 1, p) for i in range(p - 1)]


def _build_a(p: int):
    dim = p + 1
    simple = [_e(i, dim) - _e(i + 1, dim) for i in range(p)]
    positive = [_e(i, dim) - _e(j, dim) for i in range(dim) for j in range(i + 1, dim)]
    highest = _e(0, dim) - _e(p, dim)
    return simple, positive, highest, tuple(range(dim))


def _build_b(p: int):
    simple = _classical_simple(p) + [_e(p - 1, p)]
    positive = [_e(i, p) for i in range(p)]
    for i in range(p):
        for j in range(i + 1, p):
            positive += [_e(i, p) + _e(j, p), _e(i, p) - _e(j, p)]
    highest = _e(0, p) + _e(1, p) if p >= 2 else _e(0, p)
    return simple, positive, highest, tuple(range(p))


def _build_c(p: int):
    simple = _classical_simple(p) + [2 * _e(p - 1, p)]
    positive = [2 * _e(i, p) for i in range(p)]
    for i in range(p):
        for j in range(i + 1, p):
            positive += [_e(i, p) + _e(j, p), _e(i, p) - _e(j, p)]
    highest = 2 * _e(0, p)
    return simple, positive, highest, tuple(range(p))


def _build_d(p: int):
    simple = _classical_simple(p) + [_e(p - 2, p) + _e(p - 1, p)]
    positive = []
    for i in range(p):
        for j in range(i + 1, p):
            positive += [_e(i, p) + _e(j, p), _e(i, p) - _e(j, p)]
    highest = _e(0, p) + _e(1, p)
    return simple, positive, highest, tuple(range(p))


def _build_bc(p: int):
    simple, b_pos, _, sig = _build_b(p)
    positive = b_pos + [2 * _e(i, p) for i in range(p)]
    return simple, positive, 2 * _e(0, p), sig


def _build_g2(_rank: int):
    simple = [rootvec(1, -1, 0), rootvec(-2, 1, 1)]
    a1, a2 = simple
    positive = [a1, a2, a1 + a2, 2 * a1 + a2, 3 * a1 + a2, 3 * a1 + 2 * a2]
    return simple, positive, 3 * a1 + 2 * a2, (2, 0, 1)


def _build_f4(_rank: int):
    simple = [
        rootvec(0, 1, -1, 0),
        rootvec(0, 0, 1, -1),
        rootvec(0, 0, 0, 1),
        rootvec(HALF, -HALF, -HALF, -HALF),
    ]
    positive = [_e(i, 4) for i in range(4)]
    for i in range(4):
        for j in range(i + 1, 4):
            positive += [_e(i, 4) + _e(j, 4), _e(i, 4) - _e(j, 4)]
    for signs in itertools.product((1, -1), repeat=3):
        positive.append(RootVec((HALF,) + tuple(HALF * s for s in signs)))
    return simple, positive, rootvec(1, 1, 0, 0), (0, 1, 2, 3)


def _e_series_simple() -> list[RootVec]:
    a1 = RootVec((HALF, -HALF, -HALF, -HALF, -HALF, -HALF, -HALF, HALF))
    out = [a1, _e(0, 8) + _e(1, 8)]
    out += [_e(i + 1, 8) - _e(i, 8) for i in range(7)]
    return out  # alpha_1, alpha_2, alpha_3..alpha_9 pattern; callers slice


def _build_e8(_rank: int):
    simple = _e_series_simple()[:8]
    positive = []
    for j in range(8):
        for i in range(j):
            positive += [_e(j, 8) + _e(i, 8), _e(j, 8) - _e(i, 8)]
    for signs in itertools.product((1, -1), repeat=7):
        if signs.count(-1) % 2 == 0:
            positive.append(RootVec(tuple(HALF * s for s in signs) + (HALF,)))
    highest = _e(6, 8) + _e(7, 8)
    return simple, positive, highest, tuple(reversed(range(8)))


def _build_e7(_rank: int):
    simple = _e_series_simple()[:7]
    positive = []
    for j in range(6):
        for i in range(j):
            positive += [_e(j, 8) + _e(i, 8), _e(j, 8) - _e(i, 8)]
    positive.append(_e(7, 8) - _e(6, 8))
    for signs in itertools.product((1, -1), repeat=6):
        if signs.count(-1) % 2 == 1:
            positive.append(
                RootVec(tuple(HALF * s for s in signs) + (-HALF, HALF))
            )
    highest = _e(7, 8) - _e(6, 8)
    return simple, positive, highest, tuple(reversed(range(8)))


def _build_e6(_rank: int):
    simple = _e_series_simple()[:6]
    positive = []
    for j in range(5):
        for i in range(j):
            positive += [_e(j, 8) + _e(i, 8), _e(j, 8) - _e(i, 8)]
    for signs in itertools.product((1, -1), repeat=5):
        if signs.count(-1) % 2 == 0:
            positive.append(
                RootVec(tuple(HALF * s for s in signs) + (-HALF, -HALF, HALF))
            )
    highest = RootVec((HALF, HALF, HALF, HALF, HALF, -HALF, -HALF, HALF))
    return simple, positive, highest, tuple(reversed(range(8)))


_CONSTRUCTORS = {
    "A": _build_a,
    "B": _build_b,
    "C": _build_c,
    "D": _build_d,
    "BC": _build_bc,
    "E6": _build_e6,
    "E7": _build_e7,
    "E8": _build_e8,
    "F4": _build_f4,
    "G2": _build_g2,
}


def reflect(v: RootVec, alpha: RootVec) -> RootVec:
    """Reflection of v in the hyperplane orthogonal to alpha."""
    # c = 2<v,a>/<a,a> = c_num/c_den with the denominators kept integral;
    # assembled in scaled-integer space to avoid per-coordinate Fractions.
    c_num = 2 * sum(x * y for x, y in zip(v._num, alpha._num)) * alpha._den
    c_den = v._den * sum(x * x for x in alpha._num)
    num = tuple(
        x * c_den * alpha._den - c_num * y * v._den
        for x, y in zip(v._num, alpha._num)
    )
    return RootVec._raw(num, v._den * c_den * alpha._den)


def reflection_closure(simple_roots) -> set[RootVec]:
    """All vectors reachable from the simple roots by simple reflections.

    For a reduced system this is the full root set; used as the
    independent cross-check against the explicit Bourbaki lists.
    """
    roots = set(simple_roots)
    frontier = set(simple_roots)
    while frontier:
        new = set()
        for v in frontier:
            for alpha in simple_roots:
                w = reflect(v, alpha)
                if w not in roots:
                    new.add(w)
        roots |= new
        frontier = new
    return roots


def _check_build(system: RootSystem) -> None:
    family, rank = system.rstype.family, system.rank
    expected = _POSITIVE_COUNT[family](rank)
    if len(system.positive_roots) != expected:
        raise InvariantViolation(
            f"{system.rstype.label()}: {len(system.positive_roots)} positive roots, "
            f"expected {expected}"
        )
    if len(set(system.positive_roots)) != expected:
        raise InvariantViolation(f"{system.rstype.label()}: duplicate positive roots")
    if not system.contains_positive(system.highest_root):
        raise InvariantViolation(f"{system.rstype.label()}: highest root not positive")
    key = system.sort_key
    if max(system.positive_roots, key=key) != system.highest_root:
        raise InvariantViolation(
            f"{system.rstype.label()}: highest root is not the lexicographic maximum"
        )
    if rank > 8:
        return
    # Independent reconstruction: reflection closure of the simple roots,
    # doubling the short roots in the non-reduced case.
    closure = reflection_closure(system.simple_roots)
    zero_key = (Fraction(0),) * system.ambient_dim
    pos = {v for v in closure if key(v) > zero_key}
    if family == "BC":
        shortest = min(norm_sq(v) for v in pos)
        pos |= {2 * v for v in pos if norm_sq(v) == shortest}
    if pos != set(system.positive_roots):
        raise InvariantViolation(
            f"{system.rstype.label()}: reflection closure disagrees with the "
            f"explicit root list"
        )
    reducible = family == "D" and rank == 2
    if not reducible:
        for mu in system.positive_roots:
            coeffs = system.simple_coefficients(system.highest_root - mu)
            if any(c < 0 for c in coeffs):
                raise InvariantViolation(
                    f"{system.rstype.label()}: highest root does not dominate {mu!r}"
                )


def is_root(system: RootSystem, v: RootVec) -> bool:
    """True when v or -v is a positive root of the system."""
    if v.dim != system.ambient_dim:
        raise ValueError(f"dimension mismatch: {v.dim} vs {system.ambient_dim}")
    return system.contains(v)


WOLF_ORTHOGONAL = "orthogonal"
WOLF_HALF = "half"
WOLF_HIGHEST = "highest"


def wolf_ratio(system: RootSystem, lam: RootVec) -> Fraction:
    return inner(lam, system.highest_root) / norm_sq(system.highest_root)


def wolf_class(system: RootSystem, lam: RootVec) -> str:
    """Value class of <lam, delta>/|delta|^2, which is 0, 1/2 or 1.

    Any other ratio is impossible in a correctly built system, so it
    raises InvariantViolation.
    """
    if not system.contains_positive(lam):
        raise ValueError(f"{lam!r} is not a positive root of {system.rstype.label()}")
    r = wolf_ratio(system, lam)
    if r == 0:
        return WOLF_ORTHOGONAL
    if r == HALF:
        return WOLF_HALF
    if r == 1:
        return WOLF_HIGHEST
    raise InvariantViolation(
        f"{system.rstype.label()}: Wolf ratio of {lam!r} is {r}, outside {{0, 1/2, 1}}"
    )


def delta_string_depth(system: RootSystem, lam: RootVec) -> int:
    """Largest -p with lam - p*delta still in the delta-string through lam.

    The string may pass through zero (that happens exactly for lam equal
    to the highest root).
    """
    depth = 0
    v = lam - system.highest_root
    while system.contains(v) or v.is_zero():
        depth -= 1
        v = v - system.highest_root
    return depth


def lowest_root(roots, sort_key) -> RootVec:
    """Minimum of a nonempty collection under the given lexicographic key."""
    roots = list(roots)
    if not roots:
        raise ValueError("lowest_root of an empty collection")
    dims = {v.dim for v in roots}
    if len(dims) != 1:
        raise ValueError("mixed ambient dimensions")
    return min(roots, key=sort_key)


def long_roots(system: RootSystem) -> tuple[RootVec, ...]:
    """Positive roots of maximal squared length (all of them when equal)."""
    top = max(norm_sq(v) for v in system.positive_roots)
    return tuple(v for v in system.positive_roots if norm_sq(v) == top)


def short_roots(system: RootSystem) -> tuple[RootVec, ...]:
    """Positive roots below the maximal squared length; empty when simply laced."""
    top = max(norm_sq(v) for v in system.positive_roots)
    return tuple(v for v in system.positive_roots if norm_sq(v) != top)
