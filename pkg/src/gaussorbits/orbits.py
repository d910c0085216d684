"""Tangential-degeneracy classification of isotropy orbits.

The orbit through a chamber point H is tangentially degenerate exactly
when H points along a long restricted root, or along a short root when
the restricted system is G2; the degeneracy then equals the multiplicity
of that root.  Everything else is non-degenerate.  `classify` applies
that rule after folding H into the closed chamber, records the orbit
dimension, Gauss rank and nullity, and cross-checks the sufficient
root-combinatorial conditions (a)/(b) on the way.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import pairdb, rootsys
from .rootsys import InvariantViolation, RootSystem, RootVec, inner, is_orthogonal

RULE_LONG_ROOT = "LongRoot"
RULE_G2_SHORT_ROOT = "G2ShortRoot"
RULE_NOT_PARALLEL = "NotParallelToRoot"
RULE_SHORT_NON_G2 = "ShortRootNonG2"

ORBIT_SPECS = ("highest", "long", "short", "middle")


@dataclass(frozen=True)
class OrbitReport:
    pair: str
    H: RootVec
    degenerate: bool
    l: int
    r: int
    nullity: int
    rule: str
    root_class: str | None = None
    satisfies_ab: bool | None = None

    def __post_init__(self):
        if self.nullity != self.l - self.r or self.nullity < 0:
            raise InvariantViolation(f"inconsistent report: {self}")
        if self.degenerate != (self.nullity > 0):
            raise InvariantViolation(f"inconsistent report: {self}")
        if self.degenerate and self.rule not in (RULE_LONG_ROOT, RULE_G2_SHORT_ROOT):
            raise InvariantViolation(f"degenerate orbit with rule {self.rule}")


@dataclass(frozen=True)
class CurvatureSpectrum:
    """Shape-operator eigenvalues with multiplicities, summing to l."""

    entries: tuple[tuple[Fraction, int], ...]

    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def kernel_dimension(self) -> int:
        return sum(m for value, m in self.entries if value == 0)


def weyl_fold(system: RootSystem, H: RootVec) -> RootVec:
    """The closed-chamber representative of the Weyl orbit of H."""
    if H.dim != system.ambient_dim:
        raise ValueError(f"dimension mismatch: {H.dim} vs {system.ambient_dim}")
    if H.is_zero():
        raise ValueError("H must be nonzero")
    current = H
    while True:
        for alpha in system.simple_roots:
            if rootsys._dot_sign_num(alpha, current) < 0:
                current = rootsys.reflect(current, alpha)
                break
        else:
            return current


def parallel_root(system: RootSystem, H: RootVec) -> RootVec | None:
    """A positive root on the line of H, of maximal length; None if no root is.

    In a BC system both e_1 and 2e_1 lie on the same line; the longer
    representative is returned so the classification rule sees the long
    root.
    """
    if H.is_zero():
        raise ValueError("H must be nonzero")
    best = None
    for mu in system.positive_roots:
        if rootsys.is_parallel(mu, H):
            if best is None or rootsys.norm_sq(mu) > rootsys.norm_sq(best):
                best = mu
    return best


@lru_cache(maxsize=4096)
def cond_a(system: RootSystem, lam: RootVec) -> bool:
    """2*lam is not a root."""
    if not system.contains(lam):
        raise ValueError(f"{lam!r} is not a root")
    return not system.contains(2 * lam)


@lru_cache(maxsize=4096)
def cond_b(system: RootSystem, lam: RootVec) -> bool:
    """No positive root orthogonal to lam gives a root when added/subtracted."""
    if not system.contains(lam):
        raise ValueError(f"{lam!r} is not a root")
    for nu in system.positive_roots:
        if is_orthogonal(nu, lam):
            if system.contains(lam + nu) or system.contains(lam - nu):
                return False
    return True


@lru_cache(maxsize=1024)
def _canonical_class_rep(system: RootSystem, spec: str) -> RootVec:
    classes = system.length_classes()
    wanted = [length for length, label in classes.items() if label == spec]
    if not wanted:
        raise ValueError(f"no {spec} roots in {system.rstype.label()}")
    members = [
        v
        for v, norm in zip(system.positive_roots, system.positive_norms)
        if norm == wanted[0]
    ]
    return max(members, key=system.sort_key)


def resolve_orbit(pair: pairdb.Pair, spec) -> RootVec:
    """Turn an orbit spec (vector or one of ORBIT_SPECS) into a chamber point."""
    system = pair.system()
    if isinstance(spec, RootVec):
        return spec
    if spec in ("highest", "long"):
        return system.highest_root
    if spec in ("short", "middle"):
        try:
            return _canonical_class_rep(system, spec)
        except ValueError as exc:
            raise ValueError(f"{pair.key}: {exc}") from None
    raise ValueError(f"unknown orbit spec {spec!r}")


def classify(pair: pairdb.Pair, H: RootVec) -> OrbitReport:
    """Full degeneracy report for the orbit through H.

    The report is scale-free: H is folded into the closed chamber and
    rescaled to the primitive integer vector on its ray, so reports of
    Weyl-equivalent and positively proportional inputs compare equal.
    """
    if H.is_zero():
        raise ValueError("H must be nonzero")
    system, mult = pairdb.restricted_system(pair)
    folded = rootsys.primitive_ray(weyl_fold(system, H))
    l = pairdb.orbit_dimension(pair, folded)
    lam = parallel_root(system, folded)
    if lam is None:
        return OrbitReport(
            pair=pair.label(),
            H=folded,
            degenerate=False,
            l=l,
            r=l,
            nullity=0,
            rule=RULE_NOT_PARALLEL,
        )
    root_class = system.root_class(lam)
    ab = cond_a(system, lam) and cond_b(system, lam)
    if root_class == "long":
        rule, degenerate = RULE_LONG_ROOT, True
    elif system.rstype.family == "G2":
        rule, degenerate = RULE_G2_SHORT_ROOT, True
    else:
        rule, degenerate = RULE_SHORT_NON_G2, False
    if ab and not degenerate:
        raise InvariantViolation(
            f"{pair.key}: {lam!r} satisfies (a) and (b) but was not classified "
            f"degenerate"
        )
    nullity = mult.of(lam) if degenerate else 0
    return OrbitReport(
        pair=pair.label(),
        H=folded,
        degenerate=degenerate,
        l=l,
        r=l - nullity,
        nullity=nullity,
        rule=rule,
        root_class=root_class,
        satisfies_ab=ab,
    )


def principal_curvatures(pair: pairdb.Pair, H: RootVec, xi: RootVec) -> CurvatureSpectrum:
    """Eigenvalues -<lam,xi>/<lam,H> of the shape operator A_xi, merged.

    xi must be a normal direction inside the flat: <xi, H> = 0.
    """
    if H.is_zero():
        raise ValueError("H must be nonzero")
    system, mult = pairdb.restricted_system(pair)
    if xi.dim != H.dim or H.dim != system.ambient_dim:
        raise ValueError("dimension mismatch")
    if not is_orthogonal(xi, H):
        raise ValueError(f"xi={xi!r} is not orthogonal to H={H!r}")
    spectrum: dict[Fraction, int] = {}
    for lam in system.positive_roots:
        denom = inner(lam, H)
        if denom == 0:
            continue
        value = -inner(lam, xi) / denom
        spectrum[value] = spectrum.get(value, 0) + mult.of(lam)
    entries = tuple(sorted(spectrum.items()))
    return CurvatureSpectrum(entries=entries)


def nullity_upper_bound(pair: pairdb.Pair, H: RootVec) -> int:
    """Sum of m(mu) over positive roots mu on the line of H.

    This is the a-priori bound on the relative nullity; for BC pairs at
    the long-root orbit it strictly exceeds the actual nullity because
    both e_1 and 2e_1 contribute.
    """
    if H.is_zero():
        raise ValueError("H must be nonzero")
    system, mult = pairdb.restricted_system(pair)
    return sum(
        mult.of(mu) for mu in system.positive_roots if rootsys.is_parallel(mu, H)
    )
