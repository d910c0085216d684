"""Adams and Ferus numbers, and the equality scan over the pair database.

A(k) counts the independent vector fields on the (k-1)-sphere: writing
k = (2s+1) * 2^t and t = c + 4d with 0 <= c <= 3, A(k) = 2^c + 8d - 1.
F(l) is the least k with A(k) + k >= l; a Gauss map of rank below F(l)
forces the submanifold to be a great sphere, so degenerate orbits with
r = F(l) sit exactly on that boundary.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import orbits, pairdb


def adams(k: int) -> int:
    if k < 1:
        raise ValueError(f"adams({k}): k must be >= 1")
    t = (k & -k).bit_length() - 1  # 2-adic valuation
    c, d = t % 4, t // 4
    return 2**c + 8 * d - 1


@dataclass(frozen=True)
class FerusCertificate:
    """Minimal k with A(k) + k >= l, plus the verified minimality range."""

    l: int
    F: int
    witness_k: int
    minimality_checked_up_to: int

    def __post_init__(self):
        if self.F != self.witness_k or self.minimality_checked_up_to != self.F - 1:
            raise ValueError(f"inconsistent certificate: {self}")


def ferus(l: int) -> FerusCertificate:
    """Ascending scan for F(l); terminates because A(l) + l >= l."""
    if l < 1:
        raise ValueError(f"ferus({l}): l must be >= 1")
    k = 1
    while adams(k) + k < l:
        k += 1
    return FerusCertificate(l=l, F=k, witness_k=k, minimality_checked_up_to=k - 1)


def ferus_identity_check(q: int) -> bool:
    """Check F(2^q + a) = 2^q for all 0 <= a <= 2^c + 8d - 1 with q = c + 4d."""
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    c, d = q % 4, q // 4
    bound = 2**c + 8 * d - 1
    return all(ferus(2**q + a).F == 2**q for a in range(bound + 1))


# Orbit classes swept per restricted-system family: the long-root orbit
# always, plus the distinct shorter-root rays where they exist.  For BC
# the e_i ray coincides with the 2e_i ray, so only "middle" is extra.
_SCAN_ORBITS = {
    "A": ("long",),
    "D": ("long",),
    "E6": ("long",),
    "E7": ("long",),
    "E8": ("long",),
    "B": ("long", "short"),
    "C": ("long", "short"),
    "F4": ("long", "short"),
    "G2": ("long", "short"),
    "BC": ("long", "middle"),
}

DEFAULT_P_RANGE = (2, 16)
DEFAULT_N_RANGE = (0, 16)


@dataclass(frozen=True)
class ScanRow:
    pair: str
    p: int | None
    n: int | None
    orbit: str
    degenerate: bool
    l: int
    r: int
    ferus_l: int
    equality: bool


def equality_scan(
    db: pairdb.PairDatabase,
    p_range: tuple[int, int] = DEFAULT_P_RANGE,
    n_range: tuple[int, int] = DEFAULT_N_RANGE,
) -> list[ScanRow]:
    """Classify every orbit class of every instantiation; flag F(l) = r.

    The Ferus equality is only meaningful for degenerate orbits, so
    non-degenerate rows always carry equality=False.
    """
    rows: list[ScanRow] = []
    for family in db:
        for pair in family.instantiations(p_range=p_range, n_range=n_range):
            for orbit_spec in _SCAN_ORBITS[pair.rstype.family]:
                H = orbits.resolve_orbit(pair, orbit_spec)
                report = orbits.classify(pair, H)
                f = ferus(report.l).F
                rows.append(
                    ScanRow(
                        pair=pair.key,
                        p=pair.p,
                        n=pair.n,
                        orbit=orbit_spec,
                        degenerate=report.degenerate,
                        l=report.l,
                        r=report.r,
                        ferus_l=f,
                        equality=report.degenerate and f == report.r,
                    )
                )
    return rows
