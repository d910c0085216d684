"""Table builders and emitters (markdown, CSV, JSON) plus the golden check.

Formulas in the classification table are affine in the family integers p
and n; symbolic rows are produced by fitting that affine form to computed
values and are rendered like "4p+2n-7".  The embedded golden file
`table1.expected` stores the published formulas in the same normal form,
so `check_table1` can diff both the symbolic table and any numeric
instantiation grid against it.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from . import cayley, ferus, orbits, pairdb
from .rootsys import RootVec


class VerificationFailure(Exception):
    """A --check style comparison found mismatches."""


def rational_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def _render_affine(a: int, b: int, c: int) -> str:
    parts: list[str] = []
    for coeff, sym in ((a, "p"), (b, "n")):
        if coeff == 0:
            continue
        mag = "" if abs(coeff) == 1 else str(abs(coeff))
        if not parts:
            parts.append(("-" if coeff < 0 else "") + mag + sym)
        else:
            parts.append(("-" if coeff < 0 else "+") + mag + sym)
    if c != 0 or not parts:
        parts.append(str(c) if not parts else ("%+d" % c))
    return "".join(parts)


def eval_formula(formula: str, p: int | None = None, n: int | None = None) -> int:
    return pairdb.eval_expr(formula, p=p, n=n)


@dataclass(frozen=True)
class Table1Row:
    rstype: str
    rank: str
    g: str
    k: str
    l: str
    r: str
    degeneracy: int

    def __post_init__(self):
        # degeneracy must equal l - r identically; test at two points.
        for p, n in ((3, 2), (5, 4)):
            args = {}
            if "p" in self.l + self.r:
                args["p"] = p
            if "n" in self.l + self.r:
                args["n"] = n
            got = eval_formula(self.l, **args) - eval_formula(self.r, **args)
            if got != self.degeneracy:
                raise ValueError(f"degeneracy {self.degeneracy} != l-r = {got}")


def _classified_lr(family: pairdb.PairFamily, p: int | None, n: int | None):
    pair = family.instantiate(p=p, n=n)
    report = orbits.classify(pair, orbits.resolve_orbit(pair, "highest"))
    return report.l, report.r


def _affine_fit(family: pairdb.PairFamily, component: int) -> str:
    p0 = family.p_min if family.uses_p else None
    n0 = family.n_min if family.uses_n else None
    base = _classified_lr(family, p0, n0)[component]
    a = b = 0
    if family.uses_p:
        a = _classified_lr(family, p0 + 1, n0)[component] - base
    if family.uses_n:
        b = _classified_lr(family, p0, n0 + 1)[component] - base
    c = base - a * (p0 or 0) - b * (n0 or 0)
    for dp, dn in ((2, 0), (0, 3), (3, 2)):
        p = p0 + dp if family.uses_p else None
        n = n0 + dn if family.uses_n else None
        if (dp and not family.uses_p) or (dn and not family.uses_n):
            continue
        want = a * (p or 0) + b * (n or 0) + c
        if _classified_lr(family, p, n)[component] != want:
            raise VerificationFailure(
                f"{family.key}: table value is not affine in (p, n)"
            )
    return _render_affine(a, b, c)


def table1_rows(db: pairdb.PairDatabase) -> list[Table1Row]:
    """Symbolic classification table, one row per database family."""
    rows = []
    for family in db:
        l = _affine_fit(family, 0)
        r = _affine_fit(family, 1)
        args = {"p": 3} if family.uses_p else {}
        if family.uses_n:
            args["n"] = 2
        deg = eval_formula(l, **args) - eval_formula(r, **args)
        rows.append(
            Table1Row(
                rstype=family.family,
                rank="p" if family.rank_expr == "p" else family.rank_expr,
                g=family.g_name,
                k=family.k_name,
                l=l,
                r=r,
                degeneracy=deg,
            )
        )
    return rows


@dataclass(frozen=True)
class Table1Instance:
    rstype: str
    g: str
    k: str
    p: int | None
    n: int | None
    l: int
    r: int
    degeneracy: int


def table1_instances(
    db: pairdb.PairDatabase,
    p_range: tuple[int, int],
    n_range: tuple[int, int],
) -> list[Table1Instance]:
    """Numeric table over a parameter grid (clipped to each row's bounds)."""
    out = []
    for family in db:
        for pair in family.instantiations(p_range=p_range, n_range=n_range):
            report = orbits.classify(pair, orbits.resolve_orbit(pair, "highest"))
            out.append(
                Table1Instance(
                    rstype=family.family,
                    g=pair.g_name,
                    k=pair.k_name,
                    p=pair.p,
                    n=pair.n,
                    l=report.l,
                    r=report.r,
                    degeneracy=report.nullity,
                )
            )
    return out


def load_expected() -> list[Table1Row]:
    """The golden table; its schema equals the symbolic CSV output."""
    text = resources.files("gaussorbits").joinpath("data/table1.expected").read_text()
    reader = csv.DictReader(io.StringIO(text))
    return [
        Table1Row(
            rstype=rec["type"],
            rank=rec["rank"],
            g=rec["g"],
            k=rec["k"],
            l=rec["l"],
            r=rec["r"],
            degeneracy=int(rec["l-r"]),
        )
        for rec in reader
    ]


def check_table1(
    db: pairdb.PairDatabase,
    p_range: tuple[int, int] = (2, 6),
    n_range: tuple[int, int] = (1, 4),
) -> list[str]:
    """Mismatches between computed table values and the golden file.

    Compares the symbolic rows exactly, then every instantiation of every
    row over the grid against the golden formulas.  An empty list means a
    clean check.
    """
    problems: list[str] = []
    expected = load_expected()
    computed = table1_rows(db)
    if len(expected) != len(computed):
        problems.append(f"row count {len(computed)} != expected {len(expected)}")
    for exp, got in zip(expected, computed):
        if exp != got:
            problems.append(f"symbolic row differs: computed {got} expected {exp}")
    by_gk = {(row.g, row.k): row for row in expected}
    for family in db:
        exp = by_gk.get((family.g_name, family.k_name))
        if exp is None:
            continue
        for pair in family.instantiations(p_range=p_range, n_range=n_range):
            report = orbits.classify(pair, orbits.resolve_orbit(pair, "highest"))
            want_l = eval_formula(exp.l, p=pair.p, n=pair.n)
            want_r = eval_formula(exp.r, p=pair.p, n=pair.n)
            if (report.l, report.r, report.nullity) != (
                want_l,
                want_r,
                exp.degeneracy,
            ):
                problems.append(
                    f"{pair.label()}: computed (l, r, l-r) = "
                    f"({report.l}, {report.r}, {report.nullity}), expected "
                    f"({want_l}, {want_r}, {exp.degeneracy})"
                )
    return problems


# ---------------------------------------------------------------------------
# generic rendering

def render_json(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def render_table(headers: list[str], rows: list[list[str]], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(headers)
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "md":
        widths = [
            max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
            for i, h in enumerate(headers)
        ]
        def line(cells):
            return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"
        out = [line(headers), "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
        out += [line(r) for r in rows]
        return "\n".join(out) + "\n"
    if fmt == "json":
        return json.dumps(
            [dict(zip(headers, row)) for row in rows], indent=2
        ) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def parse_rendered(text: str, fmt: str) -> list[dict[str, str]]:
    """Read back a rendered table; used to diff formats against each other."""
    if fmt == "csv":
        return list(csv.DictReader(io.StringIO(text)))
    if fmt == "json":
        return json.loads(text)
    if fmt == "md":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        headers = [c.strip() for c in lines[0].strip("|").split("|")]
        out = []
        for ln in lines[2:]:
            cells = [c.strip() for c in ln.strip("|").split("|")]
            out.append(dict(zip(headers, cells)))
        return out
    raise ValueError(f"unknown format {fmt!r}")


def table1_cells(rows: list[Table1Row]):
    headers = ["type", "rank", "g", "k", "l", "r", "l-r"]
    cells = [
        [row.rstype, row.rank, row.g, row.k, row.l, row.r, str(row.degeneracy)]
        for row in rows
    ]
    return headers, cells


def table1_instance_cells(rows: list[Table1Instance]):
    headers = ["type", "g", "k", "p", "n", "l", "r", "l-r"]
    cells = [
        [
            row.rstype,
            row.g,
            row.k,
            "" if row.p is None else str(row.p),
            "" if row.n is None else str(row.n),
            str(row.l),
            str(row.r),
            str(row.degeneracy),
        ]
        for row in rows
    ]
    return headers, cells


def scan_cells(rows: list[ferus.ScanRow]):
    headers = ["pair", "p", "n", "orbit", "degenerate", "l", "r", "F(l)", "equality"]
    cells = [
        [
            row.pair,
            "" if row.p is None else str(row.p),
            "" if row.n is None else str(row.n),
            row.orbit,
            str(row.degenerate).lower(),
            str(row.l),
            str(row.r),
            str(row.ferus_l),
            str(row.equality).lower(),
        ]
        for row in rows
    ]
    return headers, cells


# ---------------------------------------------------------------------------
# JSON round-trips for the report types

def vec_to_json(v: RootVec) -> list[str]:
    return [rational_str(c) for c in v.coords]

def vec_from_json(data) -> RootVec:
    return RootVec(Fraction(c) for c in data)


def orbit_report_to_json(rep: orbits.OrbitReport) -> dict:
    return {
        "pair": rep.pair,
        "H": vec_to_json(rep.H),
        "degenerate": rep.degenerate,
        "l": rep.l,
        "r": rep.r,
        "nullity": rep.nullity,
        "rule": rep.rule,
        "root_class": rep.root_class,
        "satisfies_ab": rep.satisfies_ab,
    }

def orbit_report_from_json(data: dict) -> orbits.OrbitReport:
    return orbits.OrbitReport(
        pair=data["pair"],
        H=vec_from_json(data["H"]),
        degenerate=data["degenerate"],
        l=data["l"],
        r=data["r"],
        nullity=data["nullity"],
        rule=data["rule"],
        root_class=data["root_class"],
        satisfies_ab=data["satisfies_ab"],
    )


def spectrum_to_json(spec: orbits.CurvatureSpectrum) -> dict:
    return {"entries": [[rational_str(v), m] for v, m in spec.entries]}

def spectrum_from_json(data: dict) -> orbits.CurvatureSpectrum:
    return orbits.CurvatureSpectrum(
        entries=tuple((Fraction(v), m) for v, m in data["entries"])
    )


def certificate_to_json(cert: ferus.FerusCertificate) -> dict:
    return {
        "l": cert.l,
        "F": cert.F,
        "witness_k": cert.witness_k,
        "minimality_checked_up_to": cert.minimality_checked_up_to,
    }

def certificate_from_json(data: dict) -> ferus.FerusCertificate:
    return ferus.FerusCertificate(
        l=data["l"],
        F=data["F"],
        witness_k=data["witness_k"],
        minimality_checked_up_to=data["minimality_checked_up_to"],
    )


def scan_row_to_json(row: ferus.ScanRow) -> dict:
    return {
        "pair": row.pair,
        "p": row.p,
        "n": row.n,
        "orbit": row.orbit,
        "degenerate": row.degenerate,
        "l": row.l,
        "r": row.r,
        "F(l)": row.ferus_l,
        "equality": row.equality,
    }

def scan_row_from_json(data: dict) -> ferus.ScanRow:
    return ferus.ScanRow(
        pair=data["pair"],
        p=data["p"],
        n=data["n"],
        orbit=data["orbit"],
        degenerate=data["degenerate"],
        l=data["l"],
        r=data["r"],
        ferus_l=data["F(l)"],
        equality=data["equality"],
    )


def table1_row_to_json(row: Table1Row) -> dict:
    return {
        "type": row.rstype,
        "rank": row.rank,
        "g": row.g,
        "k": row.k,
        "l": row.l,
        "r": row.r,
        "degeneracy": row.degeneracy,
    }

def table1_row_from_json(data: dict) -> Table1Row:
    return Table1Row(
        rstype=data["type"],
        rank=data["rank"],
        g=data["g"],
        k=data["k"],
        l=data["l"],
        r=data["r"],
        degeneracy=data["degeneracy"],
    )


def appendix_to_json(v: cayley.AppendixVerification) -> dict:
    return {
        "algebra": v.algebra,
        "gammas": [vec_to_json(g) for g in v.gammas],
        "gamma_count_ok": v.gamma_count_ok,
        "equal_gamma_lengths": v.equal_gamma_lengths,
        "projected_type": v.projected_type,
        "projected_type_ok": v.projected_type_ok,
        "multiplicities": [list(item) for item in v.multiplicities],
        "preimage_cardinalities": (
            list(v.preimage_cardinalities)
            if v.preimage_cardinalities is not None
            else None
        ),
        "nu_orthogonal_to_lam": v.nu_orthogonal_to_lam,
        "identities_ok": v.identities_ok,
        "sum_to_delta_ok": v.sum_to_delta_ok,
        "maximal_abelian": v.maximal_abelian,
        "contraction_ok": v.contraction_ok,
        "m_plus_even": v.m_plus_even,
        "ok": v.ok,
    }

def appendix_from_json(data: dict) -> cayley.AppendixVerification:
    return cayley.AppendixVerification(
        algebra=data["algebra"],
        gammas=tuple(vec_from_json(g) for g in data["gammas"]),
        gamma_count_ok=data["gamma_count_ok"],
        equal_gamma_lengths=data["equal_gamma_lengths"],
        projected_type=data["projected_type"],
        projected_type_ok=data["projected_type_ok"],
        multiplicities=tuple((c, m) for c, m in data["multiplicities"]),
        preimage_cardinalities=(
            tuple(data["preimage_cardinalities"])
            if data["preimage_cardinalities"] is not None
            else None
        ),
        nu_orthogonal_to_lam=data["nu_orthogonal_to_lam"],
        identities_ok=data["identities_ok"],
        sum_to_delta_ok=data["sum_to_delta_ok"],
        maximal_abelian=data["maximal_abelian"],
        contraction_ok=data["contraction_ok"],
        m_plus_even=data["m_plus_even"],
    )
