"""Database of irreducible compact symmetric pairs of rank at least two.

Each record of the embedded (or user-supplied) `pairs.dat` describes one
family of pairs: display names, restricted root system, multiplicities of
the Weyl-orbit classes of positive restricted roots (possibly depending
on family integers p and n), structural flags and the isotropy dimension.
The multiplicities are the load-bearing data: the dimension of the orbit
through H is the sum of them over the roots not orthogonal to H, and that
is what every table value in this package is computed from.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

from . import rootsys
from .rootsys import RootSystem, RootSystemType, RootVec, is_orthogonal

FLAGS = frozenset(
    ["hermitian", "normal_real_form", "quaternionic_F4_exceptional", "group_manifold"]
)

# Squared length of each multiplicity class per family, and the number of
# positive roots in the class as a function of the rank.
_CLASS_LENGTH: dict[str, dict[str, int]] = {
    "A": {"all": 2},
    "D": {"all": 2},
    "E6": {"all": 2},
    "E7": {"all": 2},
    "E8": {"all": 2},
    "B": {"e_i": 1, "e_i+-e_j": 2},
    "C": {"e_i+-e_j": 2, "2e_i": 4},
    "BC": {"e_i": 1, "e_i+-e_j": 2, "2e_i": 4},
    "F4": {"short": 1, "long": 2},
    "G2": {"short": 2, "long": 6},
}

_CLASS_COUNT = {
    "A": {"all": lambda p: p * (p + 1) // 2},
    "D": {"all": lambda p: p * (p - 1)},
    "E6": {"all": lambda p: 36},
    "E7": {"all": lambda p: 63},
    "E8": {"all": lambda p: 120},
    "B": {"e_i": lambda p: p, "e_i+-e_j": lambda p: p * (p - 1)},
    "C": {"e_i+-e_j": lambda p: p * (p - 1), "2e_i": lambda p: p},
    "BC": {
        "e_i": lambda p: p,
        "e_i+-e_j": lambda p: p * (p - 1),
        "2e_i": lambda p: p,
    },
    "F4": {"short": lambda p: 12, "long": lambda p: 12},
    "G2": {"short": lambda p: 3, "long": lambda p: 3},
}


class PairsFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


_ALLOWED_OPS = (ast.Add, ast.Sub, ast.Mult, ast.Div)


def eval_expr(text: str, p: int | None = None, n: int | None = None) -> int:
    """Evaluate an integer-valued arithmetic expression in p and n.

    Implicit multiplication between a digit and p/n/'(' is accepted, so
    both "4*p+2*n-7" and "4p+2n-7" work.
    """
    src = re.sub(r"(\d)\s*([pn(])", r"\1*\2", text)
    try:
        node = ast.parse(src, mode="eval").body
    except SyntaxError as exc:
        raise ValueError(f"bad expression {text!r}: {exc}") from None

    def ev(node) -> Fraction:
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            value = {"p": p, "n": n}.get(node.id)
            if value is None:
                raise ValueError(f"expression {text!r} needs a value for {node.id!r}")
            return Fraction(value)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_OPS):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            return a / b
        raise ValueError(f"unsupported construct in expression {text!r}")

    result = ev(node)
    if result.denominator != 1:
        raise ValueError(f"expression {text!r} is not integral: {result}")
    return int(result)


def _expr_uses(text: str, name: str) -> bool:
    return re.search(rf"\b{name}\b", text) is not None


def render_name(name: str, p: int | None = None, n: int | None = None) -> str:
    """Instantiate p and n inside the parenthesized parts of a display name."""
    pattern = re.compile(r"\(([0-9pn+\-*/ ]+)\)")

    def sub(match):
        return "(%d)" % eval_expr(match.group(1), p=p, n=n)

    return pattern.sub(sub, name)


def normalize_key(text: str) -> str:
    text = text.strip().lower().replace(" ", "")
    for old, new in (("⊕", "+"), ("×", "+"), ("²", "^2")):
        text = text.replace(old, new)
    # A doubled summand is the same thing as a square: "g2+g2" -> "g2^2".
    return "|".join(
        re.sub(r"^(.+)\+\1$", r"\1^2", part) for part in text.split("|")
    )


class MultiplicityFn:
    """Multiplicities of the positive-root classes of one instantiated pair."""

    __slots__ = ("by_class", "_by_length")

    def __init__(self, family: str, by_class: dict[str, int]):
        self.by_class = dict(by_class)
        self._by_length = {
            Fraction(_CLASS_LENGTH[family][tag]): m for tag, m in by_class.items()
        }

    def of(self, root: RootVec) -> int:
        return self._by_length[rootsys.norm_sq(root)]

    def total(self, system: RootSystem) -> int:
        return sum(self.of(v) for v in system.positive_roots)

    def __repr__(self):
        inner = ", ".join(f"{t}={m}" for t, m in sorted(self.by_class.items()))
        return f"MultiplicityFn({inner})"


@dataclass(frozen=True)
class Pair:
    """One instantiated symmetric pair (concrete rank and multiplicities)."""

    key: str
    g_name: str
    k_name: str
    rstype: RootSystemType
    mult_by_class: tuple[tuple[str, int], ...]
    flags: frozenset[str]
    dim_m: int
    p: int | None = None
    n: int | None = None

    def system(self) -> RootSystem:
        return rootsys.build(self.rstype)

    def multiplicities(self) -> MultiplicityFn:
        return MultiplicityFn(self.rstype.family, dict(self.mult_by_class))

    def label(self) -> str:
        params = [f"p={self.p}" if self.p is not None else "",
                  f"n={self.n}" if self.n is not None else ""]
        params = ",".join(x for x in params if x)
        return f"{self.key}" + (f" [{params}]" if params else "")


@dataclass(frozen=True)
class PairFamily:
    """One record of pairs.dat; instantiate() produces concrete pairs."""

    key: str
    g_name: str
    k_name: str
    family: str
    rank_expr: str  # "p" or a decimal rank
    p_min: int | None
    p_max: int | None
    n_min: int | None
    n_max: int | None
    mult: tuple[tuple[str, str], ...]
    flags: frozenset[str]
    dim_m_expr: str
    aliases: tuple[str, ...] = ()

    @property
    def uses_p(self) -> bool:
        return self.p_min is not None

    @property
    def uses_n(self) -> bool:
        return self.n_min is not None

    def instantiate(self, p: int | None = None, n: int | None = None) -> Pair:
        if self.uses_p:
            if p is None:
                raise ValueError(f"{self.key}: parameter p is required")
            if p < self.p_min or (self.p_max is not None and p > self.p_max):
                raise ValueError(f"{self.key}: p={p} outside [{self.p_min}, {self.p_max or '*'}]")
        else:
            p = None
        if self.uses_n:
            if n is None:
                raise ValueError(f"{self.key}: parameter n is required")
            if n < self.n_min or (self.n_max is not None and n > self.n_max):
                raise ValueError(f"{self.key}: n={n} outside [{self.n_min}, {self.n_max or '*'}]")
        else:
            n = None

        rank = p if self.rank_expr == "p" else int(self.rank_expr)
        rstype = RootSystemType(self.family, rank)
        by_class = {
            tag: eval_expr(expr, p=p, n=n) for tag, expr in self.mult
        }
        for tag, m in by_class.items():
            if m < 1:
                raise ValueError(f"{self.key}: multiplicity of {tag} is {m} < 1")
        if "group_manifold" in self.flags and set(by_class.values()) != {2}:
            raise ValueError(f"{self.key}: group manifold with multiplicities != 2")
        dim_m = eval_expr(self.dim_m_expr, p=p, n=n)
        counted = sum(
            _CLASS_COUNT[self.family][tag](rank) * m for tag, m in by_class.items()
        )
        if counted + rank != dim_m:
            raise ValueError(
                f"{self.key}: multiplicity total {counted} + rank {rank} != dim_m {dim_m}"
            )
        return Pair(
            key=self.key,
            g_name=render_name(self.g_name, p=p, n=n),
            k_name=render_name(self.k_name, p=p, n=n),
            rstype=rstype,
            mult_by_class=tuple(sorted(by_class.items())),
            flags=self.flags,
            dim_m=dim_m,
            p=p,
            n=n,
        )

    def instantiations(self, p_range=None, n_range=None):
        """All concrete pairs over the given (inclusive) parameter ranges."""
        if not self.uses_p:
            yield self.instantiate()
            return
        lo, hi = p_range
        lo = max(lo, self.p_min)
        if self.p_max is not None:
            hi = min(hi, self.p_max)
        for p in range(lo, hi + 1):
            if not self.uses_n:
                yield self.instantiate(p=p)
                continue
            nlo, nhi = n_range
            nlo = max(nlo, self.n_min)
            if self.n_max is not None:
                nhi = min(nhi, self.n_max)
            for n in range(nlo, nhi + 1):
                yield self.instantiate(p=p, n=n)


class PairDatabase:
    """Loaded pair families, with lookup by key, alias or (g, k) names."""

    def __init__(self, families: list[PairFamily]):
        self.families = tuple(families)
        self._index: dict[str, PairFamily] = {}
        for fam in families:
            for key in (fam.key, *fam.aliases):
                norm = normalize_key(key)
                if norm in self._index:
                    raise PairsFormatError(f"duplicate pair key {key!r}")
                self._index[norm] = fam

    def __iter__(self):
        return iter(self.families)

    def __len__(self):
        return len(self.families)

    def get(self, key: str) -> PairFamily:
        norm = normalize_key(key)
        if norm not in self._index:
            raise KeyError(f"unknown pair {key!r}")
        return self._index[norm]

    def lookup(self, g: str, k: str) -> PairFamily:
        return self.get(f"{g}|{k}")


def _data_path() -> Path:
    return Path(resources.files("gaussorbits").joinpath("data/pairs.dat"))


def load_database(path: str | Path | None = None) -> PairDatabase:
    """Parse pairs.dat (the embedded copy unless a path is given)."""
    text = Path(path).read_text() if path else _data_path().read_text()
    return parse_database(text)


def parse_database(text: str) -> PairDatabase:
    families: list[PairFamily] = []
    current: dict | None = None
    start_line = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        word, args = tokens[0], tokens[1:]
        if word == "pair":
            if current is not None:
                raise PairsFormatError("nested pair record", lineno)
            if len(args) != 1:
                raise PairsFormatError("pair needs exactly one key", lineno)
            current = {"key": args[0], "mult": [], "flags": [], "aliases": []}
            start_line = lineno
            continue
        if current is None:
            raise PairsFormatError(f"{word!r} outside a pair record", lineno)
        if word == "end":
            families.append(_finish_record(current, start_line))
            current = None
        elif word in ("g", "k"):
            if len(args) != 1:
                raise PairsFormatError(f"{word} needs one value", lineno)
            current[word] = args[0]
        elif word == "type":
            if len(args) != 2:
                raise PairsFormatError("type needs family and rank", lineno)
            current["family"], current["rank"] = args
        elif word == "params":
            if len(args) != 3 or args[0] not in ("p", "n"):
                raise PairsFormatError("params needs: p|n min max", lineno)
            try:
                lo = int(args[1])
                hi = None if args[2] == "*" else int(args[2])
            except ValueError:
                raise PairsFormatError(f"bad params bounds {args[1:]!r}", lineno) from None
            current[f"{args[0]}_range"] = (lo, hi)
        elif word == "mult":
            if len(args) != 2:
                raise PairsFormatError("mult needs class and expression", lineno)
            current["mult"].append((args[0], args[1]))
        elif word == "flags":
            bad = [f for f in args if f not in FLAGS]
            if bad:
                raise PairsFormatError(f"unknown flags {bad}", lineno)
            current["flags"].extend(args)
        elif word == "dim_m":
            if len(args) != 1:
                raise PairsFormatError("dim_m needs one expression", lineno)
            current["dim_m"] = args[0]
        elif word == "alias":
            if len(args) != 1:
                raise PairsFormatError("alias needs one key", lineno)
            current["aliases"].append(args[0])
        else:
            raise PairsFormatError(f"unknown field {word!r}", lineno)
    if current is not None:
        raise PairsFormatError("unterminated pair record", start_line)
    return PairDatabase(families)


def _finish_record(rec: dict, line: int) -> PairFamily:
    for field in ("g", "k", "family", "dim_m"):
        if field not in rec:
            raise PairsFormatError(f"pair {rec['key']!r} missing field {field!r}", line)
    family = rec["family"]
    if family not in _CLASS_LENGTH:
        raise PairsFormatError(f"unknown family {family!r}", line)
    rank_expr = rec["rank"]
    if rank_expr == "p":
        if "p_range" not in rec:
            raise PairsFormatError(f"pair {rec['key']!r} has rank p but no params p", line)
    else:
        try:
            int(rank_expr)
        except ValueError:
            raise PairsFormatError(f"bad rank {rank_expr!r}", line) from None
        if "p_range" in rec:
            raise PairsFormatError(f"pair {rec['key']!r} has fixed rank and params p", line)
    tags = [tag for tag, _ in rec["mult"]]
    expected = set(_CLASS_LENGTH[family])
    if set(tags) != expected or len(tags) != len(expected):
        raise PairsFormatError(
            f"pair {rec['key']!r} classes {sorted(tags)} != {sorted(expected)}", line
        )
    uses_n = any(_expr_uses(expr, "n") for _, expr in rec["mult"]) or _expr_uses(
        rec["dim_m"], "n"
    )
    if uses_n != ("n_range" in rec):
        raise PairsFormatError(
            f"pair {rec['key']!r}: params n must be present exactly when n is used",
            line,
        )
    p_range = rec.get("p_range", (None, None))
    n_range = rec.get("n_range", (None, None))
    fam = PairFamily(
        key=rec["key"],
        g_name=rec["g"],
        k_name=rec["k"],
        family=family,
        rank_expr=rank_expr,
        p_min=p_range[0],
        p_max=p_range[1],
        n_min=n_range[0],
        n_max=n_range[1],
        mult=tuple(rec["mult"]),
        flags=frozenset(rec["flags"]),
        dim_m_expr=rec["dim_m"],
        aliases=tuple(rec["aliases"]),
    )
    # Validate at the smallest instantiation so data errors surface at load.
    try:
        fam.instantiate(p=fam.p_min, n=fam.n_min)
    except ValueError as exc:
        raise PairsFormatError(str(exc), line) from None
    return fam


def serialize(db: PairDatabase) -> str:
    """Canonical text form of a database (modulo comments and whitespace)."""
    blocks = []
    for fam in db:
        lines = [f"pair {fam.key}", f"  g {fam.g_name}", f"  k {fam.k_name}",
                 f"  type {fam.family} {fam.rank_expr}"]
        if fam.uses_p:
            lines.append(f"  params p {fam.p_min} {fam.p_max if fam.p_max is not None else '*'}")
        if fam.uses_n:
            lines.append(f"  params n {fam.n_min} {fam.n_max if fam.n_max is not None else '*'}")
        for tag, expr in fam.mult:
            lines.append(f"  mult {tag} {expr}")
        if fam.flags:
            lines.append("  flags " + " ".join(sorted(fam.flags)))
        lines.append(f"  dim_m {fam.dim_m_expr}")
        for alias in fam.aliases:
            lines.append(f"  alias {alias}")
        lines.append("end")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


@lru_cache(maxsize=1024)
def restricted_system(pair: Pair) -> tuple[RootSystem, MultiplicityFn]:
    """The built restricted root system with multiplicities bound to it."""
    system = pair.system()
    mult = pair.multiplicities()
    if set(system.positive_norms) != set(mult._by_length):
        raise ValueError(f"{pair.key}: multiplicity classes do not cover the system")
    return system, mult


@lru_cache(maxsize=1024)
def _multiplicity_array(pair: Pair) -> tuple[int, ...]:
    # Multiplicities aligned with system.positive_roots.
    system, mult = restricted_system(pair)
    return tuple(mult._by_length[norm] for norm in system.positive_norms)


def orbit_dimension(pair: Pair, H: RootVec) -> int:
    """dim Ad(K)H: the sum of m(mu) over positive mu not orthogonal to H."""
    if H.is_zero():
        raise ValueError("H must be nonzero")
    system, _ = restricted_system(pair)
    marr = _multiplicity_array(pair)
    return sum(
        m
        for mu, m in zip(system.positive_roots, marr)
        if not is_orthogonal(mu, H)
    )


@dataclass(frozen=True)
class ChamberFace:
    """The face data of a closed-chamber point: Delta and R_+^Delta."""

    delta: frozenset[RootVec]
    orthogonal_positives: tuple[RootVec, ...]


def chamber_face(pair: Pair, H: RootVec) -> ChamberFace:
    """Simple roots pairing positively with H, plus the positives orthogonal to H.

    H must lie in the closed chamber; callers fold first (see orbits.weyl_fold).
    """
    system, _ = restricted_system(pair)
    for alpha in system.simple_roots:
        if rootsys.inner(alpha, H) < 0:
            raise ValueError(f"H={H!r} outside the closed chamber")
    delta = frozenset(
        alpha for alpha in system.simple_roots if not is_orthogonal(alpha, H)
    )
    orthogonal = tuple(
        mu for mu in system.positive_roots if is_orthogonal(mu, H)
    )
    return ChamberFace(delta=delta, orthogonal_positives=orthogonal)
