"""Golden data: loading, recomputation and term-level diffs.

Polynomials live one per file under ``_fixtures/`` in the A[c]/q^e text form.
File names encode the id:

    f4_twisted_2.txt                       Ẽ†_2 of F4, twisted
    f4_twisted_singular_dag_2.txt          its singular part E‡_2
    e6_untwisted_singular_kostant_4.txt    the Kostant comparator K^sing_4

Tables and bi-characters are TOML files in the same directory.
"""

from __future__ import annotations

import logging
import re
import tomllib
from dataclasses import dataclass, field
from enum import StrEnum
from functools import cached_property
from importlib import resources
from importlib.resources.abc import Traversable
from pathlib import Path
from typing import Any

import sympy

from .affine import Setting
from .dagops import dag_table, extremal_dag_general
from .kostant import KostantSolver, difference, k_sing, n_min
from .pbwdeg import e_ddag, e_tilde_poly
from .qlaurent import (
    OffsetTerms,
    QLaurent,
    format_term,
    format_terms,
    from_offset_terms,
    parse_terms,
    to_offset_terms,
)
from .rootsystem import RootSystemData, Vector, WeylElement, build_root_system

logger = logging.getLogger(__name__)

G2_TABLE_ID = "g2_table"
BICHARACTER_FILE = "a3_bicharacters.toml"
COUNTEREXAMPLE_FILE = "counterexamples.toml"
E6_RULES_FILE = "e6_ksing_rules.toml"

# verification sets understood by ``ids_for``
VERIFY_SETS = ("f4", "e6", "g2", "a3", "all")

_ID_RE = re.compile(
    r"^(?P<label>[a-g]\d+)_(?P<setting>twisted|untwisted)_"
    r"(?:(?P<singular>singular_(?:dag|kostant))_|(?P<bichar>bicharacter)_)?(?P<index>\d+)$"
)
_KEY_RE = re.compile(r"^A\[(-?\d+(?:,-?\d+)*)\]$")


class Kind(StrEnum):
    EDAG_TILDE = "edag_tilde"
    EDDAG = "eddag"
    KSING = "ksing"
    BICHARACTER = "bicharacter"


_KIND_INFIX = {
    Kind.EDAG_TILDE: "",
    Kind.EDDAG: "singular_dag_",
    Kind.KSING: "singular_kostant_",
    Kind.BICHARACTER: "bicharacter_",
}


@dataclass(frozen=True, order=True)
class FixtureId:
    label: str
    setting: Setting
    index: int
    kind: Kind

    @classmethod
    def parse(cls, text: str) -> FixtureId:
        match = _ID_RE.match(text.strip().lower())
        if not match:
            raise KeyError(f"Unknown fixture id: {text!r}")
        if match.group("bichar"):
            kind = Kind.BICHARACTER
        elif match.group("singular") == "singular_dag":
            kind = Kind.EDDAG
        elif match.group("singular") == "singular_kostant":
            kind = Kind.KSING
        else:
            kind = Kind.EDAG_TILDE
        return cls(
            label=match.group("label").upper(),
            setting=Setting(match.group("setting")),
            index=int(match.group("index")),
            kind=kind,
        )

    @property
    def name(self) -> str:
        return f"{self.label.lower()}_{self.setting}_{_KIND_INFIX[self.kind]}{self.index}"

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class GoldenPolynomial:
    id: FixtureId
    text: str
    base: Vector

    @property
    def system(self) -> RootSystemData:
        return build_root_system(self.id.label)

    @cached_property
    def terms(self) -> OffsetTerms:
        return parse_terms(self.text, self.system.rank)

    @cached_property
    def parsed(self) -> QLaurent:
        return from_offset_terms(self.terms, self.system, self.base)


@dataclass(frozen=True)
class G2Row:
    word: tuple[int, ...]
    omega1: Vector
    omega2: Vector
    a: Vector
    a_nu: Vector
    a_tilde_nu: Vector
    starred: bool = False


@dataclass(frozen=True)
class GoldenTable:
    rows: tuple[G2Row, ...]


@dataclass(frozen=True)
class Counterexample:
    system: str
    setting: Setting
    weight: Vector
    w: str
    combined: int
    separate: int

    def element(self) -> WeylElement:
        system = build_root_system(self.system)
        if self.w == "w0":
            return system.longest_element()
        return system.from_word(int(ch) for ch in self.w)


@dataclass(frozen=True)
class DiffEntry:
    """One mismatch; ``kind`` is missing, extra, exponent or value."""

    kind: str
    key: str
    expected: str = ""
    found: str = ""

    def as_dict(self) -> dict[str, str]:
        return {"kind": self.kind, "key": self.key, "expected": self.expected, "found": self.found}

    def format(self) -> str:
        if self.kind == "missing":
            return f"- {self.expected}"
        if self.kind == "extra":
            return f"+ {self.found}"
        return f"~ {self.key}: {self.expected} -> {self.found}"


@dataclass
class FixtureStore:
    """Golden files from the embedded package data or a directory on disk."""

    directory: Path | None = None
    _cache: dict[str, str] = field(default_factory=dict, repr=False)

    def _root(self) -> Traversable:
        if self.directory is not None:
            return self.directory
        return resources.files(f"{__package__}._fixtures")

    def read(self, filename: str) -> str:
        if filename not in self._cache:
            entry = self._root().joinpath(filename)
            if not entry.is_file():
                raise KeyError(f"Unknown fixture id: {filename!r}")
            self._cache[filename] = entry.read_text(encoding="utf-8")
        return self._cache[filename]

    def read_toml(self, filename: str) -> dict[str, Any]:
        try:
            return tomllib.loads(self.read(filename))
        except tomllib.TOMLDecodeError as exc:
            raise ValueError(f"Invalid TOML in fixture {filename}: {exc}") from None

    def names(self) -> list[str]:
        return sorted(entry.name for entry in self._root().iterdir())


def _store(directory: str | Path | None) -> FixtureStore:
    return FixtureStore(Path(directory) if directory else None)


# ---- loading ----


def load(fixture_id: str | FixtureId, directory: str | Path | None = None):
    """A GoldenPolynomial for a polynomial id, a GoldenTable for ``g2_table``."""
    store = _store(directory)
    if str(fixture_id) == G2_TABLE_ID:
        return load_g2_table(store)
    fid = fixture_id if isinstance(fixture_id, FixtureId) else FixtureId.parse(fixture_id)
    if fid.kind is Kind.BICHARACTER:
        return _load_bicharacter(fid, store)
    system = build_root_system(fid.label)
    if not 1 <= fid.index <= system.rank:
        raise KeyError(f"Unknown fixture id: {fid.name!r}")
    text = store.read(f"{fid.name}.txt")
    base = tuple(-v for v in system.fundamental_weight(fid.index))
    return GoldenPolynomial(fid, text, base)


def _vector(value: list[int]) -> Vector:
    return tuple(int(v) for v in value)


def load_g2_table(store: FixtureStore | None = None) -> GoldenTable:
    store = store or FixtureStore()
    data = store.read_toml(f"{G2_TABLE_ID}.toml")
    rows = []
    for row in data.get("row", []):
        rows.append(
            G2Row(
                word=tuple(int(ch) for ch in row["word"]),
                omega1=_vector(row["omega1"]),
                omega2=_vector(row["omega2"]),
                a=_vector(row["a"]),
                a_nu=_vector(row["a_nu"]),
                a_tilde_nu=_vector(row["a_tilde_nu"]),
                starred=bool(row.get("starred", False)),
            )
        )
    return GoldenTable(tuple(rows))


def load_counterexamples(directory: str | Path | None = None) -> list[Counterexample]:
    data = _store(directory).read_toml(COUNTEREXAMPLE_FILE)
    return [
        Counterexample(
            system=str(case["system"]),
            setting=Setting.parse(case["setting"]),
            weight=_vector(case["weight"]),
            w=str(case["w"]),
            combined=int(case["combined"]),
            separate=int(case["separate"]),
        )
        for case in data.get("case", [])
    ]


def inert_notes(directory: str | Path | None = None) -> dict[str, str]:
    return dict(_store(directory).read_toml(BICHARACTER_FILE).get("inert", {}))


def specialize_bicharacter(expr: str) -> dict[int, int]:
    """q^a·t^b ↦ q^{−(a+b)}; returns {e: k} for the resulting Σ k·q^{−e}."""
    q, t = sympy.symbols("q t")
    poly = sympy.Poly(sympy.sympify(expr, locals={"q": q, "t": t}).subs(t, q), q)
    out: dict[int, int] = {}
    for (power,), coeff in poly.terms():
        if not coeff.is_integer:
            raise ValueError(f"Non-integral coefficient {coeff} in {expr!r}")
        out[int(power)] = int(coeff)
    return out


def _load_bicharacter(fid: FixtureId, store: FixtureStore) -> GoldenPolynomial:
    entries = store.read_toml(BICHARACTER_FILE).get("bicharacter", [])
    if fid.label != "A3" or not 1 <= fid.index <= len(entries):
        raise KeyError(f"Unknown fixture id: {fid.name!r}")
    entry = entries[fid.index - 1]
    system = build_root_system(fid.label)
    base = _vector(entry["b"])
    orbit = set(system.orbit(base))
    terms: OffsetTerms = {}
    for key, expr in entry["terms"].items():
        match = _KEY_RE.match(key.replace(" ", ""))
        if not match:
            raise ValueError(f"Malformed bi-character key {key!r}")
        c = tuple(int(v) for v in match.group(1).split(","))
        point = tuple(x + y for x, y in zip(base, system.to_weight(c), strict=True))
        if point not in orbit:
            continue
        for e, k in specialize_bicharacter(expr).items():
            terms[(c, e)] = terms.get((c, e), 0) + k
    return GoldenPolynomial(fid, format_terms(terms), base)


# ---- E6 Kostant comparators from exponent rules ----


def derive_ksing(dag_terms: OffsetTerms, rule: dict[str, Any]) -> OffsetTerms:
    """Apply one index's rule: per-monomial overrides, then exponent replacements, then shift."""
    overrides = {tuple(item["c"]): int(item["e"]) for item in rule.get("override", [])}
    replace = {int(k): int(v) for k, v in rule.get("replace", {}).items()}
    shift = int(rule.get("shift", 0))
    out: OffsetTerms = {}
    for (c, e), k in dag_terms.items():
        if c in overrides:
            e = overrides[c]
        elif e in replace:
            e = replace[e]
        else:
            e += shift
        out[(c, e)] = out.get((c, e), 0) + k
    return out


def derived_e6_ksing(index: int, directory: str | Path | None = None) -> OffsetTerms:
    store = _store(directory)
    rules = store.read_toml(E6_RULES_FILE)
    dag = load(f"e6_untwisted_singular_dag_{index}", directory)
    rule = rules.get(str(index), {})
    return derive_ksing(dag.terms, rule)


# ---- ids ----


def polynomial_ids(directory: str | Path | None = None) -> list[FixtureId]:
    out = []
    for name in _store(directory).names():
        if name.endswith(".txt"):
            out.append(FixtureId.parse(name.removesuffix(".txt")))
    return sorted(out)


def bicharacter_ids(directory: str | Path | None = None) -> list[FixtureId]:
    entries = _store(directory).read_toml(BICHARACTER_FILE).get("bicharacter", [])
    return [
        FixtureId("A3", Setting.UNTWISTED, i, Kind.BICHARACTER) for i in range(1, len(entries) + 1)
    ]


def ids_for(which: str, directory: str | Path | None = None) -> list[str]:
    """Fixture ids checked by one verification set."""
    if which not in VERIFY_SETS:
        raise ValueError(f"Unknown verification set {which!r} (expected one of {VERIFY_SETS})")
    out: list[str] = []
    if which in ("f4", "e6", "all"):
        out += [
            fid.name
            for fid in polynomial_ids(directory)
            if which == "all" or fid.label.lower() == which
        ]
    if which in ("g2", "all"):
        out.append(G2_TABLE_ID)
    if which in ("a3", "all"):
        out += [fid.name for fid in bicharacter_ids(directory)]
    return out


# ---- recomputation and diffs ----


def compute(golden: GoldenPolynomial) -> QLaurent:
    """The polynomial a golden entry claims, recomputed from scratch."""
    fid, system = golden.id, golden.system
    if fid.kind is Kind.EDAG_TILDE:
        return e_tilde_poly(system, fid.setting, fid.index)
    if fid.kind is Kind.EDDAG:
        return e_ddag(system, fid.setting, fid.index)
    if fid.kind is Kind.KSING:
        return k_sing(system, fid.setting, fid.index)
    b = golden.base
    return extremal_dag_general(system, fid.setting, b).restrict(system.orbit(b))


def _grouped(terms: OffsetTerms) -> dict[Vector, dict[int, int]]:
    out: dict[Vector, dict[int, int]] = {}
    for (c, e), k in terms.items():
        out.setdefault(c, {})[e] = k
    return out


def _render(c: Vector, exps: dict[int, int]) -> str:
    return " + ".join(format_term(c, e, k) for e, k in sorted(exps.items()))


def diff(computed: QLaurent, golden: GoldenPolynomial) -> list[DiffEntry]:
    """Term-level differences; empty when ``computed`` matches."""
    found = _grouped(to_offset_terms(computed, golden.system, golden.base))
    expected = _grouped(golden.terms)
    report = []
    for c in sorted(set(found) | set(expected)):
        want, got = expected.get(c, {}), found.get(c, {})
        if want == got:
            continue
        key = format_term(c, 0, 1)
        if not got:
            report.append(DiffEntry("missing", key, expected=_render(c, want)))
        elif not want:
            report.append(DiffEntry("extra", key, found=_render(c, got)))
        else:
            report.append(DiffEntry("exponent", key, _render(c, want), _render(c, got)))
    return report


def diff_g2_table(table: GoldenTable) -> list[DiffEntry]:
    system = build_root_system("G2")
    untwisted = KostantSolver(system, Setting.UNTWISTED)
    twisted = KostantSolver(system, Setting.TWISTED)
    omegas = [system.fundamental_weight(i) for i in (1, 2)]
    dags = [dag_table(system, Setting.TWISTED, omega) for omega in omegas]
    report = []
    for row in table.rows:
        w = system.from_word(row.word)
        computed: dict[str, object] = {
            "omega1": difference(system, omegas[0], w),
            "omega2": difference(system, omegas[1], w),
            "a": tuple(n_min(system, Setting.UNTWISTED, o, w, untwisted) for o in omegas),
            "a_nu": tuple(n_min(system, Setting.TWISTED, o, w, twisted) for o in omegas),
            "a_tilde_nu": tuple(t.at(w) for t in dags),
        }
        computed["starred"] = computed["a_tilde_nu"] != computed["a_nu"]
        word = "".join(str(i) for i in row.word) or "id"
        for column, value in computed.items():
            want = getattr(row, column)
            if value != want:
                report.append(DiffEntry("value", f"{word}:{column}", str(want), str(value)))
    return report


def check(fixture_id: str, directory: str | None = None) -> tuple[str, list[DiffEntry]]:
    """Recompute one fixture and diff it. Module-level so worker processes can run it."""
    if fixture_id == G2_TABLE_ID:
        return fixture_id, diff_g2_table(load_g2_table(_store(directory)))
    golden = load(fixture_id, directory)
    report = diff(compute(golden), golden)
    logger.debug("checked %s: %d differences", fixture_id, len(report))
    return fixture_id, report
