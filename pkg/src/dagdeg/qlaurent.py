"""Exact sparse sums Σ k·q^m·X_b over the weight lattice.

Keys are (b, m) with b a weight-coordinate tuple and m an int or Fraction;
zero coefficients are never stored. The text form used for golden data is

    A[c1,…,cn]/q^e    (or "1" for the base point, "k*" prefix for k > 1)

where c is the simple-root expansion of b − base and e = −m.
"""

from __future__ import annotations

import json
import logging
import re
from collections import defaultdict
from collections.abc import Callable, Iterable, Iterator, Mapping
from fractions import Fraction
from typing import TYPE_CHECKING

from .rootsystem import Number, RatVector, RootSystemData, Vector, WeylElement, dot

if TYPE_CHECKING:
    from .affine import AffineElement

logger = logging.getLogger(__name__)

Term = tuple[Vector, Number]
OffsetTerms = dict[tuple[Vector, int], int]


def _exponent(m: Number) -> Number:
    if isinstance(m, Fraction) and m.denominator == 1:
        return int(m)
    return m


def _lattice_point(b: Iterable[Number]) -> Vector:
    out = []
    for v in b:
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise ValueError(f"{tuple(b)} is not a lattice point")
            v = int(v)
        out.append(int(v))
    return tuple(out)


class QLaurent:
    """Immutable value; arithmetic returns new instances."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Term, int] | Iterable[tuple[Term, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        merged: dict[Term, int] = defaultdict(int)
        for (b, m), k in items:
            merged[(_lattice_point(b), _exponent(m))] += k
        self._terms: dict[Term, int] = {key: k for key, k in merged.items() if k}
        self._hash: int | None = None

    # ---- constructors ----

    @classmethod
    def zero(cls) -> QLaurent:
        return cls()

    @classmethod
    def monomial(cls, b: Iterable[Number], m: Number = 0, k: int = 1) -> QLaurent:
        return cls({(tuple(b), m): k})

    @classmethod
    def from_support(cls, points: Iterable[Iterable[Number]]) -> QLaurent:
        """Σ X_b over the given points, each with coefficient 1."""
        return cls(((tuple(b), 0), 1) for b in points)

    # ---- container protocol ----

    def items(self) -> Iterator[tuple[Term, int]]:
        return iter(sorted(self._terms.items(), key=lambda item: (item[0][0], item[0][1])))

    def __iter__(self) -> Iterator[tuple[Term, int]]:
        return self.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        if not self._terms:
            return "QLaurent(0)"
        parts = [f"{k}*q^{m}*X{b}" for (b, m), k in self.items()]
        return "QLaurent(" + " + ".join(parts) + ")"

    def support(self) -> list[Vector]:
        return sorted({b for b, _ in self._terms})

    def coefficient(self, b: Iterable[Number]) -> dict[Number, int]:
        """The Laurent polynomial in q standing in front of X_b, as {exponent: k}."""
        b = tuple(b)
        return {m: k for (c, m), k in self._terms.items() if c == b}

    # ---- linear structure ----

    def __add__(self, other: QLaurent) -> QLaurent:
        if not isinstance(other, QLaurent):
            return NotImplemented
        return QLaurent(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> QLaurent:
        return QLaurent({key: -k for key, k in self._terms.items()})

    def __sub__(self, other: QLaurent) -> QLaurent:
        if not isinstance(other, QLaurent):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: int) -> QLaurent:
        if not isinstance(scalar, int):
            return NotImplemented
        return QLaurent({key: k * scalar for key, k in self._terms.items()})

    __rmul__ = __mul__

    def scale_q(self, m: Number) -> QLaurent:
        """Multiply by q^m."""
        return QLaurent({(b, e + m): k for (b, e), k in self._terms.items()})

    def map_terms(self, fn: Callable[[Vector, Number], Iterable[tuple[Term, int]]]) -> QLaurent:
        """Apply a linear map given on monomials q^m·X_b, then merge."""
        out: list[tuple[Term, int]] = []
        for (b, m), k in self._terms.items():
            out.extend(((c, e), k * j) for (c, e), j in fn(b, m))
        return QLaurent(out)

    # ---- group actions ----

    def apply_finite(self, w: WeylElement) -> QLaurent:
        return QLaurent({(w.act(b), m): k for (b, m), k in self._terms.items()})

    def apply_translation(self, system: RootSystemData, a: RatVector) -> QLaurent:
        """t_a(X_b) = q^{−(b,a)}X_b."""
        functional = system.form_functional(a)
        return QLaurent(
            {(b, m - dot(b, functional)): k for (b, m), k in self._terms.items()}
        )

    def apply_affine(self, element: AffineElement) -> QLaurent:
        """(t_a·w)(X_b) = q^{−(w(b),a)}X_{w(b)}."""
        return self.apply_finite(element.finite).apply_translation(
            element.system, element.translation
        )

    def star(self) -> QLaurent:
        """(q^m X_b)^⋆ = q^{−m} X_{−b}."""
        return QLaurent(
            {(tuple(-v for v in b), -m): k for (b, m), k in self._terms.items()}
        )

    def at_q_equals_one(self) -> dict[Vector, int]:
        out: dict[Vector, int] = defaultdict(int)
        for (b, _), k in self._terms.items():
            out[b] += k
        return {b: k for b, k in out.items() if k}

    def restrict(self, points: Iterable[Iterable[Number]]) -> QLaurent:
        keep = {tuple(b) for b in points}
        return QLaurent({key: k for key, k in self._terms.items() if key[0] in keep})

    # ---- checks ----

    def is_integral(self) -> bool:
        return all(isinstance(m, int) for _, m in self._terms)

    def assert_integral(self) -> QLaurent:
        for (b, m) in self._terms:
            if not isinstance(m, int):
                raise ValueError(f"Non-integral q-exponent {m} at X{b}")
        return self

    def max_degree(self) -> int:
        """max e over terms q^{−e}; 0 for the zero polynomial."""
        self.assert_integral()
        return max((-m for _, m in self._terms), default=0)


def orbit_sum(system: RootSystemData, b: Iterable[Number]) -> QLaurent:
    """M_b = Σ_{c ∈ W(b)} X_c for antidominant b."""
    b = tuple(b)
    if not system.is_antidominant(b):
        raise ValueError(f"Weight {b} is not antidominant")
    return QLaurent.from_support(system.orbit(b))


# ---- A[c]/q^e text format ----

_TERM_RE = re.compile(
    r"^(?:(?P<k>\d+)\s*\*\s*)?"
    r"(?:A\[(?P<c>-?\d+(?:\s*,\s*-?\d+)*)\]|(?P<one>1))"
    r"(?:\s*/\s*q(?:\s*\^\s*(?P<e>-?\d+))?)?$"
)


def to_offset_terms(poly: QLaurent, system: RootSystemData, base: Iterable[Number]) -> OffsetTerms:
    base = tuple(base)
    out: OffsetTerms = {}
    for (b, m), k in poly.items():
        if not isinstance(m, int):
            raise ValueError(f"Non-integral q-exponent {m} at X{b}")
        diff = tuple(x - y for x, y in zip(b, base, strict=True))
        out[(system.to_root_lattice(diff), -m)] = k
    return out


def from_offset_terms(
    terms: Mapping[tuple[Vector, int], int], system: RootSystemData, base: Iterable[Number]
) -> QLaurent:
    base = tuple(base)
    out = []
    for (c, e), k in terms.items():
        if len(c) != system.rank:
            raise ValueError(f"A{list(c)} has the wrong rank for {system.label}")
        b = tuple(x + y for x, y in zip(base, system.to_weight(c), strict=True))
        out.append(((b, -e), k))
    return QLaurent(out)


def format_term(c: Vector, e: int, k: int) -> str:
    head = "1" if not any(c) else "A[" + ",".join(str(v) for v in c) + "]"
    if e == 1:
        head += "/q"
    elif e:
        head += f"/q^{e}"
    return head if k == 1 else f"{k}*{head}"


def format_terms(terms: Mapping[tuple[Vector, int], int]) -> str:
    if not terms:
        return ""
    ordered = sorted(terms.items(), key=lambda item: (sum(item[0][0]), item[0]))
    lines = [format_term(c, e, k) for (c, e), k in ordered]
    return "\n+ ".join(lines)


def parse_terms(text: str, rank: int | None = None) -> OffsetTerms:
    """Parse "A[..]/q^e + …"; "0" or blank text is the empty sum."""
    body = " ".join(text.split())
    if body in ("", "0"):
        return {}
    out: OffsetTerms = defaultdict(int)
    for raw in body.split("+"):
        chunk = raw.strip()
        match = _TERM_RE.match(chunk)
        if not match:
            raise ValueError(f"Malformed term: {chunk!r}")
        k = int(match.group("k") or 1)
        if k < 1:
            raise ValueError(f"Coefficient must be positive in {chunk!r}")
        e_text = match.group("e")
        e = int(e_text) if e_text is not None else (1 if "/" in chunk else 0)
        if match.group("one"):
            if rank is None:
                raise ValueError("A constant term needs the rank to be known")
            c: Vector = (0,) * rank
        else:
            c = tuple(int(v) for v in match.group("c").split(","))
            if rank is not None and len(c) != rank:
                raise ValueError(f"Term {chunk!r} does not have {rank} coordinates")
        out[(c, e)] += k
    return dict(out)


def format_poly(poly: QLaurent, system: RootSystemData, base: Iterable[Number]) -> str:
    return format_terms(to_offset_terms(poly, system, base))


def parse_poly(text: str, system: RootSystemData, base: Iterable[Number]) -> QLaurent:
    return from_offset_terms(parse_terms(text, system.rank), system, base)


def to_json(poly: QLaurent, system: RootSystemData, base: Iterable[Number]) -> str:
    terms = to_offset_terms(poly, system, base)
    payload = {
        "terms": [{"c": list(c), "e": e, "k": k} for (c, e), k in sorted(terms.items())]
    }
    return json.dumps(payload)


def from_json(text: str, system: RootSystemData, base: Iterable[Number]) -> QLaurent:
    try:
        payload = json.loads(text)
        terms = {(tuple(t["c"]), int(t["e"])): int(t["k"]) for t in payload["terms"]}
    except (ValueError, KeyError, TypeError) as exc:
        raise ValueError(f"Invalid polynomial JSON: {exc}") from None
    return from_offset_terms(terms, system, base)
