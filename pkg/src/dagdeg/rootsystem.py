"""Root systems and finite Weyl groups.

Weights are tuples in fundamental-weight coordinates (ints, or Fractions for
coweights); roots are also kept in simple-root coordinates. The invariant form
is normalized so that short roots have (α,α)=2. Nodes are numbered 1..n as in
Bourbaki; tuples are 0-based.
"""

from __future__ import annotations

import logging
import re
from collections import deque
from collections.abc import Iterable, Sequence
from fractions import Fraction
from functools import cache, cached_property

import numpy as np
import sympy

logger = logging.getLogger(__name__)

Number = int | Fraction
Vector = tuple[int, ...]
RatVector = tuple[Number, ...]
Word = tuple[int, ...]

CLASSICAL = frozenset("ABCD")

_LABEL_RE = re.compile(r"^\s*([A-Ga-g])\s*_?\s*(\d+)\s*$")

_RANK_OK = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


def parse_type_label(label: str) -> tuple[str, int]:
    """Split "F4" / "b_3" into ("F", 4), validating the rank."""
    match = _LABEL_RE.match(label)
    if not match:
        raise ValueError(f"Unrecognised root system label: {label!r}")
    series, rank = match.group(1).upper(), int(match.group(2))
    if not _RANK_OK[series](rank):
        raise ValueError(f"Unsupported root system: {series}{rank}")
    return series, rank


def dynkin_data(series: str, rank: int) -> tuple[list[int], list[tuple[int, int]]]:
    """Squared lengths of the simple roots and Dynkin edges (0-based, Bourbaki order)."""
    chain = [(i, i + 1) for i in range(rank - 1)]
    if series == "A":
        return [2] * rank, chain
    if series == "B":
        return [4] * (rank - 1) + [2], chain
    if series == "C":
        return [2] * (rank - 1) + [4], chain
    if series == "D":
        return [2] * rank, chain[:-1] + [(rank - 3, rank - 1)]
    if series == "E":
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, rank - 1)]
        return [2] * rank, edges
    if series == "F":
        return [4, 4, 2, 2], chain
    if series == "G":
        return [2, 6], chain
    raise ValueError(f"Unsupported root system series: {series}")


def _gram_matrix(norms: Sequence[int], edges: Iterable[tuple[int, int]]) -> np.ndarray:
    gram = np.diag(np.array(norms, dtype=np.int64))
    for i, j in edges:
        gram[i, j] = gram[j, i] = -max(norms[i], norms[j]) // 2
    return gram


def _positive_roots(cartan: np.ndarray) -> list[Vector]:
    """Positive roots in simple-root coordinates, by height (root-string algorithm)."""
    rank = cartan.shape[0]
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    found = set(simple)
    ordered = list(simple)
    layer = list(simple)
    while layer:
        upper: set[Vector] = set()
        for beta in layer:
            weight = np.asarray(beta, dtype=np.int64) @ cartan
            for i in range(rank):
                down = list(beta)
                p = 0
                while True:
                    down[i] -= 1
                    if tuple(down) not in found:
                        break
                    p += 1
                if p - int(weight[i]) > 0:
                    up = tuple(c + (k == i) for k, c in enumerate(beta))
                    if up not in found:
                        upper.add(up)
        layer = sorted(upper)
        found.update(layer)
        ordered.extend(layer)
    return ordered


def _reduce_to_dominant(x: Sequence[Number], system: RootSystemData) -> tuple[RatVector, Word]:
    """Reflect at the first negative coordinate until dominant; return the letters used."""
    vec = tuple(x)
    letters: list[int] = []
    while True:
        i = next((k for k, v in enumerate(vec) if v < 0), None)
        if i is None:
            return vec, tuple(letters)
        letters.append(i + 1)
        vec = system.simple_reflect(vec, i + 1)


class RootSystemData:
    """Immutable tables for one reduced irreducible root system."""

    def __init__(self, series: str, rank: int):
        self.series = series
        self.rank = rank
        self.label = f"{series}{rank}"
        norms, edges = dynkin_data(series, rank)
        self.norms: tuple[int, ...] = tuple(norms)
        self.nu_simple: tuple[int, ...] = tuple(n // 2 for n in norms)

        gram = _gram_matrix(norms, edges)
        cartan = (2 * gram) // np.array(norms, dtype=np.int64)[None, :]
        cartan.setflags(write=False)
        self.sym_form: tuple[Vector, ...] = tuple(tuple(int(v) for v in row) for row in gram)
        self.cartan_matrix = cartan
        self.cartan: tuple[Vector, ...] = tuple(tuple(int(v) for v in row) for row in cartan)

        inverse = sympy.Matrix(self.cartan).inv()
        self.cartan_inv: tuple[tuple[Fraction, ...], ...] = tuple(
            tuple(Fraction(int(inverse[i, j].p), int(inverse[i, j].q)) for j in range(rank))
            for i in range(rank)
        )

        self.positive_roots: tuple[Vector, ...] = tuple(_positive_roots(cartan))
        self.positive_roots_weight: tuple[Vector, ...] = tuple(
            self.to_weight(c) for c in self.positive_roots
        )
        self._root_coords: dict[Vector, Vector] = {}
        for c, w in zip(self.positive_roots, self.positive_roots_weight, strict=True):
            self._root_coords[w] = c
            self._root_coords[tuple(-v for v in w)] = tuple(-v for v in c)
        self._positive_set = frozenset(self.positive_roots_weight)

        self.rho: Vector = (1,) * rank
        self.rho_check: RatVector = tuple(Fraction(1, nu) for nu in self.nu_simple)

        self.theta: Vector = self.positive_roots[-1]
        short = [c for c in self.positive_roots if self.root_nu(self.to_weight(c)) == 1]
        self.theta_short: Vector = max(short, key=lambda c: (sum(c), c))
        self.orbit_o_untwisted: tuple[int, ...] = (0,) + tuple(
            r + 1 for r in range(rank) if self.theta[r] == 1
        )
        self.orbit_o_twisted: tuple[int, ...] = (0,) + tuple(
            r + 1 for r in range(rank) if self.theta_short[r] * self.nu_simple[r] == 1
        )
        logger.debug("built %s: %d positive roots", self.label, len(self.positive_roots))

    def __repr__(self) -> str:
        return f"RootSystemData({self.label})"

    def __reduce__(self):
        return (build_root_system, (self.label,))

    # ---- coordinates and the form ----

    def to_weight(self, c: Sequence[Number]) -> RatVector:
        """Simple-root coordinates -> weight coordinates."""
        return tuple(
            sum((c[i] * self.cartan[i][j] for i in range(self.rank)), start=0)
            for j in range(self.rank)
        )

    def to_roots(self, x: Sequence[Number]) -> RatVector:
        """Weight coordinates -> (rational) simple-root coordinates."""
        out = []
        for j in range(self.rank):
            value = sum(
                (x[i] * self.cartan_inv[i][j] for i in range(self.rank)), start=Fraction(0)
            )
            out.append(int(value) if value.denominator == 1 else value)
        return tuple(out)

    def to_root_lattice(self, x: Sequence[Number]) -> Vector:
        """Integral simple-root coordinates of x, which must lie in Q."""
        coords = self.to_roots(x)
        if any(isinstance(v, Fraction) for v in coords):
            raise ValueError(f"{tuple(x)} is not in the root lattice of {self.label}")
        return tuple(int(v) for v in coords)

    def form(self, x: Sequence[Number], y: Sequence[Number]) -> Number:
        """The invariant form (x, y) of two weights."""
        total = sum(
            (x[k] * self.nu_simple[k] * c for k, c in enumerate(self.to_roots(y))),
            start=Fraction(0),
        )
        return int(total) if total.denominator == 1 else total

    def form_functional(self, a: Sequence[Number]) -> RatVector:
        """f with (x, a) = dot(x, f) for every weight x."""
        return tuple(nu * c for nu, c in zip(self.nu_simple, self.to_roots(a), strict=True))

    def pairing(self, z: Sequence[Number], alpha: Sequence[Number]) -> Number:
        """(z, α^∨) for a root α given in weight coordinates."""
        functional = self._coroot_functionals.get(tuple(alpha))
        if functional is None:
            value = Fraction(2) * self.form(z, alpha) / self.form(alpha, alpha)
            return int(value) if value.denominator == 1 else value
        return sum((v * f for v, f in zip(z, functional, strict=True) if v), start=0)

    @cached_property
    def _coroot_functionals(self) -> dict[Vector, Vector]:
        # (x, α^∨) = Σ x_k c_k ν_k / ν_α with c the root coordinates of α
        table: dict[Vector, Vector] = {}
        for w, c in self._root_coords.items():
            nu = self.root_nu(w)
            table[w] = tuple(c_k * nu_k // nu for c_k, nu_k in zip(c, self.nu_simple, strict=True))
        return table

    def coroot(self, alpha: Sequence[Number]) -> RatVector:
        """α^∨ = α/ν_α, in weight coordinates."""
        nu = self.root_nu(alpha)
        return tuple(v if nu == 1 else Fraction(v, nu) for v in alpha)

    def root_nu(self, alpha: Sequence[Number]) -> int:
        return int(self.form(alpha, alpha)) // 2

    def root_coords(self, alpha: Sequence[Number]) -> Vector:
        """Simple-root coordinates of a root given in weight coordinates."""
        try:
            return self._root_coords[tuple(alpha)]
        except KeyError:
            raise ValueError(f"{tuple(alpha)} is not a root of {self.label}") from None

    def is_root(self, alpha: Sequence[Number]) -> bool:
        return tuple(alpha) in self._root_coords

    def is_positive_root(self, alpha: Sequence[Number]) -> bool:
        return tuple(alpha) in self._positive_set

    def simple_root(self, i: int) -> Vector:
        return self.cartan[i - 1]

    def fundamental_weight(self, i: int) -> Vector:
        if not 1 <= i <= self.rank:
            raise ValueError(f"Node {i} out of range for {self.label}")
        return tuple(int(k == i - 1) for k in range(self.rank))

    def fundamental_coweight(self, i: int) -> RatVector:
        nu = self.nu_simple[i - 1]
        return tuple(Fraction(v, nu) if nu > 1 else v for v in self.fundamental_weight(i))

    @cached_property
    def theta_weight(self) -> Vector:
        return tuple(int(v) for v in self.to_weight(self.theta))

    @cached_property
    def theta_short_weight(self) -> Vector:
        return tuple(int(v) for v in self.to_weight(self.theta_short))

    @cached_property
    def roots_weight(self) -> tuple[Vector, ...]:
        """All roots (positive first, then their negatives) in weight coordinates."""
        negatives = tuple(tuple(-v for v in w) for w in self.positive_roots_weight)
        return self.positive_roots_weight + negatives

    # ---- reflections, orbits ----

    def simple_reflect(self, x: Sequence[Number], i: int) -> RatVector:
        xi = x[i - 1]
        if not xi:
            return tuple(x)
        row = self.cartan[i - 1]
        return tuple(v - xi * r for v, r in zip(x, row, strict=True))

    def reflect(self, x: Sequence[Number], alpha: Sequence[Number]) -> RatVector:
        """s_α(x) = x − (x,α^∨)α."""
        k = self.pairing(x, alpha)
        return tuple(v - k * a for v, a in zip(x, alpha, strict=True))

    @staticmethod
    def is_dominant(x: Sequence[Number]) -> bool:
        return all(v >= 0 for v in x)

    @staticmethod
    def is_antidominant(x: Sequence[Number]) -> bool:
        return all(v <= 0 for v in x)

    def dominant(self, x: Sequence[Number]) -> RatVector:
        return _reduce_to_dominant(x, self)[0]

    def antidominant(self, x: Sequence[Number]) -> RatVector:
        return tuple(-v for v in self.dominant(tuple(-v for v in x)))

    def orbit(self, x: Sequence[Number]) -> list[RatVector]:
        """W-orbit of x, dominant representative first, breadth-first."""
        start = self.dominant(x)
        seen = {start}
        out = [start]
        queue = deque([start])
        while queue:
            y = queue.popleft()
            for i in range(1, self.rank + 1):
                if y[i - 1] > 0:
                    z = self.simple_reflect(y, i)
                    if z not in seen:
                        seen.add(z)
                        out.append(z)
                        queue.append(z)
        logger.debug("orbit of %s in %s: %d points", tuple(x), self.label, len(out))
        return out

    def iota(self, i: int) -> int:
        """The diagram involution −w₀ on nodes, with 0 fixed."""
        if i == 0:
            return 0
        image = self.iota_weight(self.fundamental_weight(i))
        return image.index(1) + 1

    def iota_weight(self, x: Sequence[Number]) -> RatVector:
        return tuple(-v for v in self.longest_element().act(x))

    # ---- Weyl group ----

    def identity(self) -> WeylElement:
        return WeylElement(self, self.rho)

    def longest_element(self) -> WeylElement:
        return self._longest

    @cached_property
    def _longest(self) -> WeylElement:
        return WeylElement(self, tuple(-v for v in self.rho))

    def from_word(self, word: Iterable[int]) -> WeylElement:
        return WeylElement.from_word(self, word)

    def simple_reflection(self, i: int) -> WeylElement:
        return WeylElement.from_word(self, (i,))

    def elements(self) -> list[WeylElement]:
        """All of W, by increasing length."""
        return list(self._elements)

    @cached_property
    def _elements(self) -> tuple[WeylElement, ...]:
        start = self.rho
        seen = {start}
        layer = [start]
        out: list[WeylElement] = []
        while layer:
            out.extend(WeylElement(self, key) for key in layer)
            upper = []
            for key in layer:
                for i in range(1, self.rank + 1):
                    if key[i - 1] > 0:
                        nxt = self.simple_reflect(key, i)
                        if nxt not in seen:
                            seen.add(nxt)
                            upper.append(nxt)
            layer = upper
        logger.debug("enumerated W(%s): %d elements", self.label, len(out))
        return tuple(out)

    def min_coset_rep(self, a: Sequence[Number]) -> WeylElement:
        """Minimal-length u with u(a₊) = a."""
        _, letters = _reduce_to_dominant(a, self)
        return WeylElement.from_word(self, letters)

    def coset_reps(self, weight: int | Sequence[Number]) -> list[WeylElement]:
        """Minimal representatives of W/W^λ, in orbit order (λ a node index or a weight)."""
        lam = self.fundamental_weight(weight) if isinstance(weight, int) else tuple(weight)
        return [self.min_coset_rep(a) for a in self.orbit(lam)]

    def minimal_antidominant(self, b: Sequence[Number]) -> WeylElement:
        """u_b: the minimal-length element with u_b(b) antidominant."""
        vec = tuple(b)
        letters: list[int] = []
        while True:
            i = next((k for k, v in enumerate(vec) if v > 0), None)
            if i is None:
                return WeylElement.from_word(self, reversed(letters))
            letters.append(i + 1)
            vec = self.simple_reflect(vec, i + 1)


@cache
def build_root_system(label: str) -> RootSystemData:
    """Construct (and memoize) the root system named by a label such as "F4"."""
    series, rank = parse_type_label(label)
    return RootSystemData(series, rank)


class WeylElement:
    """A finite Weyl group element, canonically keyed by its image w(ρ)."""

    __slots__ = ("system", "key", "_word", "_images")

    def __init__(self, system: RootSystemData, key: Sequence[Number]):
        self.system = system
        self.key: RatVector = tuple(key)
        self._word: Word | None = None
        self._images: tuple[RatVector, ...] | None = None

    @classmethod
    def from_word(cls, system: RootSystemData, word: Iterable[int]) -> WeylElement:
        """Compose s_{i_1}⋯s_{i_k}; the word need not be reduced."""
        key: RatVector = system.rho
        for i in reversed(tuple(word)):
            if not 1 <= i <= system.rank:
                raise ValueError(f"Letter {i} out of range for {system.label}")
            key = system.simple_reflect(key, i)
        return cls(system, key)

    @classmethod
    def from_one_line(cls, system: RootSystemData, perm: Sequence[int]) -> WeylElement:
        """Build from one-line notation: w(e_j) = sign(w_j)·e_{|w_j|}."""
        perm = tuple(int(v) for v in perm)
        size = _one_line_size(system)
        if len(perm) != size or sorted(abs(v) for v in perm) != list(range(1, size + 1)):
            raise ValueError(f"Not a signed permutation of 1..{size}: {perm}")
        negatives = sum(v < 0 for v in perm)
        if system.series == "A" and negatives:
            raise ValueError("Type A one-line forms carry no signs")
        if system.series == "D" and negatives % 2:
            raise ValueError("Type D one-line forms need an even number of signs")
        eps = _weight_to_eps(system, system.rho)
        image = [Fraction(0)] * size
        for j, target in enumerate(perm):
            image[abs(target) - 1] = eps[j] if target > 0 else -eps[j]
        key = _eps_to_weight(system, image)
        return cls(system, tuple(int(v) for v in key))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.system.label == other.system.label and self.key == other.key

    def __hash__(self) -> int:
        return hash((self.system.label, self.key))

    def __repr__(self) -> str:
        word = "".join(str(i) for i in self.word) if self.system.rank < 10 else self.word
        return f"WeylElement({self.system.label}, {word or 'id'})"

    def __mul__(self, other: WeylElement) -> WeylElement:
        _same_system(self.system, other.system)
        return WeylElement(self.system, self.act(other.key))

    @property
    def word(self) -> Word:
        """Reduced word (i_1, …, i_k) with w = s_{i_1}⋯s_{i_k}."""
        if self._word is None:
            self._word = _reduce_to_dominant(self.key, self.system)[1]
        return self._word

    def reduced_word(self) -> Word:
        return self.word

    @property
    def length(self) -> int:
        return len(self.word)

    def inverse(self) -> WeylElement:
        return WeylElement.from_word(self.system, reversed(self.word))

    def is_identity(self) -> bool:
        return self.key == self.system.rho

    def _fundamental_images(self) -> tuple[RatVector, ...]:
        if self._images is None:
            images = []
            for j in range(1, self.system.rank + 1):
                vec: RatVector = self.system.fundamental_weight(j)
                for i in reversed(self.word):
                    vec = self.system.simple_reflect(vec, i)
                images.append(vec)
            self._images = tuple(images)
        return self._images

    def act(self, x: Sequence[Number]) -> RatVector:
        """w(x) for x in weight coordinates."""
        images = self._fundamental_images()
        n = self.system.rank
        return tuple(
            sum((x[j] * images[j][k] for j in range(n) if x[j]), start=0) for k in range(n)
        )

    def is_left_descent(self, i: int) -> bool:
        return self.key[i - 1] < 0

    def is_right_descent(self, i: int) -> bool:
        return not self.system.is_positive_root(self.act(self.system.simple_root(i)))

    def left_descents(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, v in enumerate(self.key) if v < 0)

    def lambda_set(self) -> list[Vector]:
        """{α>0 : w(α)<0}, in weight coordinates."""
        system = self.system
        return [
            a for a in system.positive_roots_weight if not system.is_positive_root(self.act(a))
        ]

    def one_line(self) -> tuple[int, ...]:
        """Signed-permutation form for classical types."""
        system = self.system
        if system.series not in CLASSICAL:
            raise ValueError(f"No one-line form for type {system.series}")
        size = _one_line_size(system)
        return tuple(_signed_image(system, j, self.word) for j in range(1, size + 1))


def _same_system(a: RootSystemData, b: RootSystemData) -> None:
    if a.label != b.label:
        raise ValueError(f"Root system mismatch: {a.label} vs {b.label}")


def _one_line_size(system: RootSystemData) -> int:
    if system.series not in CLASSICAL:
        raise ValueError(f"No one-line form for type {system.series}")
    return system.rank + 1 if system.series == "A" else system.rank


def _signed_image(system: RootSystemData, j: int, word: Word) -> int:
    """Signed index of w(e_j), applying the letters innermost first."""
    n, series = system.rank, system.series
    t = j
    for i in reversed(word):
        sign, a = (1 if t > 0 else -1), abs(t)
        if series == "A" or i < n:
            if a == i:
                t = sign * (i + 1)
            elif a == i + 1:
                t = sign * i
        elif series in "BC":
            if a == n:
                t = -t
        else:
            if a == n - 1:
                t = -sign * n
            elif a == n:
                t = -sign * (n - 1)
    return t


def _weight_to_eps(system: RootSystemData, x: Sequence[Number]) -> list[Fraction]:
    """Coordinates in the standard e_j realization of a classical system."""
    n, series = system.rank, system.series
    if series == "A":
        v = [Fraction(0)] * (n + 1)
        for k in range(n - 1, -1, -1):
            v[k] = v[k + 1] + x[k]
        return v
    v = [Fraction(0)] * n
    if series == "B":
        v[n - 1] = Fraction(x[n - 1]) / 2
        start = n - 2
    elif series == "C":
        v[n - 1] = Fraction(x[n - 1])
        start = n - 2
    else:
        v[n - 1] = Fraction(x[n - 1] - x[n - 2]) / 2
        v[n - 2] = Fraction(x[n - 1] + x[n - 2]) / 2
        start = n - 3
    for k in range(start, -1, -1):
        v[k] = v[k + 1] + x[k]
    return v


def _eps_to_weight(system: RootSystemData, v: Sequence[Fraction]) -> list[Fraction]:
    n, series = system.rank, system.series
    out = [v[k] - v[k + 1] for k in range(n - 1)]
    if series == "A":
        out.append(v[n - 1] - v[n])
    elif series == "B":
        out.append(2 * v[n - 1])
    elif series == "C":
        out.append(v[n - 1])
    else:
        out.append(v[n - 2] + v[n - 1])
    return out


def bruhat_leq(u: WeylElement, v: WeylElement) -> bool:
    """u ≤ v in the Bruhat order (descent recursion on v)."""
    _same_system(u.system, v.system)
    while True:
        if u.length > v.length:
            return False
        if v.is_identity():
            return u.is_identity()
        i = v.left_descents()[0]
        s = u.system.simple_reflection(i)
        v = s * v
        if u.is_left_descent(i):
            u = s * u


def dot(x: Sequence[Number], f: Sequence[Number]) -> Number:
    value = sum((a * b for a, b in zip(x, f, strict=True) if a), start=0)
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value
