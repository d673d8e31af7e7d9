"""Nil-DAHA operator pipelines producing extremal dag- and bar-polynomials.

All operators are given on monomials q^m·X_b and extended linearly. Each has
the same two-branch shape along an affine root [α, j]: one sign of (b, α)
produces the reflected monomial plus X_b, zero leaves X_b alone and the
other sign kills the term.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from itertools import combinations

from .affine import (
    AffineElement,
    AffineRoot,
    ReducedDecomposition,
    Setting,
    alpha_sequence,
    pi_c,
    pi_index,
    pi_rho_word,
    rho_check_eps,
    simple_affine_root,
)
from .qlaurent import QLaurent, Term, orbit_sum
from .rootsystem import (
    Number,
    RootSystemData,
    Vector,
    WeylElement,
    bruhat_leq,
    build_root_system,
)

logger = logging.getLogger(__name__)


# ---- degree tables ----


@dataclass(frozen=True)
class DegreeTable:
    """Degrees indexed by the minimal representatives u of the cosets wW^λ."""

    system: RootSystemData
    setting: Setting
    weight: Vector
    entries: Mapping[WeylElement, int] = field(default_factory=dict)

    def at(self, w: WeylElement) -> int:
        return self.entries[self.system.min_coset_rep(w.act(self.weight))]

    def items(self) -> Iterator[tuple[WeylElement, int]]:
        return iter(self.entries.items())

    def __len__(self) -> int:
        return len(self.entries)

    def maximum(self) -> int:
        return max(self.entries.values(), default=0)


@dataclass(frozen=True)
class DagResult:
    poly: QLaurent
    degrees: dict[Vector, int]
    setting: Setting
    base: Vector

    def table(self, system: RootSystemData) -> DegreeTable:
        """e(−b, w) = e_{w(b)}, keyed by the coset of w in W/W^{−b}."""
        lam = tuple(-v for v in self.base)
        entries = {
            u: self.degrees[tuple(-v for v in u.act(lam))] for u in system.coset_reps(lam)
        }
        return DegreeTable(system, self.setting, lam, entries)


# ---- monomial operators ----


def _two_branch(
    system: RootSystemData, root: AffineRoot, poly: QLaurent, *, grow: int, q_sign: int
) -> QLaurent:
    alpha, level = root.finite, root.level

    def step(b: Vector, m: Number) -> list[tuple[Term, int]]:
        k = system.pairing(b, alpha)
        if k == 0:
            return [((b, m), 1)]
        if (k > 0) != (grow > 0):
            return []
        reflected = system.reflect(b, alpha)
        return [((reflected, m + q_sign * level * k), 1), ((b, m), 1)]

    return poly.map_terms(step)


def t_nat(system: RootSystemData, setting: Setting, i: int, poly: QLaurent) -> QLaurent:
    """𝕋♮_i: s_i(X_b) + X_b when (b, α_i) < 0 (α₀ taken per setting)."""
    return t_sharp(system, simple_affine_root(system, setting, i), poly)


def t_sharp(system: RootSystemData, root: AffineRoot, poly: QLaurent) -> QLaurent:
    """𝕋♯_{[α,j]}: q^{−j(b,α^∨)}X_{s_α(b)} + X_b when (b, α) < 0."""
    return _two_branch(system, root, poly, grow=-1, q_sign=-1)


def g_prime(system: RootSystemData, root: AffineRoot, poly: QLaurent) -> QLaurent:
    """𝔾′_{[α,j]}: q^{j(b,α^∨)}X_{s_α(b)} + X_b when (b, α) > 0."""
    return _two_branch(system, root, poly, grow=1, q_sign=1)


def t_bar_prime(system: RootSystemData, setting: Setting, i: int, poly: QLaurent) -> QLaurent:
    """T̄′_i: s_i(X_b) + X_b when (b, α_i) > 0."""
    root = simple_affine_root(system, setting, i)
    return _two_branch(system, root, poly, grow=1, q_sign=-1)


def t_bar(system: RootSystemData, setting: Setting, i: int, poly: QLaurent) -> QLaurent:
    """T̄_i = T̄′_i − 1."""
    return t_bar_prime(system, setting, i, poly) - poly


def _apply_finite_word(
    system: RootSystemData, word: Iterable[int], poly: QLaurent, *, primed: bool
) -> QLaurent:
    # T_w = T_{i_1}⋯T_{i_k} for w = s_{i_1}⋯s_{i_k}: the last letter acts first
    op = t_bar_prime if primed else t_bar
    for i in reversed(tuple(word)):
        poly = op(system, Setting.UNTWISTED, i, poly)
    return poly


def frak_t(
    system: RootSystemData,
    setting: Setting,
    poly: QLaurent,
    decomposition: ReducedDecomposition | None = None,
) -> QLaurent:
    """𝔗 = π_r·𝕋♮_{i_l}⋯𝕋♮_{i_1} along a reduced word of π_ρ."""
    if decomposition is None:
        decomposition = pi_rho_word(system, setting)
    for i in decomposition.letters:
        poly = t_nat(system, setting, i, poly)
    return poly.apply_affine(decomposition.pi)


# ---- extremal dag-polynomials ----


def _require_antidominant(system: RootSystemData, b: Iterable[Number]) -> Vector:
    b = tuple(b)
    if len(b) != system.rank:
        raise ValueError(f"Weight {b} does not have rank {system.rank}")
    if not system.is_antidominant(b):
        raise ValueError(f"Weight {b} is not antidominant")
    return b


def _rho_shift(system: RootSystemData, setting: Setting, b: Iterable[Number]) -> Number:
    return system.form(rho_check_eps(system, setting), tuple(b))


def is_pure(poly: QLaurent) -> bool:
    """Every point carries a single q^{−e} with e ≥ 0 and coefficient 1."""
    seen: set[Vector] = set()
    for (b, m), k in poly.items():
        if k != 1 or not isinstance(m, int) or m > 0 or b in seen:
            return False
        seen.add(b)
    return True


def _finish(
    system: RootSystemData, setting: Setting, b: Vector, poly: QLaurent
) -> DagResult:
    poly.assert_integral()
    if not is_pure(poly):
        raise RuntimeError(f"Impure extremal dag-polynomial for b={b} in {system.label}")
    degrees = {c: -m for (c, m), _ in poly.items()}
    if set(degrees) != set(system.orbit(b)):
        raise RuntimeError(f"Support of the dag-polynomial for b={b} is not W(b)")
    monic = [c for c, e in degrees.items() if e == 0]
    if monic != [b]:
        raise RuntimeError(f"Monic monomials {monic} for b={b}; expected only X_b")
    return DagResult(poly=poly, degrees=degrees, setting=setting, base=b)


def extremal_dag(
    system: RootSystemData,
    setting: Setting,
    b: Iterable[Number],
    decomposition: ReducedDecomposition | None = None,
) -> DagResult:
    """𝔼†_b = q^{(ρ̌^ε, b)}·𝔗(M_b) for antidominant b."""
    b = _require_antidominant(system, b)
    poly = frak_t(system, setting, orbit_sum(system, b), decomposition)
    poly = poly.scale_q(_rho_shift(system, setting, b))
    result = _finish(system, setting, b, poly)
    logger.debug(
        "extremal dag %s %s b=%s: %d terms, max degree %d",
        system.label, setting, b, len(poly), poly.max_degree(),
    )
    return result


def extremal_dag_via_g(
    system: RootSystemData, setting: Setting, b: Iterable[Number]
) -> DagResult:
    """The same polynomial through 𝔾′_{α^l}⋯𝔾′_{α^1} and translation by ρ̌^ε."""
    b = _require_antidominant(system, b)
    poly = orbit_sum(system, b)
    for root in alpha_sequence(pi_rho_word(system, setting)):
        poly = g_prime(system, root, poly)
    poly = poly.apply_translation(system, rho_check_eps(system, setting))
    poly = poly.scale_q(_rho_shift(system, setting, b))
    return _finish(system, setting, b, poly)


def dag_table(system: RootSystemData, setting: Setting, lam: Iterable[Number]) -> DegreeTable:
    """e(λ, w) over W/W^λ for dominant λ."""
    lam = tuple(lam)
    if not system.is_dominant(lam):
        raise ValueError(f"Weight {lam} is not dominant")
    return extremal_dag(system, setting, tuple(-v for v in lam)).table(system)


def block_decomposition(
    system: RootSystemData, setting: Setting, b: Iterable[Number]
) -> dict[WeylElement, QLaurent]:
    """block(u) = 𝔗(X_{u(d)}) over W/W^d with d the dominant point of W(b).

    q^{(ρ̌^ε,b)}·Σ_u block(u) is 𝔼†_b.
    """
    b = _require_antidominant(system, b)
    top = system.dominant(b)
    decomposition = pi_rho_word(system, setting)
    return {
        u: frak_t(system, setting, QLaurent.monomial(u.act(top)), decomposition)
        for u in system.coset_reps(top)
    }


def is_commuting_product(system: RootSystemData, u: WeylElement) -> bool:
    """u is the identity or a product of pairwise commuting simple reflections."""
    letters = u.word
    if len(set(letters)) != len(letters):
        return False
    return all(system.cartan[i - 1][j - 1] == 0 for i, j in combinations(letters, 2))


def embedding_sides(
    system: RootSystemData, setting: Setting, b_minus: Iterable[Number], i: int
) -> tuple[QLaurent, QLaurent]:
    """(q^{(ρ̌^ε,b₋)}·block(s_i), q^{(b₋,α̌_i^ε)}·𝔼†_{s_i(b₋)}), which agree."""
    b_minus = _require_antidominant(system, b_minus)
    if b_minus[i - 1] == 0:
        raise ValueError(f"(b₋, α_{i}) vanishes for b₋={b_minus}")
    s_i = system.simple_reflection(i)
    top = system.dominant(b_minus)
    lhs = frak_t(system, setting, QLaurent.monomial(s_i.act(top)))
    lhs = lhs.scale_q(_rho_shift(system, setting, b_minus))
    simple = system.simple_root(i)
    if setting is Setting.TWISTED:
        shift = system.form(b_minus, simple)
    else:
        shift = system.pairing(b_minus, simple)
    rhs = extremal_dag_general(system, setting, s_i.act(b_minus)).scale_q(shift)
    return lhs, rhs


# ---- bar-polynomials ----


def extremal_bar(system: RootSystemData, b: Iterable[Number]) -> QLaurent:
    """T̄′_{u_b^{-1}w₀}(X_{b₊}) = Σ_{a ⪰ b} X_a."""
    b = tuple(b)
    u_b = system.minimal_antidominant(b)
    w = u_b.inverse() * system.longest_element()
    return _apply_finite_word(system, w.word, QLaurent.monomial(system.dominant(b)), primed=True)


def bar_support(system: RootSystemData, b: Iterable[Number]) -> list[Vector]:
    """{a ∈ W(b) : u_a ≥ u_b}, by the Bruhat order."""
    u_b = system.minimal_antidominant(tuple(b))
    return sorted(
        a for a in system.orbit(b) if bruhat_leq(u_b, system.minimal_antidominant(a))
    )


def _check_length_additive(u: WeylElement, v: WeylElement) -> None:
    if (u * v).length != u.length + v.length:
        raise ValueError(f"l({u!r}·{v!r}) is not l(u) + l(v)")


def mixed_bar(
    system: RootSystemData, u: WeylElement, v: WeylElement, b: Iterable[Number]
) -> QLaurent:
    """T̄_u T̄′_v (X_b) for dominant b and l(uv) = l(u) + l(v)."""
    b = tuple(b)
    if not system.is_dominant(b):
        raise ValueError(f"Weight {b} is not dominant")
    _check_length_additive(u, v)
    poly = _apply_finite_word(system, v.word, QLaurent.monomial(b), primed=True)
    return _apply_finite_word(system, u.word, poly, primed=False)


def mixed_bar_by_subwords(
    system: RootSystemData, u: WeylElement, v: WeylElement, b: Iterable[Number]
) -> QLaurent:
    """Σ X_{uv′(b)} over v′ ≤ v with l(uv′) = l(u) + l(v′)."""
    _check_length_additive(u, v)
    points = [
        (u * w).act(b)
        for w in system.elements()
        if bruhat_leq(w, v) and (u * w).length == u.length + w.length
    ]
    return QLaurent.from_support(points)


def mixed_bar_by_filter(
    system: RootSystemData, u: WeylElement, v: WeylElement, b: Iterable[Number]
) -> QLaurent:
    """Σ X_a over a ∈ W(b) with u_a ≥ u_{uv(b)} and (a, α) < 0 for α ∈ λ(u^{-1})."""
    _check_length_additive(u, v)
    anchor = system.minimal_antidominant((u * v).act(b))
    blocked = u.inverse().lambda_set()
    points = [
        a
        for a in system.orbit(b)
        if bruhat_leq(anchor, system.minimal_antidominant(a))
        and all(system.pairing(a, alpha) < 0 for alpha in blocked)
    ]
    return QLaurent.from_support(points)


# ---- general b ----


def extremal_dag_general(
    system: RootSystemData,
    setting: Setting,
    b: Iterable[Number],
    rng: random.Random | None = None,
) -> QLaurent:
    """𝔼†_b for arbitrary b through π_c with c = u_{b^ι}^{-1}(ρ̌^ε)."""
    b = tuple(b)
    if len(b) != system.rank:
        raise ValueError(f"Weight {b} does not have rank {system.rank}")
    b_iota = tuple(int(v) for v in system.iota_weight(b))
    u = system.minimal_antidominant(b_iota)
    v = u.inverse() * system.longest_element()
    poly = mixed_bar(system, u, v, system.dominant(b_iota))

    c = u.inverse().act(rho_check_eps(system, setting))
    decomposition = pi_c(system, setting, c).reduced_decomposition(rng)
    u_b_inv = system.minimal_antidominant(b).inverse()
    for j, root in zip(decomposition.letters, alpha_sequence(decomposition), strict=True):
        primed = not system.is_positive_root(u_b_inv.act(root.finite))
        op = t_bar_prime if primed else t_bar
        poly = op(system, setting, system.iota(j), poly)

    r = pi_index(decomposition.pi)
    poly = poly.apply_affine(AffineElement.pi(system, setting, system.iota(r)))
    poly = poly.star().scale_q(-_rho_shift(system, setting, system.dominant(b)))
    logger.debug("general dag %s %s b=%s: %d terms", system.label, setting, b, len(poly))
    return poly.assert_integral()


# ---- type A ----


def hhl_dag_An(n: int, i: int) -> QLaurent:  # noqa: N802
    """Σ_J q^{−n_i(J)}·X_J over i-subsets J of {1..n+1}, with n_i(J) = #(J ∩ [1, n+1−i]).

    x_J is read in ε-coordinates and sent to P; the coordinates are then listed
    in reverse so that the monic term is X_{−ω_i}.
    """
    if not 1 <= i <= n:
        raise ValueError(f"Index {i} out of range for A{n}")
    terms = []
    for subset in combinations(range(1, n + 2), i):
        eps = [int(j in subset) for j in range(1, n + 2)]
        weight = tuple(eps[k] - eps[k + 1] for k in range(n))
        drop = sum(1 for j in subset if j <= n + 1 - i)
        terms.append(((weight[::-1], -drop), 1))
    return QLaurent(terms)


def a1_closed_form(n: int) -> QLaurent:
    """Σ_j q^{−j}·binom(n, j)_{q^{-1}}·X_{(2j−n)ω} in A₁."""
    if n < 0:
        raise ValueError(f"Degree {n} must be nonnegative")
    terms: list[tuple[Term, int]] = []
    for j in range(n + 1):
        for drop, k in _q_binomial(n, j).items():
            terms.append((((2 * j - n,), -(j + drop)), k))
    return QLaurent(terms)


def _q_binomial(n: int, j: int) -> dict[int, int]:
    """Coefficients of the Gaussian binomial in x, as {power: count}."""
    # Pascal rule: [n, j] = [n−1, j−1] + x^j [n−1, j]
    rows: list[list[dict[int, int]]] = [[{0: 1}]]
    for m in range(1, n + 1):
        row = []
        for k in range(m + 1):
            acc: dict[int, int] = {}
            if k >= 1:
                for p, c in rows[m - 1][k - 1].items():
                    acc[p] = acc.get(p, 0) + c
            if k <= m - 1:
                for p, c in rows[m - 1][k].items():
                    acc[p + k] = acc.get(p + k, 0) + c
            row.append(acc)
        rows.append(row)
    return rows[n][j]


def dag_poly(
    label: str, setting: str, b: tuple[int, ...]
) -> tuple[str, QLaurent]:
    """Pick the pipeline for b; returns (pipeline name, polynomial)."""
    system = build_root_system(label)
    setting_ = Setting.parse(setting)
    if system.is_antidominant(b):
        return "extremal", extremal_dag(system, setting_, b).poly
    return "general", extremal_dag_general(system, setting_, b)
