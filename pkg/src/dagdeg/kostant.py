"""Extremal degrees of the Kostant q-partition function.

n(λ, w) is the least number of positive roots adding up to λ − w(λ); in the
twisted setting a root β counts ν_β times.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import cache
from itertools import combinations_with_replacement, product

from .affine import Setting
from .dagops import DegreeTable, dag_table
from .qlaurent import QLaurent
from .rootsystem import RootSystemData, Vector, WeylElement, build_root_system

logger = logging.getLogger(__name__)

# G₂ roots in simple-root coordinates with special reflection formulas
_G2_SHORT_NONSIMPLE = frozenset({(1, 1), (2, 1)})
_G2_LONG_NONSIMPLE = frozenset({(3, 1), (3, 2)})

# systems where n(λ, w) = (γ_w, λ) for every dominant λ
_CLOSED_FORM_OK = {
    Setting.UNTWISTED: frozenset("AC"),
    Setting.TWISTED: frozenset("ABG"),
}


class KostantSolver:
    """Memoized minimum over decompositions; one instance per system, setting and call."""

    def __init__(self, system: RootSystemData, setting: Setting):
        self.system = system
        self.setting = setting
        roots = []
        for c, w in zip(system.positive_roots, system.positive_roots_weight, strict=True):
            cost = system.root_nu(w) if setting is Setting.TWISTED else 1
            roots.append((c, cost))
        self._roots: tuple[tuple[Vector, int], ...] = tuple(roots)
        self._solve = cache(self._solve_uncached)

    def _solve_uncached(self, target: Vector) -> int:
        if not any(target):
            return 0
        best: int | None = None
        for beta, cost in self._roots:
            if all(t >= b for t, b in zip(target, beta, strict=True)):
                rest = self._solve(tuple(t - b for t, b in zip(target, beta, strict=True)))
                if best is None or cost + rest < best:
                    best = cost + rest
        if best is None:
            raise ValueError(f"{target} is not a sum of positive roots")
        return best

    def minimum(self, target: Iterable[int]) -> int:
        target = tuple(int(v) for v in target)
        if any(v < 0 for v in target):
            raise ValueError(f"{target} is not in Q₊")
        return self._solve(target)

    @property
    def states(self) -> int:
        return self._solve.cache_info().currsize


def _require_dominant(system: RootSystemData, lam: Iterable[int]) -> Vector:
    lam = tuple(int(v) for v in lam)
    if len(lam) != system.rank:
        raise ValueError(f"Weight {lam} does not have rank {system.rank}")
    if not system.is_dominant(lam):
        raise ValueError(f"Weight {lam} is not dominant")
    return lam


def difference(system: RootSystemData, lam: Vector, w: WeylElement) -> Vector:
    """λ − w(λ) in simple-root coordinates."""
    image = w.act(lam)
    return system.to_root_lattice(tuple(a - b for a, b in zip(lam, image, strict=True)))


def n_min(
    system: RootSystemData,
    setting: Setting,
    lam: Iterable[int],
    w: WeylElement,
    solver: KostantSolver | None = None,
) -> int:
    lam = _require_dominant(system, lam)
    solver = solver or KostantSolver(system, setting)
    return solver.minimum(difference(system, lam, w))


def kostant_table(
    system: RootSystemData,
    setting: Setting,
    lam: Iterable[int],
    solver: KostantSolver | None = None,
) -> DegreeTable:
    lam = _require_dominant(system, lam)
    solver = solver or KostantSolver(system, setting)
    entries = {u: solver.minimum(difference(system, lam, u)) for u in system.coset_reps(lam)}
    logger.debug(
        "kostant table %s %s λ=%s: %d cosets, %d DP states",
        system.label, setting, lam, len(entries), solver.states,
    )
    return DegreeTable(system, setting, lam, entries)


# ---- closed forms ----


def n_reflection(
    system: RootSystemData, setting: Setting, lam: Iterable[int], alpha: Iterable[int]
) -> int:
    """n(λ, s_α) for a positive root α given in weight coordinates."""
    alpha = tuple(alpha)
    if not system.is_positive_root(alpha):
        raise ValueError(f"{alpha} is not a positive root of {system.label}")
    k = int(system.pairing(tuple(lam), alpha))
    coords = system.root_coords(alpha)
    if system.series == "G":
        if setting is Setting.UNTWISTED and coords in _G2_SHORT_NONSIMPLE:
            return 2 * (k // 3) + k % 3
        if setting is Setting.TWISTED and coords in _G2_LONG_NONSIMPLE:
            return 2 * k
    if setting is Setting.TWISTED:
        return system.root_nu(alpha) * k
    return k


def n_maximal_root(
    system: RootSystemData, setting: Setting, short: bool, w: WeylElement
) -> int:
    """n(θ′, w) for θ′ = ϑ (short=True) or θ."""
    top = system.theta_short_weight if short else system.theta_weight
    image = w.act(top)
    if tuple(image) == top:
        return 0
    if system.series == "G" and setting is Setting.TWISTED and not short:
        # 2α₁ + α₂ = α₁ + (α₁ + α₂)
        if difference(system, top, w) == (2, 1):
            return 2
        raise ValueError("n(θ, w) for twisted G2 is outside the maximal-root formula")
    unit = system.root_nu(top) if setting is Setting.TWISTED else 1
    sign = system.form(image, top)
    if sign > 0:
        return unit
    if sign < 0:
        return 2 * unit
    if short == (setting is Setting.TWISTED):
        return 2
    return n_min(system, setting, top, w)


@dataclass(frozen=True)
class GammaVector:
    """γ_w = Σ a_i α_i^∨."""

    coefficients: tuple[int, ...]
    setting: Setting

    def pair(self, lam: Iterable[int]) -> int:
        return sum(a * m for a, m in zip(self.coefficients, lam, strict=True))

    def __iter__(self) -> Iterator[int]:
        return iter(self.coefficients)


@dataclass(frozen=True)
class _Prefix:
    bigger: int
    negative: int
    closed_single: bool


def _prefix(perm: tuple[int, ...], i: int) -> _Prefix:
    head = perm[:i]
    negative = sum(1 for v in head if v < 0)
    closed = {abs(v) for v in head} == set(range(1, i + 1))
    return _Prefix(
        bigger=sum(1 for v in head if v > i),
        negative=negative,
        closed_single=closed and negative == 1,
    )


def _gamma_classical(series: str, n: int, setting: Setting, perm: tuple[int, ...]) -> list[int]:
    negatives = sum(1 for v in perm if v < 0)
    out = []
    for i in range(1, n + 1):
        p = _prefix(perm, i)
        if series == "A":
            a = p.bigger
        elif series == "C" and setting is Setting.UNTWISTED:
            a = p.bigger + p.negative
        elif series == "C":
            a = p.bigger + p.negative + int(p.closed_single)
        elif series == "B" and setting is Setting.TWISTED:
            a = 2 * (p.bigger + p.negative) if i < n else negatives
        elif series == "B":
            a = p.bigger + p.negative + int(p.closed_single) if i < n else (negatives + 1) // 2
        elif i < n - 1:
            a = p.bigger + p.negative + int(p.closed_single)
        elif i == n - 1:
            count = (
                int(n in perm[: n - 1])
                + int(0 < perm[n - 1] < n)
                + int(perm[n - 1] == -n)
                + sum(1 for v in perm[: n - 1] if -n < v < 0)
            )
            a = count // 2
        else:
            a = negatives // 2
        out.append(a)
    return out


def gamma(system: RootSystemData, setting: Setting, w: WeylElement) -> GammaVector:
    """The coefficients a_i(w) = n(ω_i, w) read from the signed permutation of w."""
    if system.series == "G":
        solver = KostantSolver(system, setting)
        coeffs = tuple(
            n_min(system, setting, system.fundamental_weight(i), w, solver) for i in (1, 2)
        )
        return GammaVector(coeffs, setting)
    if system.series not in "ABCD":
        raise ValueError(f"No γ_w formula for {system.label}")
    coeffs = _gamma_classical(system.series, system.rank, setting, w.one_line())
    return GammaVector(tuple(coeffs), setting)


def n_closed(system: RootSystemData, setting: Setting, lam: Iterable[int], w: WeylElement) -> int:
    """(γ_w, λ), only where n is additive in λ."""
    if system.series not in _CLOSED_FORM_OK[setting]:
        raise ValueError(f"n(λ, w) = (γ_w, λ) does not hold for {setting} {system.label}")
    lam = _require_dominant(system, lam)
    return gamma(system, setting, w).pair(lam)


def fundamental_gap(
    system: RootSystemData,
    setting: Setting,
    lam: Iterable[int],
    w: WeylElement,
    solver: KostantSolver | None = None,
) -> int:
    """Σ c_i·n(ω_i, w) − n(λ, w) for λ = Σ c_i ω_i."""
    lam = _require_dominant(system, lam)
    solver = solver or KostantSolver(system, setting)
    separate = sum(
        c * n_min(system, setting, system.fundamental_weight(i + 1), w, solver)
        for i, c in enumerate(lam)
        if c
    )
    return separate - n_min(system, setting, lam, w, solver)


# ---- additivity ----


@dataclass(frozen=True)
class AdditivityCase:
    lam: Vector
    mu: Vector
    w: WeylElement
    combined: int
    separate: int


def dominant_box(rank: int, box: int) -> list[Vector]:
    """Nonzero dominant weights with coordinates in [0, box]."""
    return [lam for lam in product(range(box + 1), repeat=rank) if any(lam)]


def additivity_report(system: RootSystemData, setting: Setting, box: int) -> list[AdditivityCase]:
    """All strict n(λ+μ, w) < n(λ, w) + n(μ, w) with λ ≤ μ in the box."""
    solver = KostantSolver(system, setting)
    memo: dict[tuple[Vector, Vector], int] = {}

    def n_of(lam: Vector, w: WeylElement) -> int:
        key = (lam, w.key)
        if key not in memo:
            memo[key] = n_min(system, setting, lam, w, solver)
        return memo[key]

    weights = dominant_box(system.rank, box)
    cases = []
    for w in system.elements():
        for lam, mu in combinations_with_replacement(weights, 2):
            total = tuple(a + b for a, b in zip(lam, mu, strict=True))
            combined = n_of(total, w)
            separate = n_of(lam, w) + n_of(mu, w)
            if combined > separate:
                raise RuntimeError(f"n({total}, {w!r}) exceeds n(λ)+n(μ)")
            if combined < separate:
                cases.append(AdditivityCase(lam, mu, w, combined, separate))
    logger.debug(
        "additivity %s %s box=%d: %d strict cases, %d DP states",
        system.label, setting, box, len(cases), solver.states,
    )
    return cases


def count_additivity_failures(label: str, setting: str, box: int) -> tuple[str, str, int]:
    """Picklable sweep task."""
    system = build_root_system(label)
    return label, setting, len(additivity_report(system, Setting.parse(setting), box))


# ---- singular comparator ----


def k_sing(system: RootSystemData, setting: Setting, i: int) -> QLaurent:
    """Σ A[ω_i − w(ω_i)]·q^{−n(ω_i,w)} over cosets with e(ω_i,w) > n(ω_i,w)."""
    omega = system.fundamental_weight(i)
    dag = dag_table(system, setting, omega)
    kostant = kostant_table(system, setting, omega)
    terms = []
    for u, n in kostant.items():
        if dag.entries[u] > n:
            terms.append(((tuple(-v for v in u.act(omega)), -n), 1))
    return QLaurent(terms)
