"""Extremal PBW degrees d(λ, w) and the corrected dag-degree vectors γ̃_w."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from itertools import product

from .affine import Setting
from .dagops import DegreeTable, dag_table
from .kostant import GammaVector, KostantSolver, difference, gamma, kostant_table
from .qlaurent import QLaurent
from .rootsystem import RootSystemData, Vector, WeylElement

logger = logging.getLogger(__name__)

# positive roots of G₂, largest first
G2_BETAS: tuple[Vector, ...] = ((3, 2), (3, 1), (2, 1), (1, 1), (0, 1), (1, 0))

# (series, setting) -> range of i receiving the +1 correction, as a function of n
_TILDE_RANGES = {
    ("B", Setting.UNTWISTED): lambda n: range(3, n) if n >= 4 else range(0),
    ("C", Setting.TWISTED): lambda n: range(3, n + 1) if n >= 3 else range(0),
    ("D", Setting.UNTWISTED): lambda n: range(3, n - 1) if n >= 5 else range(0),
    ("D", Setting.TWISTED): lambda n: range(3, n - 1) if n >= 5 else range(0),
}


def _require_pbw(system: RootSystemData, setting: Setting) -> None:
    if setting is Setting.TWISTED:
        raise ValueError("PBW degrees exist only in the untwisted setting (no twisted PBW theory)")
    if system.series not in "ABCDG":
        raise ValueError(f"No PBW degree formula for {system.label}")


def _odd_closed_prefix(perm: tuple[int, ...], k: int) -> bool:
    """{|w_1|,…,|w_k|} = {1..k} with 3 + 2s of them negative."""
    head = perm[:k]
    negative = sum(1 for v in head if v < 0)
    closed = {abs(v) for v in head} == set(range(1, k + 1))
    return closed and negative >= 3 and negative % 2 == 1


def g2_pbw_degree(lam: Iterable[int], w: WeylElement) -> int:
    """min Σ s_i over S(λ) with Σ s_i β_i = λ − w(λ)."""
    system = w.system
    if system.series != "G":
        raise ValueError(f"{system.label} is not G2")
    k, l = (int(v) for v in lam)
    x, y = difference(system, (k, l), w)
    cap = k + 2 * l
    best: int | None = None
    # s5, s6 sit on the simple roots β5 = α₂, β6 = α₁ and absorb the rest
    free = G2_BETAS[:4]
    for head in product(range(cap + 1), repeat=4):
        s1, s2, s3, s4 = head
        s5 = y - sum(s * beta[1] for s, beta in zip(head, free, strict=True))
        s6 = x - sum(s * beta[0] for s, beta in zip(head, free, strict=True))
        if s5 < 0 or s6 < 0 or s5 > l or s6 > k:
            continue
        if s2 + s3 + s6 > k + l or s3 + s4 + s6 > k + l or s4 + s5 + s6 > k + l:
            continue
        if s1 + s2 + s3 + s4 + s5 > cap or s2 + s3 + s4 + s5 + s6 > cap:
            continue
        total = s1 + s2 + s3 + s4 + s5 + s6
        if best is None or total < best:
            best = total
    if best is None:
        raise ValueError(f"S({(k, l)}) has no point for {w!r}")
    return best


def d_fundamental(
    system: RootSystemData, k: int, w: WeylElement, setting: Setting = Setting.UNTWISTED
) -> int:
    _require_pbw(system, setting)
    if not 1 <= k <= system.rank:
        raise ValueError(f"Node {k} out of range for {system.label}")
    if system.series == "G":
        return g2_pbw_degree(system.fundamental_weight(k), w)
    perm = w.one_line()
    head = perm[:k]
    if system.series == "A":
        return sum(1 for v in head if v > k)
    if system.series == "C":
        return sum(1 for v in head if v > k) + sum(1 for v in head if v < 0)
    n = system.rank
    a = gamma(system, Setting.UNTWISTED, w).coefficients[k - 1]
    wedge_range = n - 1 if system.series == "B" else n - 2
    if k <= wedge_range and _odd_closed_prefix(perm, k):
        return a + 1
    return a


def d_additive(system: RootSystemData, lam: Iterable[int], w: WeylElement) -> int:
    """Σ m_k·d(ω_k, w) for λ = Σ m_k ω_k."""
    lam = tuple(lam)
    if not system.is_dominant(lam):
        raise ValueError(f"Weight {lam} is not dominant")
    return sum(m * d_fundamental(system, k + 1, w) for k, m in enumerate(lam) if m)


def d_type_a_sum(system: RootSystemData, lam: Iterable[int], w: WeylElement) -> int:
    """Σ over k with w(k) > k of m_k + … + m_{w(k)−1}."""
    if system.series != "A":
        raise ValueError(f"{system.label} is not of type A")
    lam = tuple(lam)
    perm = w.one_line()
    return sum(sum(lam[k - 1 : t - 1]) for k, t in enumerate(perm, start=1) if t > k)


def d_table(system: RootSystemData, lam: Iterable[int]) -> DegreeTable:
    lam = tuple(lam)
    entries = {u: d_additive(system, lam, u) for u in system.coset_reps(lam)}
    return DegreeTable(system, Setting.UNTWISTED, lam, entries)


# ---- corrected dag-degree vectors ----


def tilde_gamma(system: RootSystemData, setting: Setting, w: WeylElement) -> GammaVector:
    """ã_i(w); equal to a_i(w) except for the odd-negative closed prefixes."""
    if system.series == "G":
        coeffs = tuple(
            dag_table(system, setting, system.fundamental_weight(i)).at(w) for i in (1, 2)
        )
        return GammaVector(coeffs, setting)
    base = gamma(system, setting, w)
    bumped = _TILDE_RANGES.get((system.series, setting))
    if bumped is None:
        return base
    perm = w.one_line()
    coeffs = list(base.coefficients)
    for i in bumped(system.rank):
        if _odd_closed_prefix(perm, i):
            coeffs[i - 1] += 1
    return GammaVector(tuple(coeffs), setting)


def e_closed(system: RootSystemData, setting: Setting, lam: Iterable[int], w: WeylElement) -> int:
    """e(λ, w) = (γ̃_w, λ)."""
    lam = tuple(lam)
    if not system.is_dominant(lam):
        raise ValueError(f"Weight {lam} is not dominant")
    return tilde_gamma(system, setting, w).pair(lam)


def _fundamental_dag_degrees(
    system: RootSystemData, setting: Setting, i: int
) -> dict[WeylElement, int]:
    omega = system.fundamental_weight(i)
    if system.series in "ABCD":
        return {u: e_closed(system, setting, omega, u) for u in system.coset_reps(omega)}
    # exceptional types: read off the dag pipeline
    return dict(dag_table(system, setting, omega).entries)


def e_tilde_poly(system: RootSystemData, setting: Setting, i: int) -> QLaurent:
    """Σ_{W/W^i} q^{−e(ω_i,w)}·X_{−w(ω_i)}, printed relative to −ω_i."""
    omega = system.fundamental_weight(i)
    degrees = _fundamental_dag_degrees(system, setting, i)
    logger.debug("Ẽ† %s %s i=%d: %d cosets", system.label, setting, i, len(degrees))
    return QLaurent(((tuple(-v for v in u.act(omega)), -e), 1) for u, e in degrees.items())


def e_ddag(system: RootSystemData, setting: Setting, i: int) -> QLaurent:
    """The singular part of e_tilde_poly: cosets with e(ω_i, w) > n(ω_i, w)."""
    omega = system.fundamental_weight(i)
    degrees = _fundamental_dag_degrees(system, setting, i)
    kostant = kostant_table(system, setting, omega, KostantSolver(system, setting))
    return QLaurent(
        ((tuple(-v for v in u.act(omega)), -e), 1)
        for u, e in degrees.items()
        if e > kostant.entries[u]
    )
