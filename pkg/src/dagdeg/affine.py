"""Extended affine Weyl groups for the untwisted and twisted settings.

An element t_a·w acts on [z, ζ] (and on affine roots) by
[z, ζ] ↦ [w(z), ζ − (w(z), a)]. Untwisted translations live in P^∨ and
α₀ = [−θ, 1]; twisted translations live in P and α₀ = [−ϑ, 1].
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

from .rootsystem import Number, RatVector, RootSystemData, Vector, WeylElement

logger = logging.getLogger(__name__)


class Setting(StrEnum):
    UNTWISTED = "untwisted"
    TWISTED = "twisted"

    @classmethod
    def parse(cls, value: str | Setting) -> Setting:
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(
                f"Unknown setting {value!r} (expected 'untwisted' or 'twisted')"
            ) from None


def theta_eps(system: RootSystemData, setting: Setting) -> Vector:
    """θ (untwisted) or ϑ (twisted), in weight coordinates."""
    if setting is Setting.TWISTED:
        return system.theta_short_weight
    return system.theta_weight


def rho_check_eps(system: RootSystemData, setting: Setting) -> RatVector:
    return system.rho if setting is Setting.TWISTED else system.rho_check


def omega_eps(system: RootSystemData, setting: Setting, r: int) -> RatVector:
    if setting is Setting.TWISTED:
        return system.fundamental_weight(r)
    return system.fundamental_coweight(r)


def orbit_o(system: RootSystemData, setting: Setting) -> tuple[int, ...]:
    if setting is Setting.TWISTED:
        return system.orbit_o_twisted
    return system.orbit_o_untwisted


def level_unit(system: RootSystemData, setting: Setting, alpha: RatVector) -> int:
    """Spacing of the levels of affine roots over α."""
    return system.root_nu(alpha) if setting is Setting.TWISTED else 1


def _normalize(value: Number) -> Number:
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


@dataclass(frozen=True, slots=True)
class AffineRoot:
    """[α, j]: a finite root in weight coordinates and a level."""

    finite: RatVector
    level: Number

    def is_positive(self, system: RootSystemData) -> bool:
        if self.level > 0:
            return True
        return self.level == 0 and system.is_positive_root(self.finite)

    def reflection(self, system: RootSystemData, setting: Setting) -> AffineElement:
        """s_{[α,j]} = t_{−jα^∨}·s_α."""
        coroot = system.coroot(self.finite)
        translation = tuple(_normalize(-self.level * v) for v in coroot)
        finite = WeylElement(system, system.reflect(system.rho, self.finite))
        return AffineElement(system, setting, translation, finite)


def simple_affine_root(system: RootSystemData, setting: Setting, i: int) -> AffineRoot:
    if i == 0:
        return AffineRoot(tuple(-v for v in theta_eps(system, setting)), 1)
    return AffineRoot(system.simple_root(i), 0)


class AffineElement:
    """t_a·w in the extended affine Weyl group of one setting."""

    __slots__ = ("system", "setting", "translation", "finite")

    def __init__(
        self,
        system: RootSystemData,
        setting: Setting,
        translation: RatVector,
        finite: WeylElement,
    ):
        self.system = system
        self.setting = setting
        self.translation: RatVector = tuple(_normalize(v) for v in translation)
        self.finite = finite

    # ---- constructors ----

    @classmethod
    def identity(cls, system: RootSystemData, setting: Setting) -> AffineElement:
        return cls(system, setting, (0,) * system.rank, system.identity())

    @classmethod
    def translation_by(
        cls, system: RootSystemData, setting: Setting, a: RatVector
    ) -> AffineElement:
        return cls(system, setting, a, system.identity())

    @classmethod
    def from_finite(
        cls, system: RootSystemData, setting: Setting, w: WeylElement
    ) -> AffineElement:
        return cls(system, setting, (0,) * system.rank, w)

    @classmethod
    def simple(cls, system: RootSystemData, setting: Setting, i: int) -> AffineElement:
        if i == 0:
            return simple_affine_root(system, setting, 0).reflection(system, setting)
        return cls.from_finite(system, setting, system.simple_reflection(i))

    @classmethod
    def pi(cls, system: RootSystemData, setting: Setting, r: int) -> AffineElement:
        """π_r = t_{ω_r^ε}·u_r^{-1} for r in O (π₀ is the identity)."""
        if r not in orbit_o(system, setting):
            raise ValueError(f"Node {r} is not in the Π-orbit of {system.label} ({setting})")
        if r == 0:
            return cls.identity(system, setting)
        return u_and_pi(system, setting, omega_eps(system, setting, r))[1]

    @classmethod
    def from_word(
        cls, system: RootSystemData, setting: Setting, word: tuple[int, ...]
    ) -> AffineElement:
        out = cls.identity(system, setting)
        for i in word:
            out = out * cls.simple(system, setting, i)
        return out

    # ---- group structure ----

    def _check(self, other: AffineElement) -> None:
        if self.system.label != other.system.label or self.setting is not other.setting:
            raise ValueError("Affine elements from different systems or settings")

    def __mul__(self, other: AffineElement) -> AffineElement:
        # (t_a w)(t_b v) = t_{a + w(b)} (w v)
        self._check(other)
        moved = self.finite.act(other.translation)
        translation = tuple(a + b for a, b in zip(self.translation, moved, strict=True))
        return AffineElement(self.system, self.setting, translation, self.finite * other.finite)

    def inverse(self) -> AffineElement:
        inv = self.finite.inverse()
        translation = tuple(-v for v in inv.act(self.translation))
        return AffineElement(self.system, self.setting, translation, inv)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AffineElement):
            return NotImplemented
        return (
            self.system.label == other.system.label
            and self.setting is other.setting
            and self.translation == other.translation
            and self.finite == other.finite
        )

    def __hash__(self) -> int:
        return hash((self.system.label, self.setting, self.translation, self.finite.key))

    def __repr__(self) -> str:
        return f"AffineElement(t={self.translation}, w={self.finite!r}, {self.setting})"

    # ---- action ----

    def act_root(self, root: AffineRoot) -> AffineRoot:
        z = self.finite.act(root.finite)
        return AffineRoot(z, _normalize(root.level - self.system.form(z, self.translation)))

    def act_point(self, z: RatVector, zeta: Number) -> tuple[RatVector, Number]:
        image = self.act_root(AffineRoot(z, zeta))
        return image.finite, image.level

    # ---- length and λ-sets ----

    def _level_window(self, alpha: Vector) -> tuple[int, int, int]:
        """(unit, k_min, k_max): [α, unit·k] ∈ λ(ŵ) exactly for k_min ≤ k ≤ k_max."""
        system = self.system
        unit = level_unit(system, self.setting, alpha)
        image = self.finite.act(alpha)
        shift = Fraction(system.form(image, self.translation)) / unit
        if shift.denominator != 1:
            raise ValueError(
                f"Translation {self.translation} is outside the {self.setting} lattice"
            )
        k_min = 0 if system.is_positive_root(alpha) else 1
        k_max = int(shift) - 1 if system.is_positive_root(image) else int(shift)
        return unit, k_min, k_max

    @property
    def length(self) -> int:
        total = 0
        for alpha in self.system.roots_weight:
            _, k_min, k_max = self._level_window(alpha)
            total += max(0, k_max - k_min + 1)
        return total

    def lambda_set(self) -> list[AffineRoot]:
        """Positive affine roots sent to negative ones."""
        out = []
        for alpha in self.system.roots_weight:
            unit, k_min, k_max = self._level_window(alpha)
            out.extend(AffineRoot(alpha, unit * k) for k in range(k_min, k_max + 1))
        return out

    def is_left_descent(self, i: int) -> bool:
        """ŵ^{-1}(α_i) < 0, i.e. l(s_i ŵ) < l(ŵ)."""
        root = simple_affine_root(self.system, self.setting, i)
        return not self.inverse().act_root(root).is_positive(self.system)

    def is_right_descent(self, i: int) -> bool:
        """ŵ(α_i) < 0, i.e. l(ŵ s_i) < l(ŵ)."""
        root = simple_affine_root(self.system, self.setting, i)
        return not self.act_root(root).is_positive(self.system)

    def reduce_left(self, i: int) -> AffineElement:
        return AffineElement.simple(self.system, self.setting, i) * self

    def left_descents(self) -> list[int]:
        return [i for i in range(self.system.rank + 1) if self.is_left_descent(i)]

    def reduced_decomposition(self, rng: random.Random | None = None) -> ReducedDecomposition:
        """ŵ = π_r·s_{i_l}⋯s_{i_1}, stripping left descents (smallest first, or at random).

        Stripping yields ŵ = s_{j_1}⋯s_{j_l}·π_r; moving π_r to the front turns each s_j
        into the simple reflection of π_r^{-1}(α_j).
        """
        current = self
        stripped: list[int] = []
        limit = self.length
        while True:
            descents = current.left_descents()
            if not descents:
                break
            i = rng.choice(descents) if rng is not None else descents[0]
            stripped.append(i)
            current = current.reduce_left(i)
            if len(stripped) > limit:
                raise RuntimeError(f"Word reduction of {self!r} did not terminate")
        back = current.inverse()
        letters = tuple(_simple_index(back, j) for j in reversed(stripped))
        logger.debug("reduced word of %r: %d letters", self, len(letters))
        return ReducedDecomposition(pi=current, letters=letters)


@dataclass(frozen=True)
class ReducedDecomposition:
    """ŵ = pi·s_{i_l}⋯s_{i_1}; ``letters`` is (i_1, …, i_l), applied first to last."""

    pi: AffineElement
    letters: tuple[int, ...]

    @property
    def word(self) -> tuple[int, ...]:
        """Letters as printed, i_l … i_1."""
        return tuple(reversed(self.letters))

    def recompose(self) -> AffineElement:
        system, setting = self.pi.system, self.pi.setting
        return self.pi * AffineElement.from_word(system, setting, self.word)


def alpha_sequence(decomposition: ReducedDecomposition) -> list[AffineRoot]:
    """α^p = s_{i_1}⋯s_{i_{p−1}}(α_{i_p}); together they form λ(ŵ)."""
    system, setting = decomposition.pi.system, decomposition.pi.setting
    prefix = AffineElement.identity(system, setting)
    out = []
    for i in decomposition.letters:
        out.append(prefix.act_root(simple_affine_root(system, setting, i)))
        prefix = prefix * AffineElement.simple(system, setting, i)
    return out


def u_and_pi(
    system: RootSystemData, setting: Setting, a: RatVector
) -> tuple[WeylElement, AffineElement]:
    """Split the translation t_a as π_a·u_a with u_a(a) antidominant and minimal."""
    u = system.minimal_antidominant(a)
    return u, AffineElement(system, setting, a, u.inverse())


def pi_c(system: RootSystemData, setting: Setting, c: RatVector) -> AffineElement:
    """π_c = t_c·u_c^{-1}."""
    return u_and_pi(system, setting, c)[1]


def pi_rho(system: RootSystemData, setting: Setting) -> AffineElement:
    """π_ρ^ε = t_{ρ̌^ε}·w₀."""
    return AffineElement(
        system, setting, rho_check_eps(system, setting), system.longest_element()
    )


def pi_rho_word(
    system: RootSystemData, setting: Setting, rng: random.Random | None = None
) -> ReducedDecomposition:
    return pi_rho(system, setting).reduced_decomposition(rng)


def pi_index(element: AffineElement) -> int:
    """The r with element = π_r, read off from π_r(α₀) = α_r."""
    system, setting = element.system, element.setting
    image = element.act_root(simple_affine_root(system, setting, 0))
    for r in orbit_o(system, setting):
        if image == simple_affine_root(system, setting, r):
            return r
    raise ValueError(f"{element!r} is not a length-zero element")


def _simple_index(element: AffineElement, j: int) -> int:
    """The i with element(α_j) = α_i; element has length zero."""
    system, setting = element.system, element.setting
    image = element.act_root(simple_affine_root(system, setting, j))
    for i in range(system.rank + 1):
        if image == simple_affine_root(system, setting, i):
            return i
    raise ValueError(f"{element!r} does not permute the simple roots")
