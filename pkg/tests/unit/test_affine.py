"""Extended affine Weyl groups: reflections, lengths, length-zero elements, reduced words."""

import random

import pytest

from dagdeg.affine import (
    AffineElement,
    AffineRoot,
    Setting,
    alpha_sequence,
    pi_c,
    pi_index,
    pi_rho,
    pi_rho_word,
    simple_affine_root,
)
from dagdeg.rootsystem import build_root_system

SYSTEMS = ["A1", "A2", "A3", "B2", "C3", "D4", "G2"]


def each_setting():
    return [Setting.UNTWISTED, Setting.TWISTED]


# ---------------------------------------------------------------------------
# Setting
# ---------------------------------------------------------------------------


def test_setting_parse():
    assert Setting.parse(" Twisted ") is Setting.TWISTED
    assert Setting.parse(Setting.UNTWISTED) is Setting.UNTWISTED
    with pytest.raises(ValueError, match="Unknown setting"):
        Setting.parse("affine")


# ---------------------------------------------------------------------------
# simple reflections
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("label", SYSTEMS)
def test_simple_reflections_are_involutions_of_length_one(label):
    system = build_root_system(label)
    for setting in each_setting():
        one = AffineElement.identity(system, setting)
        for i in range(system.rank + 1):
            s = AffineElement.simple(system, setting, i)
            assert s * s == one
            assert s.length == 1
            root = simple_affine_root(system, setting, i)
            image = s.act_root(root)
            assert image == AffineRoot(tuple(-v for v in root.finite), -root.level)


def test_alpha_zero_uses_the_setting():
    system = build_root_system("B2")
    assert simple_affine_root(system, Setting.UNTWISTED, 0).finite == tuple(
        -v for v in system.theta_weight
    )
    assert simple_affine_root(system, Setting.TWISTED, 0).finite == tuple(
        -v for v in system.theta_short_weight
    )


def test_affine_reflection_matches_simple_zero():
    system = build_root_system("C3")
    for setting in each_setting():
        root = simple_affine_root(system, setting, 0)
        assert root.reflection(system, setting) == AffineElement.simple(system, setting, 0)


def test_inverse_and_identity_length():
    system = build_root_system("A2")
    x = AffineElement.from_word(system, Setting.UNTWISTED, (0, 1, 2, 0))
    assert (x * x.inverse()) == AffineElement.identity(system, Setting.UNTWISTED)
    assert AffineElement.identity(system, Setting.UNTWISTED).length == 0


def test_mixing_settings_is_rejected():
    system = build_root_system("A2")
    with pytest.raises(ValueError):
        AffineElement.simple(system, Setting.UNTWISTED, 1) * AffineElement.simple(
            system, Setting.TWISTED, 1
        )


# ---------------------------------------------------------------------------
# length-zero elements
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("label", SYSTEMS + ["E6"])
def test_pi_elements_have_length_zero(label):
    system = build_root_system(label)
    for setting in each_setting():
        orbit = system.orbit_o_twisted if setting is Setting.TWISTED else system.orbit_o_untwisted
        for r in orbit:
            pi = AffineElement.pi(system, setting, r)
            assert pi.length == 0
            assert pi_index(pi) == r


def test_pi_outside_orbit_raises():
    with pytest.raises(ValueError, match="not in the"):
        AffineElement.pi(build_root_system("G2"), Setting.UNTWISTED, 1)


def test_pi_index_rejects_positive_length():
    system = build_root_system("A2")
    with pytest.raises(ValueError):
        pi_index(AffineElement.simple(system, Setting.UNTWISTED, 1))


# ---------------------------------------------------------------------------
# reduced decompositions
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("label", ["A2", "B2", "C3", "G2"])
def test_pi_rho_decomposition(label):
    system = build_root_system(label)
    for setting in each_setting():
        element = pi_rho(system, setting)
        decomposition = pi_rho_word(system, setting)
        assert decomposition.recompose() == element
        assert len(decomposition.letters) == element.length
        assert decomposition.pi.length == 0


def test_random_reduced_words_recompose():
    system = build_root_system("B3")
    element = pi_rho(system, Setting.UNTWISTED)
    rng = random.Random(7)
    words = set()
    for _ in range(5):
        decomposition = element.reduced_decomposition(rng)
        assert decomposition.recompose() == element
        assert len(decomposition.letters) == element.length
        words.add(decomposition.letters)
    assert words


@pytest.mark.parametrize("label", ["A2", "B2", "G2"])
def test_alpha_sequence_lists_the_inversions(label):
    system = build_root_system(label)
    for setting in each_setting():
        decomposition = pi_rho_word(system, setting)
        roots = alpha_sequence(decomposition)
        assert all(root.is_positive(system) for root in roots)
        assert set(roots) == set(decomposition.recompose().lambda_set())


@pytest.mark.parametrize("label", ["A2", "C3", "G2"])
def test_left_descents_shorten(label):
    system = build_root_system(label)
    for setting in each_setting():
        element = pi_rho(system, setting)
        for i in range(system.rank + 1):
            shorter = element.reduce_left(i)
            if element.is_left_descent(i):
                assert shorter.length == element.length - 1
            else:
                assert shorter.length == element.length + 1
            assert element.inverse().is_right_descent(i) == element.is_left_descent(i)


@pytest.mark.parametrize("label", ["A2", "B2", "G2"])
def test_reduced_words_strip_the_smallest_left_descent(label):
    system = build_root_system(label)
    for setting in each_setting():
        element = pi_rho(system, setting)
        decomposition = element.reduced_decomposition()
        # ŵ = π·s_{i_l}⋯ = s_j·π⋯ with α_j = π(α_{i_l})
        last = simple_affine_root(system, setting, decomposition.word[0])
        image = decomposition.pi.act_root(last)
        simple = [simple_affine_root(system, setting, j) for j in range(system.rank + 1)]
        first = [j for j, root in enumerate(simple) if root == image]
        assert first == [element.left_descents()[0]]
        assert element.reduce_left(first[0]).length == element.length - 1


def test_pi_c_for_a1_negative_coweight():
    system = build_root_system("A1")
    element = pi_c(system, Setting.UNTWISTED, (-1,))
    decomposition = element.reduced_decomposition()
    assert decomposition.letters == (0,)
    assert pi_index(decomposition.pi) == 1


def test_act_point_translates_level():
    system = build_root_system("A1")
    t = AffineElement.translation_by(system, Setting.TWISTED, (1,))
    # t_a: [z, ζ] -> [z, ζ − (z, a)] with (ω, ω) = 1/2 in A1
    z, zeta = t.act_point((2,), 0)
    assert z == (2,)
    assert zeta == -1
