"""Root system tables, Weyl group elements and the Bruhat order."""

from fractions import Fraction

import pytest

from dagdeg.rootsystem import (
    WeylElement,
    build_root_system,
    bruhat_leq,
    parse_type_label,
)

# ---------------------------------------------------------------------------
# labels and tables
# ---------------------------------------------------------------------------


def test_parse_type_label_accepts_variants():
    assert parse_type_label("F4") == ("F", 4)
    assert parse_type_label(" b_3 ") == ("B", 3)


@pytest.mark.parametrize("label", ["D3", "E5", "G3", "B1", "X4", "A"])
def test_parse_type_label_rejects(label):
    with pytest.raises(ValueError):
        parse_type_label(label)


@pytest.mark.parametrize(
    "label, count",
    [("A1", 1), ("A3", 6), ("B3", 9), ("C3", 9), ("D4", 12), ("G2", 6), ("F4", 24), ("E6", 36)],
)
def test_positive_root_count(label, count):
    assert len(build_root_system(label).positive_roots) == count


@pytest.mark.parametrize(
    "label, theta, theta_short",
    [
        ("A2", (1, 1), (1, 1)),
        ("B3", (1, 2, 2), (1, 1, 1)),
        ("C3", (2, 2, 1), (1, 2, 1)),
        ("D4", (1, 2, 1, 1), (1, 2, 1, 1)),
        ("G2", (3, 2), (2, 1)),
        ("F4", (2, 3, 4, 2), (1, 2, 3, 2)),
        ("E6", (1, 2, 2, 3, 2, 1), (1, 2, 2, 3, 2, 1)),
    ],
)
def test_maximal_roots(label, theta, theta_short):
    system = build_root_system(label)
    assert system.theta == theta
    assert system.theta_short == theta_short


def test_short_roots_have_norm_two():
    for label in ("B3", "C3", "G2", "F4"):
        system = build_root_system(label)
        norms = {system.form(a, a) for a in system.positive_roots_weight}
        assert min(norms) == 2
        assert len(norms) == 2


def test_build_root_system_is_memoized():
    assert build_root_system("B3") is build_root_system("B3")


@pytest.mark.parametrize(
    "label, untwisted, twisted",
    [
        ("A3", (0, 1, 2, 3), (0, 1, 2, 3)),
        ("B3", (0, 1), (0, 3)),
        ("C3", (0, 3), (0, 1)),
        ("D4", (0, 1, 3, 4), (0, 1, 3, 4)),
        ("E6", (0, 1, 6), (0, 1, 6)),
        ("F4", (0,), (0,)),
        ("G2", (0,), (0,)),
    ],
)
def test_length_zero_orbits(label, untwisted, twisted):
    system = build_root_system(label)
    assert system.orbit_o_untwisted == untwisted
    assert system.orbit_o_twisted == twisted


def test_fundamental_coweight_divides_long_nodes():
    system = build_root_system("B3")
    assert system.fundamental_coweight(1) == (Fraction(1, 2), 0, 0)
    assert system.fundamental_coweight(3) == (0, 0, 1)


def test_fundamental_weight_out_of_range():
    with pytest.raises(ValueError, match="out of range"):
        build_root_system("A2").fundamental_weight(0)


def test_to_root_lattice_rejects_non_root_lattice_weights():
    system = build_root_system("A2")
    assert system.to_root_lattice((2, -1)) == (1, 0)
    with pytest.raises(ValueError):
        system.to_root_lattice((1, 0))


def test_pairing_with_simple_coroots_reads_coordinates():
    system = build_root_system("G2")
    for i in (1, 2):
        assert system.pairing((3, 5), system.simple_root(i)) == (3, 5)[i - 1]


# ---------------------------------------------------------------------------
# orbits and involution
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "label, node, size",
    [("A3", 2, 6), ("B3", 1, 6), ("D4", 1, 8), ("F4", 1, 24), ("F4", 2, 96), ("E6", 1, 27)],
)
def test_fundamental_orbit_sizes(label, node, size):
    system = build_root_system(label)
    assert len(system.orbit(system.fundamental_weight(node))) == size


def test_orbit_starts_at_dominant_point():
    system = build_root_system("B2")
    orbit = system.orbit((-1, 0))
    assert orbit[0] == (1, 0)
    assert len(set(orbit)) == len(orbit)


def test_iota():
    a3 = build_root_system("A3")
    assert [a3.iota(i) for i in range(4)] == [0, 3, 2, 1]
    e6 = build_root_system("E6")
    assert [e6.iota(i) for i in range(1, 7)] == [6, 2, 5, 4, 3, 1]
    b3 = build_root_system("B3")
    assert [b3.iota(i) for i in range(1, 4)] == [1, 2, 3]


# ---------------------------------------------------------------------------
# Weyl group
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("label, order", [("A2", 6), ("B2", 8), ("G2", 12), ("A3", 24), ("B3", 48)])
def test_weyl_group_order(label, order):
    assert len(build_root_system(label).elements()) == order


def test_longest_element_length_and_inversions():
    for label in ("A3", "C3", "G2"):
        system = build_root_system(label)
        w0 = system.longest_element()
        assert w0.length == len(system.positive_roots)
        assert len(w0.lambda_set()) == w0.length
        assert w0.inverse() == w0


def test_word_round_trip_and_multiplication():
    system = build_root_system("B3")
    for w in system.elements():
        assert system.from_word(w.word) == w
        assert (w * w.inverse()).is_identity()
        assert len(w.lambda_set()) == w.length


def test_from_word_composes_left_to_right():
    system = build_root_system("A2")
    s1, s2 = system.simple_reflection(1), system.simple_reflection(2)
    assert system.from_word((1, 2)) == s1 * s2
    # s1 s2 sends α1 to α2
    assert (s1 * s2).act(system.simple_root(1)) == system.simple_root(2)


def test_from_word_rejects_bad_letters():
    with pytest.raises(ValueError):
        build_root_system("A2").from_word((3,))


def test_descents():
    system = build_root_system("A2")
    w = system.from_word((1, 2))
    assert w.left_descents() == (1,)
    assert w.is_right_descent(2)
    assert not w.is_right_descent(1)


def test_one_line_forms():
    a2 = build_root_system("A2")
    assert a2.longest_element().one_line() == (3, 2, 1)
    b2 = build_root_system("B2")
    assert b2.longest_element().one_line() == (-1, -2)
    for label in ("B3", "C3", "D4"):
        system = build_root_system(label)
        for w in system.elements()[:40]:
            assert WeylElement.from_one_line(system, w.one_line()) == w


def test_one_line_rejects():
    with pytest.raises(ValueError):
        WeylElement.from_one_line(build_root_system("A2"), (1, -2, 3))
    with pytest.raises(ValueError):
        WeylElement.from_one_line(build_root_system("D4"), (-1, 2, 3, 4))
    with pytest.raises(ValueError):
        build_root_system("G2").identity().one_line()


def test_minimal_antidominant_and_coset_reps():
    system = build_root_system("C3")
    lam = (0, 1, 1)
    for a in system.orbit(lam):
        u = system.minimal_antidominant(a)
        assert system.is_antidominant(u.act(a))
        rep = system.min_coset_rep(a)
        assert rep.act(system.dominant(a)) == a
    reps = system.coset_reps(lam)
    assert len(reps) == len(set(reps)) == len(system.orbit(lam))


def test_bruhat_order():
    system = build_root_system("A2")
    e, w0 = system.identity(), system.longest_element()
    s1, s2 = system.simple_reflection(1), system.simple_reflection(2)
    for w in system.elements():
        assert bruhat_leq(e, w)
        assert bruhat_leq(w, w0)
    assert not bruhat_leq(s1, s2)
    assert bruhat_leq(s2, system.from_word((1, 2)))
    assert not bruhat_leq(system.from_word((1, 2)), system.from_word((2, 1)))
