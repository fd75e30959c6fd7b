import pytest

from qlab.combings import (
    Combing,
    check_combing_axioms,
    fellow_traveler_constant,
    fellow_traveler_profile,
    length_growth,
    make_combing,
    quasi_geodesic_check,
    smallest_passing_constants,
)
from qlab.groups import make_group

Z2 = make_group("Z^2")
F2 = make_group("F2")
H3 = make_group("H3")


def test_straight_line_path_example():
    sigma = make_combing(Z2, "straight-line")
    g = (3, 2)
    assert [sigma.point_at(g, t) for t in range(6)] == [
        (0, 0), (1, 0), (2, 0), (3, 0), (3, 1), (3, 2)
    ]
    assert sigma.length_of(g) == 5
    assert sigma.point_at(g, 9) == g


def test_free_geodesic_path_example():
    sigma = make_combing(F2, "geodesic")
    g = F2.parse_word("a b")
    assert [sigma.point_at(g, t) for t in range(3)] == [
        (), F2.parse_word("a"), g
    ]


def test_geodesic_combings_have_geodesic_lengths():
    for grp, scheme, radius in ((Z2, "straight-line", 8), (F2, "geodesic", 8)):
        sigma = make_combing(grp, scheme)
        for g, d in grp.ball(radius).elements:
            assert sigma.length_of(g) == d


def test_axioms_hold_for_all_schemes():
    for grp, scheme, radius in (
        (Z2, "straight-line", 6),
        (F2, "geodesic", 5),
        (H3, "naive", 4),
        (Z2, "dilated", 4),
    ):
        rep = check_combing_axioms(make_combing(grp, scheme), radius)
        assert rep["passes"], rep


def test_unsupported_scheme():
    with pytest.raises(ValueError):
        make_combing(F2, "straight-line")
    with pytest.raises(ValueError):
        make_combing(Z2, "naive")


def test_fellow_traveler_constants():
    assert fellow_traveler_constant(make_combing(Z2, "straight-line"), 10) == 2
    assert fellow_traveler_constant(make_combing(F2, "geodesic"), 8) == 1


def test_fellow_traveler_radius_zero_and_monotone():
    sigma = make_combing(Z2, "straight-line")
    profile = fellow_traveler_profile(sigma, 8)
    assert profile[0] == 0
    assert profile == sorted(profile)


def test_quasi_geodesic_check_geodesics_pass_at_one_zero():
    for grp, scheme in ((Z2, "straight-line"), (F2, "geodesic")):
        rep = quasi_geodesic_check(make_combing(grp, scheme), 1.0, 0.0, 6)
        assert rep["passes"]
        assert smallest_passing_constants(make_combing(grp, scheme), 6) == (1.0, 0.0)


def test_quasi_geodesic_negative_control():
    # a dummy combing that never leaves e fails every grid point
    dummy = Combing(
        group=Z2,
        scheme="stuck",
        length_of=lambda g: Z2.word_length(g),
        point_at=lambda g, t: Z2.identity(),
    )
    assert smallest_passing_constants(dummy, 5) is None
    # and it also fails the eventual-constancy axiom
    assert not check_combing_axioms(dummy, 3)["passes"]


def test_quasi_geodesic_check_rejects_bad_constants():
    sigma = make_combing(Z2, "straight-line")
    with pytest.raises(ValueError):
        quasi_geodesic_check(sigma, 0.5, 0.0, 3)


def test_length_growth_exponents():
    assert length_growth(make_combing(Z2, "straight-line"), 10)[
        "exponent"
    ] == pytest.approx(1.0, abs=0.05)
    assert length_growth(make_combing(F2, "geodesic"), 8)[
        "exponent"
    ] == pytest.approx(1.0, abs=0.05)
    assert length_growth(make_combing(Z2, "dilated"), 10)[
        "exponent"
    ] == pytest.approx(2.0, abs=0.15)


def test_h3_naive_is_far_from_geodesic_on_the_centre():
    sigma = make_combing(H3, "naive")
    z = (0, 0, 1)
    assert sigma.length_of(z) == 4
    assert H3.word_length(z) == 4
    deep = (0, 0, 4)
    assert sigma.length_of(deep) == 16
    assert H3.word_length(deep) < 16
