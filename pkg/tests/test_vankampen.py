import pytest

from qlab.errors import ParseError
from qlab.vankampen import (
    cyclic_reduce,
    cyclic_variants,
    format_word,
    free_reduce,
    invert_word,
    parse_presentation,
    parse_word,
    vankampen_area,
)


def test_free_reduce():
    assert free_reduce((1, -1)) == ()
    assert free_reduce((1, 2, -2, -1, 1)) == (1,)
    assert invert_word((1, 2)) == (-2, -1)
    assert cyclic_reduce((1, 2, -1)) == (2,)


def test_parse_presentation_and_sugar():
    p = parse_presentation("<a,b|[a,b]>")
    assert p.generators == ("a", "b")
    assert p.relators == ((1, 2, -1, -2),)
    q = parse_presentation("<a|a^3>")
    assert q.relators == ((1, 1, 1),)
    nested = parse_word("[a^2,b^2]", p)
    assert nested == (1, 1, 2, 2, -1, -1, -2, -2)
    assert parse_word("(a b)^-1", p) == (-2, -1)
    assert format_word((1, -2), p) == "a b^-1"


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_presentation("a,b|[a,b]")
    with pytest.raises(ParseError):
        parse_presentation("<a,b>")
    with pytest.raises(ParseError):
        parse_presentation("<ab|a>")
    p = parse_presentation("<a,b|[a,b]>")
    with pytest.raises(ParseError):
        parse_word("c", p)
    with pytest.raises(ParseError):
        parse_word("a^", p)


def test_cyclic_variants_cover_inverse():
    variants = cyclic_variants((1, 2, -1, -2))
    assert (2, -1, -2, 1) in variants
    assert (-1, -2, 1, 2) in variants
    assert (2, 1, -2, -1) in variants  # from the inverse relator


def test_area_of_relator_and_empty():
    p = parse_presentation("<a,b|[a,b]>")
    assert vankampen_area(p, parse_word("[a,b]", p), 5) == 1
    assert vankampen_area(p, (), 5) == 0


def test_area_commutator_squares():
    p = parse_presentation("<a,b|[a,b]>")
    assert vankampen_area(p, parse_word("[a^1,b^1]", p), 10) == 1
    assert vankampen_area(p, parse_word("[a^2,b^2]", p), 10) == 4


def test_area_none_for_nontrivial_words():
    p = parse_presentation("<a,b|[a,b]>")
    assert vankampen_area(p, parse_word("a", p), 6) is None
    assert vankampen_area(p, parse_word("a b", p), 6) is None


def test_area_respects_max_area():
    p = parse_presentation("<a,b|[a,b]>")
    w = parse_word("[a^2,b^2]", p)
    assert vankampen_area(p, w, 3) is None
    assert vankampen_area(p, w, 4) == 4


def test_area_cyclic_presentation():
    q = parse_presentation("<a|a^3>")
    assert vankampen_area(q, parse_word("a^3", q), 4) == 1
    assert vankampen_area(q, parse_word("a^6", q), 4) == 2
    assert vankampen_area(q, parse_word("a", q), 4) is None


def test_area_subadditive_on_products():
    p = parse_presentation("<a,b|[a,b]>")
    pairs = [
        ("[a,b]", "[a,b]"),
        ("[a,b]", "[a^2,b]"),
        ("[a^2,b^2]", "[a,b]"),
        ("[a,b^2]", "[a^2,b]"),
    ]
    for left, right in pairs:
        wl = parse_word(left, p)
        wr = parse_word(right, p)
        al = vankampen_area(p, wl, 12)
        ar = vankampen_area(p, wr, 12)
        combined = vankampen_area(p, free_reduce(wl + wr), 24)
        assert combined is not None
        assert combined <= al + ar


def test_empty_relators_error():
    p = parse_presentation("<a,b|>")
    with pytest.raises(ParseError):
        vankampen_area(p, (1,), 3)
