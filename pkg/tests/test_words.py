"""Word grammar: parsing, rendering round-trip, errors."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatcert import parse_word, render_word
from flatcert.errors import ParseError
from flatcert.words import Name, Power, Product


def test_parse_examples():
    assert parse_word("a*b^-2") == Product((Name("a"), Power(Name("b"), -2)))
    assert parse_word("(a*b)^3") == Power(Product((Name("a"), Name("b"))), 3)
    with pytest.raises(ParseError) as exc:
        parse_word("a**b")
    assert exc.value.position == 2


def test_parse_details():
    assert parse_word("a") == Name("a")
    assert parse_word("a^0") == Power(Name("a"), 0)
    assert parse_word("a * b") == Product((Name("a"), Name("b")))
    assert parse_word("x_1^12") == Power(Name("x_1"), 12)
    for bad in ("", "*a", "a^", "(a", "a)b", "A"):
        with pytest.raises(ParseError):
            parse_word(bad)


def test_exponent_binds_tighter_than_product():
    assert parse_word("a*b^2") == Product((Name("a"), Power(Name("b"), 2)))
    assert parse_word("a^2*b") == Product((Power(Name("a"), 2), Name("b")))


_names = st.sampled_from(["a", "b", "c2", "x_y"]).map(Name)
_exprs = st.deferred(
    lambda: st.one_of(
        _names,
        st.tuples(_exprs, st.integers(-9, 9)).map(lambda t: Power(*t)),
        st.lists(_exprs, min_size=2, max_size=3).map(lambda fs: Product(tuple(fs))),
    )
)


@settings(max_examples=200, deadline=None)
@given(_exprs)
def test_render_parse_roundtrip(expr):
    assert parse_word(render_word(expr)) == expr
