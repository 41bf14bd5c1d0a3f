from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plectic.errors import ParseError, UnknownCoordinate
from plectic.forms import Chart, PolyForm, PolyMultiVec
from plectic.parser import parse_expression
from plectic.poly import MultiPoly
from plectic.printer import format_value
from plectic.scenarios import BUILTINS, builtin

R3 = Chart.standard(3)


def test_polynomial_literal():
    """x1^2*x2 is the monomial with exponent (2, 1, 0)."""
    p = parse_expression("x1^2*x2", R3)
    assert isinstance(p, MultiPoly)
    assert p.terms == {(2, 1, 0): Fraction(1)}


def test_angular_two_form():
    """The angular 2-form prints in canonical order."""
    w = parse_expression("x1 dx2^dx3 - x2 dx1^dx3 + x3 dx1^dx2", R3)
    assert isinstance(w, PolyForm) and w.degree == 2
    assert format_value(w) == "x3 dx1^dx2 - x2 dx1^dx3 + x1 dx2^dx3"


def test_rational_coefficient():
    """A leading rational literal is the coefficient."""
    w = parse_expression("1/3 x1 dx2^dx3", R3)
    assert w.components[(1, 2)] == R3.var(0) * Fraction(1, 3)


def test_vector_fields_and_bivectors():
    """@-terms give multivector fields."""
    v = parse_expression("x2 @x1 - x1 @x2", R3)
    assert isinstance(v, PolyMultiVec) and v.degree == 1
    assert parse_expression("@x1 ^ @x2", R3).degree == 2


def test_whitespace_wedge():
    """Whitespace between differentials is a wedge."""
    assert parse_expression("dx1 dx2", R3) == parse_expression("dx1^dx2", R3)


def test_forced_kind_for_functions():
    """kind='form' turns a polynomial into a 0-form."""
    f = parse_expression("x1 + 1", R3, "form")
    assert isinstance(f, PolyForm) and f.degree == 0


@pytest.mark.parametrize("src, position", [("x1 +", 4), ("y1", 0), ("dx1 ^ @x2", 9), ("1/0 x1", 0)])
def test_errors_carry_positions(src, position):
    """Malformed input raises ParseError with the offending position."""
    with pytest.raises(ParseError) as info:
        parse_expression(src, R3)
    assert info.value.position == position


def test_unknown_coordinate_error_type():
    """Unknown names are reported as UnknownCoordinate."""
    with pytest.raises(UnknownCoordinate):
        parse_expression("x4 dx1", R3)


def test_mixed_degrees_rejected():
    """A sum of a 1-form and a 2-form is not a homogeneous form."""
    with pytest.raises(ParseError):
        parse_expression("x1 dx1 + dx1^dx2", R3)


coef = st.fractions(min_value=-4, max_value=4, max_denominator=5)


@settings(max_examples=200)
@given(st.lists(st.tuples(coef, st.tuples(*[st.integers(0, 2)] * 3), st.sampled_from([(0,), (1,), (2,)])),
                max_size=4))
def test_parse_print_roundtrip(terms):
    """print then parse is the identity on random 1-forms."""
    w = PolyForm.zero(R3, 1)
    for c, e, idx in terms:
        w = w + PolyForm.basis(R3, list(idx), MultiPoly(R3.names, {e: c}))
    text = format_value(w)
    back = parse_expression(text, R3, "form")
    assert back.is_zero() if w.is_zero() else back == w
    assert format_value(parse_expression(text, R3, "form")) == text


def _builtin_values(name):
    s = builtin(name)
    values = []
    if s.omega is not None:
        values.append(s.omega)
    if s.action is not None:
        values.extend(s.action.fields)
    if s.cartan is not None:
        for table in s.cartan.components.values():
            values.extend(table.values())
    return values


@pytest.mark.parametrize("name", list(BUILTINS))
def test_builtin_expressions_roundtrip(name):
    """parse(print(v)) == v for every form and field of a builtin."""
    for v in _builtin_values(name):
        kind = "form" if isinstance(v, PolyForm) else "multivec"
        back = parse_expression(format_value(v), v.chart, kind)
        assert back.is_zero() if v.is_zero() else back == v
