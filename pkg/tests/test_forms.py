from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from plectic.errors import ChartMismatch, DegreeError
from plectic.forms import (Chart, PolyForm, PolyMultiVec, euler_field, exterior_d, interior, interior_sequence,
                           interior_vector, lie_derivative, poincare_homotopy, schouten, vector_bracket,
                           volume_form, wedge)
from plectic.parser import parse_expression
from plectic.poly import MultiPoly

R3 = Chart.standard(3)
SYMS = sympy.symbols(R3.names)

coef = st.fractions(min_value=-4, max_value=4, max_denominator=4)
polys = st.dictionaries(st.tuples(*[st.integers(0, 2)] * 3), coef, max_size=3).map(lambda t: MultiPoly(R3.names, t))


def sym(p: MultiPoly):
    return sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s ** e for s, e in zip(SYMS, ex)])
                       for ex, c in p.terms.items()])


def same(p: MultiPoly, expr) -> bool:
    return sympy.expand(sym(p) - expr) == 0


def P(src):
    return parse_expression(src, R3)


@settings(max_examples=100)
@given(polys, polys, polys)
def test_d_of_one_form_is_curl(a, b, c):
    """d(a dx1 + b dx2 + c dx3) has the curl components (sympy oracle)."""
    w = PolyForm(R3, 1, {(0,): a, (1,): b, (2,): c})
    dw = exterior_d(w)
    A, B, C = sym(a), sym(b), sym(c)
    x1, x2, x3 = SYMS
    zero = MultiPoly.zero(R3.names)
    assert same(dw.components.get((0, 1), zero), sympy.diff(B, x1) - sympy.diff(A, x2))
    assert same(dw.components.get((0, 2), zero), sympy.diff(C, x1) - sympy.diff(A, x3))
    assert same(dw.components.get((1, 2), zero), sympy.diff(C, x2) - sympy.diff(B, x3))


@settings(max_examples=100)
@given(polys, polys, polys, polys, polys, polys)
def test_vector_bracket_matches_sympy(a1, a2, a3, b1, b2, b3):
    """[u, v]^i = u(v^i) - v(u^i) computed independently with sympy."""
    u = PolyMultiVec.vector_field(R3, [a1, a2, a3])
    v = PolyMultiVec.vector_field(R3, [b1, b2, b3])
    br = vector_bracket(u, v)
    us, vs = [sym(a1), sym(a2), sym(a3)], [sym(b1), sym(b2), sym(b3)]
    for i in range(3):
        want = sum(us[j] * sympy.diff(vs[i], SYMS[j]) - vs[j] * sympy.diff(us[i], SYMS[j]) for j in range(3))
        assert same(br.coefficient(i), want)
    assert schouten(u, v) == br


def test_interior_of_volume():
    """iota_{@x1} dx1^dx2^dx3 = dx2^dx3 and iota_{@x2} gives -dx1^dx3."""
    vol = volume_form(R3)
    assert interior_vector(P("@x1"), vol) == P("dx2^dx3")
    assert interior_vector(P("@x2"), vol) == P("-1 dx1^dx3")


def test_interior_sequence_order():
    """iota(v1 ^ v2) = iota_{v2} iota_{v1}: the first field is inserted first."""
    vol = volume_form(R3)
    assert interior_sequence([P("@x1"), P("@x2")], vol) == P("dx3")
    assert interior(P("@x1 ^ @x2"), vol) == interior_sequence([P("@x1"), P("@x2")], vol)


def test_euler_contraction_of_volume():
    """iota_E vol is the angular form."""
    assert interior_vector(euler_field(R3), volume_form(R3)) == P("x1 dx2^dx3 - x2 dx1^dx3 + x3 dx1^dx2")


def test_lie_derivative_of_volume_is_divergence():
    """L_v vol = (div v) vol."""
    v = P("x1^2 @x1 + x1*x2 @x2 - x3 @x3")
    div = R3.var(0) * 3 - 1
    assert lie_derivative(v, volume_form(R3)) == volume_form(R3) * div


def test_rotation_preserves_area():
    """A rotation field preserves dx1^dx2."""
    assert lie_derivative(P("x2 @x1 - x1 @x2"), P("dx1^dx2")).is_zero()


def test_poincare_homotopy_gives_primitive():
    """d K(vol) = vol, and K(vol) = iota_E vol / 3."""
    k = poincare_homotopy(volume_form(R3))
    assert exterior_d(k) == volume_form(R3)
    assert k == interior_vector(euler_field(R3), volume_form(R3)) * Fraction(1, 3)


def test_wedge_graded_commutative():
    """a ^ b = (-1)^{|a||b|} b ^ a."""
    a, b = P("x1 dx1 + dx2"), P("x3 dx1^dx3")
    assert wedge(a, b) == wedge(b, a)
    c = P("x2 dx3")
    assert wedge(a, c) == -wedge(c, a)


def test_chart_mismatch_rejected():
    """Adding forms from different charts raises ChartMismatch."""
    other = Chart(("y1", "y2", "y3"))
    with pytest.raises(ChartMismatch):
        volume_form(R3) + volume_form(other)


def test_as_function_needs_degree_zero():
    """Only 0-forms convert to polynomials."""
    with pytest.raises(DegreeError):
        P("dx1").as_function()
