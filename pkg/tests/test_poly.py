from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from plectic.poly import MultiPoly, scalar

NAMES = ("x1", "x2", "x3")
SYMS = sympy.symbols(NAMES)

coef = st.fractions(min_value=-5, max_value=5, max_denominator=6)
exps = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.dictionaries(exps, coef, max_size=4).map(lambda t: MultiPoly(NAMES, t))


def to_sympy(p: MultiPoly):
    return sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s ** e for s, e in zip(SYMS, exp)])
                       for exp, c in p.terms.items()])


def test_scalar_parses_rational_strings():
    """Integers, p/q strings and Fractions become Fractions."""
    assert scalar("3/4") == Fraction(3, 4)
    assert scalar(2) == Fraction(2)
    assert scalar(Fraction(-1, 3)) == Fraction(-1, 3)


def test_zero_coefficients_dropped():
    """Zero terms never appear in the term table."""
    p = MultiPoly(NAMES, {(1, 0, 0): 0, (0, 1, 0): 2})
    assert p.terms == {(0, 1, 0): Fraction(2)}
    assert (p - p).is_zero()


def test_exponent_length_checked():
    """An exponent of the wrong length is rejected."""
    with pytest.raises(ValueError):
        MultiPoly(NAMES, {(1, 0): 1})


@settings(max_examples=200)
@given(polys, polys)
def test_arithmetic_matches_sympy(p, q):
    """Sum and product agree with sympy's exact arithmetic."""
    assert sympy.expand(to_sympy(p + q) - (to_sympy(p) + to_sympy(q))) == 0
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0


@settings(max_examples=200)
@given(polys, st.integers(0, 2))
def test_derivative_matches_sympy(p, i):
    """Partial derivatives agree with sympy."""
    assert sympy.expand(to_sympy(p.diff(i)) - sympy.diff(to_sympy(p), SYMS[i])) == 0


@settings(max_examples=100)
@given(polys, st.tuples(coef, coef, coef))
def test_evaluate_matches_sympy(p, pt):
    """Exact evaluation at rational points agrees with sympy."""
    want = to_sympy(p).subs(dict(zip(SYMS, [sympy.Rational(c.numerator, c.denominator) for c in pt])))
    got = p.evaluate(pt)
    assert sympy.Rational(got.numerator, got.denominator) == want


def test_power_and_homogeneous_parts():
    """(x1 + 1)^2 splits into degrees 0, 1, 2."""
    x1 = MultiPoly.var(NAMES, 0)
    p = (x1 + 1) ** 2
    parts = p.homogeneous_parts()
    assert parts[0] == MultiPoly.const(NAMES, 1)
    assert parts[1] == x1 * 2
    assert parts[2] == x1 * x1
