from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial

import pytest
import sympy

from plectic.invariant import InvariantPoly, is_nondegenerate, multisets, symtrace_poly
from plectic.lie import su2

I = sympy.I
H = sympy.Rational(1, 2)
MATS = [H * sympy.Matrix([[0, 1], [-1, 0]]), H * sympy.Matrix([[0, I], [I, 0]]), H * sympy.Matrix([[I, 0], [0, -I]])]


def sympy_symtrace(k: int, ms: tuple[int, ...]) -> Fraction:
    total = 0
    for perm in itertools.permutations(ms):
        prod = sympy.eye(2)
        for i in perm:
            prod = prod * MATS[i]
        total += sympy.re(prod.trace())
    val = -sympy.nsimplify(total) / factorial(k)
    return Fraction(int(val.p), int(val.q))


def test_matrices_satisfy_su2_brackets():
    """The 2x2 model obeys [e1, e2] = e3 and cyclic."""
    for a, b, c in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
        assert MATS[a] * MATS[b] - MATS[b] * MATS[a] == MATS[c]


@pytest.mark.parametrize("k", [2, 3, 4])
def test_symtrace_matches_sympy(k):
    """Every entry of q_k agrees with an independent sympy trace computation."""
    q = symtrace_poly(k)
    for ms in multisets(3, k):
        assert q(*ms) == sympy_symtrace(k, ms)


def test_q2_is_half_identity():
    """q_2(e_i, e_j) = delta_ij / 2."""
    q = symtrace_poly(2)
    assert [[q(i, j) for j in range(3)] for i in range(3)] == [
        [Fraction(1, 2), 0, 0], [0, Fraction(1, 2), 0], [0, 0, Fraction(1, 2)]]


def test_q3_vanishes():
    """The cubic symmetrized trace is identically zero."""
    assert symtrace_poly(3).is_zero()


def test_q4_values():
    """q_4(e_i, e_j, e_j, e_j) = -delta_ij / 8."""
    q = symtrace_poly(4)
    for i in range(3):
        for j in range(3):
            assert q(i, j, j, j) == (Fraction(-1, 8) if i == j else 0)


def test_nondegeneracy():
    """q_2 and q_4 are nondegenerate; the zero polynomial is not."""
    assert is_nondegenerate(symtrace_poly(2))
    assert is_nondegenerate(symtrace_poly(4))
    assert not is_nondegenerate(symtrace_poly(3))


def test_invariance():
    """Symmetrized traces are ad-invariant; a perturbed table is not."""
    assert symtrace_poly(4).invariance_violation() is None
    bad = InvariantPoly(su2(), 2, {(0, 0): Fraction(1)})
    assert bad.invariance_violation() is not None
