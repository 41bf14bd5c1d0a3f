from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import comb

import pytest
import sympy

from plectic.errors import NotACocycle, NotPerfect
from plectic.lie import (CECochain, LinearAction, StructLieAlgebra, abelian, adjoint_action, ce_differential,
                         ce_matrix, heisenberg3, is_ce_coboundary, killing_3cocycle, sl2, so, so_matrix, so_pairs,
                         solvable4, solve_perfect_decomposition, su2)

ALGEBRAS = [su2, sl2, heisenberg3, solvable4, lambda: so(4), lambda: abelian(3)]


def betti(g: StructLieAlgebra) -> list[int]:
    """Cohomology dimensions from sympy ranks of the CE matrices."""
    ranks = [0]
    for k in range(g.dim):
        mat, _, _ = ce_matrix(g, k)
        ranks.append(sympy.Matrix(mat).rank() if mat and mat[0] else 0)
    ranks.append(0)
    return [comb(g.dim, k) - ranks[k + 1] - ranks[k] for k in range(g.dim + 1)]


@pytest.mark.parametrize("make", ALGEBRAS)
def test_jacobi_holds(make):
    """The built-in algebras satisfy the Jacobi identity."""
    assert make().jacobi_violation() is None


def test_jacobi_violation_detected():
    """A table breaking Jacobi is rejected unless unchecked."""
    br = {(0, 1): (0, 0, 1), (0, 2): (0, 0, 1), (1, 2): (1, 0, 0)}
    with pytest.raises(ValueError):
        StructLieAlgebra(("a", "b", "c"), br)
    assert StructLieAlgebra(("a", "b", "c"), br, check=False).jacobi_violation() is not None


@pytest.mark.parametrize("n", [3, 4])
def test_so_structure_constants_are_matrix_commutators(n):
    """so(n) brackets agree with sympy matrix commutators of the basis matrices."""
    g = so(n)
    mats = [sympy.Matrix(so_matrix(n, i, j)) for i, j in so_pairs(n)]
    assert g.names[:2] == ("e12", "e13")
    for a, b in itertools.combinations(range(g.dim), 2):
        want = mats[a] * mats[b] - mats[b] * mats[a]
        got = sum((c * m for c, m in zip(g.bracket(g.basis(a), g.basis(b)), mats)), sympy.zeros(n))
        assert got == want


def test_su2_brackets():
    """[e1, e2] = e3 cyclically."""
    g = su2()
    assert g.bracket(g.basis(0), g.basis(1)) == (0, 0, 1)
    assert g.bracket(g.basis(2), g.basis(0)) == (0, 1, 0)


@pytest.mark.parametrize("make, expected", [
    (su2, [1, 0, 0, 1]),
    (sl2, [1, 0, 0, 1]),
    (heisenberg3, [1, 2, 2, 1]),
    (lambda: abelian(3), [1, 3, 3, 1]),
    (solvable4, [1, 1, 0, 0, 0]),
])
def test_cohomology_dimensions(make, expected):
    """CE cohomology dimensions of small algebras."""
    assert betti(make()) == expected


@pytest.mark.parametrize("make", ALGEBRAS)
def test_delta_squared_zero(make):
    """delta^2 = 0 on every basis cochain."""
    g = make()
    for k in range(g.dim - 1):
        for key in itertools.combinations(range(g.dim), k):
            assert ce_differential(ce_differential(CECochain(g, k, {key: Fraction(1)}))).is_zero()


def test_coboundary_primitive_solves():
    """Random exact cochains get a primitive b with delta b = c."""
    rng = random.Random(3)
    for make in ALGEBRAS:
        g = make()
        for k in range(1, g.dim):
            b = CECochain(g, k, {key: Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                                 for key in itertools.combinations(range(g.dim), k)})
            c = ce_differential(b)
            prim = is_ce_coboundary(c)
            assert prim is not None and ce_differential(prim) == c


def test_killing_cocycle_nontrivial():
    """<x, [y, z]> on su(2) is a cocycle with c(e1,e2,e3) = 1 that is not exact."""
    c = killing_3cocycle(su2())
    assert c.components == {(0, 1, 2): Fraction(1)}
    assert ce_differential(c).is_zero()
    assert is_ce_coboundary(c) is None


def test_non_cocycle_rejected():
    """is_ce_coboundary insists on a cocycle."""
    g = heisenberg3()
    with pytest.raises(NotACocycle):
        is_ce_coboundary(CECochain(g, 1, {(2,): Fraction(1)}))


def test_cochain_skew_symmetry():
    """Evaluating on swapped arguments flips the sign."""
    c = CECochain(su2(), 2, {(0, 1): Fraction(5)})
    assert c(1, 0) == -5 and c(0, 0) == 0


def test_perfect_decomposition():
    """Every x in su(2) is a sum of brackets; heisenberg is not perfect."""
    g = su2()
    x = (Fraction(1), Fraction(-2), Fraction(3, 2))
    total = [Fraction(0)] * 3
    for a, b in solve_perfect_decomposition(g, x):
        total = [s + t for s, t in zip(total, g.bracket(a, b))]
    assert tuple(total) == x
    with pytest.raises(NotPerfect):
        solve_perfect_decomposition(heisenberg3(), (0, 0, 1))


def test_linear_actions_are_morphisms():
    """Adjoint and defining so(n) representations respect brackets."""
    for make in ALGEBRAS:
        assert adjoint_action(make()).morphism_violation() is None
    act = LinearAction.of(so(4), [so_matrix(4, i, j) for i, j in so_pairs(4)])
    assert act.morphism_violation() is None
