from __future__ import annotations

from fractions import Fraction

import pytest

from plectic.crosscheck import r2, solvable3
from plectic.errors import CoboundaryMismatch, DegreeError, NotACocycle, PropertyPViolated
from plectic.lie import CECochain, abelian, ce_differential, killing_3cocycle, su2
from plectic.linfty import (BracketTable, GradedSpace, MorphismData, Vec, central_extension, check_ext_morphism,
                            check_generalized_jacobi, check_lie_to_linfty_morphism, cocycle_quasi_iso, lie_table,
                            strict_morphism)


def test_string_extension_jacobi():
    """The string Lie 2-algebra of su(2) satisfies Jacobi through arity 4."""
    g = su2()
    ext = central_extension(g, killing_3cocycle(g), 2)
    assert ext.table.space.degrees == (0, 0, 0, -1)
    assert check_generalized_jacobi(ext.table, 4).ok


def test_heisenberg_extension_jacobi():
    """R^2 extended by the area cocycle is the Heisenberg algebra."""
    g = abelian(2)
    ext = central_extension(g, CECochain(g, 2, {(0, 1): Fraction(-1)}), 1)
    assert ext.table.basis_bracket((0, 1)) == Vec.basis(2, -1)
    assert check_generalized_jacobi(ext.table, 3).ok


def test_non_cocycle_rejected():
    """A central extension needs delta c = 0."""
    g = solvable3()
    c = CECochain(g, 2, {(1, 2): Fraction(1)})
    assert not ce_differential(c).is_zero()
    with pytest.raises(NotACocycle):
        central_extension(g, c, 1)


def test_broken_table_detected():
    """Adding l_2(e1, r) = r to the string table breaks Jacobi."""
    g = su2()
    ext = central_extension(g, killing_3cocycle(g), 2)
    brackets = {k: dict(t) for k, t in ext.table.brackets.items()}
    brackets[2][(0, 3)] = Vec.basis(3)
    broken = BracketTable(ext.table.space, brackets)
    assert not check_generalized_jacobi(broken, 4).ok
    assert broken.property_p_violation() is not None


def test_degree_checked():
    """l_2 of two degree-0 elements cannot land in degree -1."""
    sp = GradedSpace(("a", "b", "r"), (0, 0, -1), 2)
    with pytest.raises(DegreeError):
        BracketTable(sp, {2: {(0, 1): Vec.basis(2)}})


def test_property_p():
    """The string table has property P; a morphism check refuses targets without it."""
    g = su2()
    ext = central_extension(g, killing_3cocycle(g), 2)
    assert ext.table.property_p_violation() is None
    sp = GradedSpace(("a", "r"), (0, -1), 2)
    bad = BracketTable(sp, {2: {(0, 1): Vec.basis(1)}})
    with pytest.raises(PropertyPViolated):
        check_lie_to_linfty_morphism(strict_morphism(abelian(1), bad, [Vec.basis(0)]))


def test_strict_inclusion_is_a_morphism():
    """The identity of su(2) into its Lie 1-algebra."""
    g = su2()
    m = strict_morphism(g, lie_table(g), [Vec.basis(a) for a in range(3)])
    assert check_lie_to_linfty_morphism(m).ok
    m = strict_morphism(g, lie_table(g), [Vec.basis(a, 2) for a in range(3)])
    assert not check_lie_to_linfty_morphism(m).ok


@pytest.mark.parametrize("n", [1, 2])
def test_cocycle_quasi_iso(n):
    """Cohomologous cocycles give quasi-isomorphic extensions with f_n = -b."""
    g = su2() if n == 2 else r2()
    c = killing_3cocycle(g) if n == 2 else CECochain(g, 2, {(0, 1): Fraction(1)})
    b = CECochain(g, n, {(1,) if n == 1 else (0, 1): Fraction(2, 3)})
    assert n == 2 or not ce_differential(b).is_zero()
    c2 = c + ce_differential(b)
    m = cocycle_quasi_iso(g, c, c2, b)
    assert check_ext_morphism(m).ok
    with pytest.raises(CoboundaryMismatch):
        cocycle_quasi_iso(g, c, c * 2, b)


def test_quasi_iso_sign_is_forced():
    """With f_1 = id + b r instead of id - b r the morphism equations fail."""
    g = r2()
    c = CECochain(g, 2, {(0, 1): Fraction(1)})
    b = CECochain(g, 1, {(1,): Fraction(2, 3)})
    m = cocycle_quasi_iso(g, c, c + ce_differential(b), b)
    r = g.dim
    flipped = CECochain(g, 1, {(0,): Vec.basis(0), (1,): Vec.basis(1) + Vec.basis(r, Fraction(2, 3))}, Vec())
    wrong = MorphismData(g, m.target, 1, {1: flipped}, central_image=m.central_image, cocycle=m.cocycle)
    assert not check_ext_morphism(wrong).ok
