from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
import sympy

from plectic.cartan3 import left_translation_obstruction
from plectic.combinatorics import varsigma
from plectic.equivariant import ActionData
from plectic.errors import NoPrimitive, NotClosed, Obstructed
from plectic.forms import Chart, PolyForm, PolyMultiVec, interior_sequence, volume_form
from plectic.lie import CECochain, abelian
from plectic.linfty import check_ext_morphism, check_generalized_jacobi
from plectic.moment import (cartan_coefficient, check_2plectic_conditions, check_equivariance,
                            check_obstruction_primitive, construct_unobstructed, extension_lift,
                            hamiltonian_primitives, moment_from_cartan, moment_from_extension, obstruction,
                            verify_moment)
from plectic.scenarios import build_sorn, noteq_data
from plectic.sphere import sphere_two_step


def _translations(d: int):
    chart = Chart.standard(d)
    action = ActionData(abelian(d), chart, [PolyMultiVec.basis(chart, [i], 1) for i in range(d)])
    return action, volume_form(chart)


def test_classical_moment_map_sorn2():
    """SO(2) on the plane: f1(e12) = -(x1^2 + x2^2)/2."""
    s = build_sorn(2)
    m = moment_from_extension(s.cartan, s.action)
    x1, x2 = s.action.chart.coords()
    assert m.f(1)(0) == PolyForm.function((x1 ** 2 + x2 ** 2) * Fraction(-1, 2), s.action.chart)


def _linear_oracle(s, k, key, point):
    """-varsigma(k)/(n+1) det[E; w_1..w_k; e_I] with w = phi(xi) p, via sympy, for each index set I."""
    n = s.omega.degree - 1
    dim = s.action.chart.dim
    p = [sympy.Rational(x.numerator, x.denominator) for x in point]
    rows = [p]
    for a in key:
        v = s.action.fields[a]
        # w_a = -v_a at p
        vals = [v.coefficient(i).evaluate(point) for i in range(dim)]
        rows.append([-sympy.Rational(c.numerator, c.denominator) for c in vals])
    out = {}
    for idx in itertools.combinations(range(dim), n - k):
        mat = rows + [[1 if j == i else 0 for j in range(dim)] for i in idx]
        val = sympy.Matrix(mat).det() * sympy.Rational(-varsigma(k), n + 1)
        if val:
            out[idx] = Fraction(int(val.p), int(val.q))
    return out


@pytest.mark.parametrize("n", [3, 4])
def test_linear_action_formula_sympy(n):
    """Every component of the sorn moment map matches the determinant formula at rational points."""
    s = build_sorn(n)
    m = moment_from_extension(s.cartan, s.action)
    for point in [(Fraction(1), Fraction(-2, 3), Fraction(1, 2), Fraction(3))[:n],
                  (Fraction(-1, 4), Fraction(5), Fraction(2), Fraction(-1))[:n]]:
        for k in range(1, n):
            for key in itertools.combinations(range(s.algebra.dim), k):
                got = {i: c for i, c in m.f(k)(*key).evaluate(point).items() if c}
                assert got == _linear_oracle(s, k, key, point)


def test_sorn3_f2_value():
    """f2(e12, e13) = -x1 (x1^2 + x2^2 + x3^2) / 3."""
    s = build_sorn(3)
    m = moment_from_extension(s.cartan, s.action)
    x1, x2, x3 = s.action.chart.coords()
    assert m.f(2)(0, 1).as_function() == x1 * (x1 ** 2 + x2 ** 2 + x3 ** 2) * Fraction(-1, 3)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sorn_verifies(n):
    """The extension output passes every component equation and is equivariant."""
    s = build_sorn(n)
    m = moment_from_extension(s.cartan, s.action)
    assert verify_moment(m).ok
    assert check_equivariance(m).ok


def test_one_step_closed_form():
    """f_k = varsigma(k) iota(v_1..v_{k-1}) mu(x_k) for a 1-step extension."""
    s = build_sorn(4)
    m = moment_from_extension(s.cartan, s.action)
    for k in range(1, 4):
        for key in itertools.combinations(range(s.algebra.dim), k):
            mu = -s.cartan.value(1, (key[-1],))
            want = interior_sequence([s.action.fields[a] for a in key[:-1]], mu) * varsigma(k)
            assert m.f(k)(*key) == want


def test_cartan_and_extension_agree_on_sorn3():
    """The general formula reproduces the 1-step construction."""
    s = build_sorn(3)
    a = moment_from_cartan(s.cartan, s.action)
    b = moment_from_extension(s.cartan, s.action)
    assert all(a.f(k) == b.f(k) for k in (1, 2))


def test_cartan_coefficients():
    """c_{k,i} = (-1)^i varsigma(k) i! (k-i)! / (2^{i-1} (k-2i+1)!)."""
    frozen = {(1, 1): -1, (2, 1): -1, (3, 1): 1, (3, 2): -1, (4, 1): 1, (4, 2): -2, (5, 1): -1, (5, 2): 3,
              (5, 3): -3}
    for (k, i), v in frozen.items():
        assert cartan_coefficient(k, i) == v


def test_perturbed_moment_fails():
    """Doubling f2 breaks the top equation; the explicit 2-plectic check agrees."""
    s = build_sorn(3)
    m = moment_from_extension(s.cartan, s.action)
    bad = m.replace(2, m.f(2) * 2)
    rep = verify_moment(bad)
    assert not rep.ok and rep.first_failure().name.startswith("main_eq")
    assert not check_2plectic_conditions(bad).ok
    assert check_2plectic_conditions(m).ok


def test_translations_obstruction():
    """Translations of (R^2, area) have obstruction c(e1, e2) = -1 at every point."""
    action, omega = _translations(2)
    for p in [(0, 0), (1, 2), (Fraction(-1, 3), 5)]:
        c = obstruction(action, omega, p)
        assert c.cocycle.components == {(0, 1): Fraction(-1)}
        assert c.verdict == "NonTrivial"
    with pytest.raises(Obstructed) as info:
        construct_unobstructed(action, omega, hamiltonian_primitives(action, omega), (0, 0))
    assert info.value.obstruction.cocycle.components == {(0, 1): Fraction(-1)}


def test_heisenberg_obstruction():
    """Translations of (R^3, volume): c(e1, e2, e3) = -1."""
    action, omega = _translations(3)
    assert obstruction(action, omega, (1, 1, 1)).cocycle.components == {(0, 1, 2): Fraction(-1)}


def test_left_translation_obstruction_on_s3():
    """Left translations on S^3 with the Cartan 3-form: c(e1, e2, e3) = 1/8, not exact."""
    for c in left_translation_obstruction():
        assert c.cocycle.components == {(0, 1, 2): Fraction(1, 8)}
        assert c.verdict == "NonTrivial"


def test_construct_unobstructed_sorn3():
    """With phi from the extension the construction keeps f1 = phi and verifies."""
    s = build_sorn(3)
    for p in s.points:
        assert obstruction(s.action, s.omega, p).trivial
    m = construct_unobstructed(s.action, s.omega, s.phi, s.points[2])
    assert m.f(1) == s.phi
    assert verify_moment(m).ok
    assert check_obstruction_primitive(m, s.points).ok


def test_construct_rejects_non_hamiltonian_phi():
    """phi must satisfy d phi(x) = -iota_{v_x} omega."""
    s = build_sorn(2)
    bad = CECochain(s.algebra, 1, {(0,): PolyForm.function(s.action.chart.var(0), s.action.chart)})
    with pytest.raises(ValueError):
        construct_unobstructed(s.action, s.omega, bad, (0, 0))


def test_level_sets_have_no_primitives():
    """Construction needs a star-shaped chart."""
    data = sphere_two_step(2)
    with pytest.raises(NoPrimitive):
        hamiltonian_primitives(data.action, data.cochain.omega)


def test_non_closed_form_rejected():
    """A form that is not closed is refused."""
    chart = Chart.standard(2)
    action = ActionData(abelian(1), chart, [PolyMultiVec.basis(chart, [0], 1)])
    with pytest.raises(NotClosed):
        obstruction(action, PolyForm.basis(chart, [0], chart.var(1)), (0, 0))


@pytest.mark.parametrize("d", [2, 3])
def test_extension_lift(d):
    """The lift from the central extension by c_p is a morphism into the observables."""
    action, omega = _translations(d)
    ext, mor = extension_lift(action, omega, hamiltonian_primitives(action, omega), (0,) * d)
    assert check_generalized_jacobi(ext.table, ext.n + 2).ok
    rep = check_ext_morphism(mor)
    assert rep.ok, str(rep)


def test_noteq_modified_map():
    """The modified torus map is an equivariant moment map that fails the cocycle condition."""
    action, omega, base_ext, m = noteq_data()
    assert verify_moment(m).ok
    assert check_equivariance(m).ok
    base = moment_from_extension(base_ext, action)
    z = m.chart.var(2)
    assert m.f(1)(0) == PolyForm.basis(m.chart, [1], z) + PolyForm.basis(m.chart, [0], 1)
    assert m.f(1)(1) == PolyForm.basis(m.chart, [0], -z) + PolyForm.basis(m.chart, [1], 1)
    assert m.f(2)(0, 1).as_function() == base.f(2)(0, 1).as_function() + Fraction(1, 2)


def test_sphere_moment_maps_n4():
    """The 2-step sphere cochain yields a verified moment map on S^4."""
    data = sphere_two_step(4)
    m = moment_from_cartan(data.cochain, data.action)
    assert verify_moment(m).ok
    assert check_obstruction_primitive(m, data.levelset.sample_points[:3]).ok
