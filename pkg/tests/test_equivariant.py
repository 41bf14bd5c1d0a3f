from __future__ import annotations

import random
from fractions import Fraction

import pytest

from plectic.equivariant import (ActionData, CartanCochain, TotalCochain, cartan_dG, change_of_basis,
                                 check_extension, extension_from_exact, product_extension, total_differential)
from plectic.errors import MorphismCheckFailed, NotInvariant
from plectic.forms import Chart, PolyForm, PolyMultiVec
from plectic.lie import CECochain, so
from plectic.parser import parse_expression
from plectic.properties import random_form
from plectic.scenarios import build_sorn


def test_fundamental_field_sign():
    """v_x = -phi(x) p: the generator of so(2) gives x2 @x1 - x1 @x2."""
    s = build_sorn(2)
    assert s.action.fields[0] == parse_expression("x2 @x1 - x1 @x2", s.action.chart)


def test_fields_form_a_lie_morphism():
    """[v_x, v_y] = v_[x,y] is enforced; a wrong sign is rejected."""
    s = build_sorn(3)
    assert s.action.morphism_violation() is None
    flipped = (-s.action.fields[0],) + s.action.fields[1:]
    with pytest.raises(MorphismCheckFailed):
        ActionData(s.algebra, s.action.manifold, flipped)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sorn_extension_is_a_cocycle(n):
    """The extension of the volume form passes every condition and d_G vanishes."""
    s = build_sorn(n)
    assert check_extension(s.cartan, s.action).ok
    dg = cartan_dG(s.cartan, s.action)
    assert all(v.is_zero() for t in dg.components.values() for v in t.values())


def test_perturbed_extension_names_the_condition():
    """Doubling P1 breaks dP1 = iota omega."""
    s = build_sorn(3)
    comps = dict(s.cartan.components)
    comps[1] = {k: v * 2 for k, v in comps[1].items()}
    bad = CartanCochain(s.algebra, s.cartan.chart, s.cartan.total_degree, comps)
    rep = check_extension(bad, s.action)
    assert not rep.ok
    assert rep.first_failure().name == "dP1 = iota omega"


def test_non_invariant_primitive_rejected():
    """extension_from_exact requires L_v alpha = 0."""
    s = build_sorn(2)
    alpha = parse_expression("x1 dx2", s.action.chart)
    with pytest.raises(NotInvariant):
        extension_from_exact(alpha, s.action)


def test_product_extension():
    """The product of two planar rotations gives a 2-step cocycle on R^4."""
    a, b = build_sorn(2), build_sorn(2)
    c, action = product_extension(a.cartan, a.action, b.cartan, b.action)
    assert action.algebra.dim == 2 and action.chart.dim == 4
    assert c.top == 2
    assert check_extension(c, action).ok


def test_change_of_basis_preserves_cocycle():
    """Re-expressing sorn-3 in a new basis keeps the cocycle conditions."""
    s = build_sorn(3)
    A = [[1, 1, 0], [0, 2, 0], [Fraction(1, 2), 0, 1]]
    c, action = change_of_basis(s.cartan, s.action, A)
    assert check_extension(c, action).ok
    assert c.value(1, (0,)) == s.cartan.value(1, (0,)) + s.cartan.value(1, (1,))
    with pytest.raises(ValueError):
        change_of_basis(s.cartan, s.action, [[1, 0, 0], [2, 0, 0], [0, 0, 1]])


def test_total_differential_squares_to_zero():
    """(delta + (-1)^k d)^2 = 0 on random bigraded cochains."""
    g = so(3)
    chart = Chart.standard(3)
    rng = random.Random(3)
    for _ in range(5):
        comps = {}
        for k in range(0, 3):
            deg = 2 - k
            comps[k] = CECochain(g, k, {key: random_form(rng, chart, deg)
                                        for key in [tuple(range(k))]}, PolyForm.zero(chart, deg))
        f = TotalCochain(g, chart, 2, comps)
        dd = total_differential(total_differential(f))
        assert all(c.is_zero() for c in dd.components.values())


def test_action_needs_one_field_per_generator():
    """A field count mismatch is rejected."""
    chart = Chart.standard(2)
    with pytest.raises(MorphismCheckFailed):
        ActionData(so(3), chart, (PolyMultiVec.basis(chart, [0], 1),))
