from __future__ import annotations

from fractions import Fraction

import pytest

from plectic.equivariant import CartanCochain, check_extension
from plectic.errors import UnsupportedN
from plectic.forms import PolyForm, exterior_d
from plectic.levelset import LevelSetChart, sphere_points, stereographic_point
from plectic.linalg import rank
from plectic.moment import moment_from_extension
from plectic.parser import parse_expression
from plectic.sphere import sphere_two_step


def test_stereographic_points_lie_on_sphere():
    """Rational points land exactly on the unit sphere."""
    for p in sphere_points(3, 20, seed=5):
        assert sum(x * x for x in p) == 1
    assert stereographic_point([Fraction(0), Fraction(0)]) == (0, 0, -1)


def test_frames_are_full_and_tangent():
    """Each sample carries n independent vectors orthogonal to the normal."""
    ls = LevelSetChart.sphere(4, count=20)
    assert len(ls.sample_points) == 20
    for p, frame in zip(ls.sample_points, ls.tangent_frames):
        assert len(frame) == 4
        for v in frame:
            assert sum(a * b for a, b in zip(p, v)) == 0
        assert rank([list(v) for v in frame]) == 4


def test_levelset_detects_nonzero_forms():
    """x1 dx1 + x2 dx2 + x3 dx3 vanishes on S^2; dx1 does not."""
    ls = LevelSetChart.sphere(2)
    radial = parse_expression("x1 dx1 + x2 dx2 + x3 dx3", ls.ambient)
    assert ls.first_failure(radial) is None
    assert ls.first_failure(parse_expression("dx1", ls.ambient)) is not None


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_sphere_extension_equations(n):
    """omega + P + Q passes every cocycle and invariance condition at 20 points."""
    data = sphere_two_step(n, count=20)
    rep = check_extension(data.cochain, data.action)
    assert rep.ok, str(rep)
    assert data.cochain.top == (2 if n >= 4 else 1)


@pytest.mark.parametrize("n", [1, 6])
def test_unsupported_dimensions(n):
    """Only 2 <= n <= 5 is provided."""
    with pytest.raises(UnsupportedN):
        sphere_two_step(n)


def test_perturbed_sphere_cochain_fails():
    """Scaling P1 alone breaks dP1 = iota omega."""
    data = sphere_two_step(3)
    c = data.cochain
    comps = {i: dict(t) for i, t in c.components.items()}
    key = next(iter(comps[1]))
    comps[1][key] = comps[1][key] * 2
    rep = check_extension(CartanCochain(c.algebra, c.chart, c.total_degree, comps), data.action)
    assert rep.condition("dP1 = iota omega").passed is False


def test_s2_moment_is_height_function():
    """On S^2 the rotation about the x3 axis has moment map x3 up to a constant."""
    data = sphere_two_step(2)
    m = moment_from_extension(data.cochain, data.action)
    x3 = data.levelset.ambient.var(2)
    diff = m.f(1)(0) - PolyForm.function(x3, data.levelset.ambient)
    assert data.levelset.first_failure(exterior_d(diff)) is None
