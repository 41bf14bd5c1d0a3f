from __future__ import annotations

from fractions import Fraction

from plectic.cartan3 import cartan3_moment, cartan_3form, check_cartan3, f2_closed_form
from plectic.equivariant import check_extension
from plectic.moment import verify_moment

DATA = cartan_3form(count=20)


def test_sample_points_on_s3():
    """Twenty rational points with |g| = 1."""
    pts = DATA.levelset.sample_points
    assert len(pts) >= 20
    assert all(sum(Fraction(c) ** 2 for c in p) == 1 for p in pts)


def test_cartan_form_extension():
    """omega - mu is an equivariant cocycle for the conjugation action."""
    assert check_extension(DATA.extension, DATA.action).ok


def test_moment_map_and_f2_closed_form():
    """f2(x, y)(g) = 1/2 <(Ad_g - Ad_g^-1) x, y> at every sample point."""
    m = cartan3_moment(DATA)
    assert verify_moment(m).ok
    assert check_cartan3(DATA, m).ok


def test_f2_closed_form_hand_values():
    """g = 3/5 + 4/5 i rotates by an angle with sin = 24/25 about i."""
    g = (Fraction(3, 5), Fraction(4, 5), 0, 0)
    assert f2_closed_form(g, 1, 2) == Fraction(6, 25)
    assert f2_closed_form(g, 2, 1) == Fraction(-6, 25)
    assert f2_closed_form(g, 0, 1) == 0
    assert f2_closed_form((1, 0, 0, 0), 1, 2) == 0


def test_wrong_f2_detected():
    """Scaling f2 breaks the closed-form comparison."""
    m = cartan3_moment(DATA)
    rep = check_cartan3(DATA, m.replace(2, m.f(2) * 2))
    assert not rep.ok
    assert rep.first_failure().name.startswith("f2")
