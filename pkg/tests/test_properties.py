from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from plectic.forms import Chart, exterior_d
from plectic.properties import PROPERTIES, random_form, run_property_suite


@pytest.mark.parametrize("name", list(PROPERTIES))
@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(rng=st.randoms(use_true_random=False))
def test_property(name, rng):
    """Each calculus identity holds on a random instance."""
    assert PROPERTIES[name](rng) is None


def test_suite_reports_counts():
    """The seeded suite runs every property and reports no failures."""
    outcomes = run_property_suite(count=20, seed=7)
    assert [o.name for o in outcomes] == list(PROPERTIES)
    assert all(o.ok and o.instances == 20 for o in outcomes)


def test_suite_is_reproducible():
    """The same seed draws the same instances."""
    a, b = random.Random("1:x"), random.Random("1:x")
    chart = Chart.standard(3)
    assert random_form(a, chart, 1) == random_form(b, chart, 1)
    assert exterior_d(exterior_d(random_form(a, chart, 1))).is_zero()


def test_broken_differential_is_caught(monkeypatch):
    """Doubling d makes the homotopy formula fail, so the check has teeth."""
    import plectic.properties as props

    monkeypatch.setattr(props, "exterior_d", lambda w: exterior_d(w) * 2)
    rng = random.Random(0)
    assert any(props.check_homotopy(rng) is not None for _ in range(10))
