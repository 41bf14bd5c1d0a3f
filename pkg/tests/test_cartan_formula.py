from __future__ import annotations

import pytest

from plectic.cartan_formula import (DISPLAYS, audit_dataset, coefficient_table, display_coefficients_match,
                                    display_value, formula_value, standard_datasets)
from plectic.equivariant import CartanCochain

DATASETS = standard_datasets(12)


def test_display_coefficients():
    """The closed-form coefficients are the leading coefficients of the expansions."""
    assert display_coefficients_match()
    assert coefficient_table()[(5, 2)] == 3


@pytest.mark.parametrize("ds", DATASETS, ids=[d.label for d in DATASETS])
def test_audit_agrees(ds):
    """Closed formula and expansions agree for k = 1..5."""
    res = audit_dataset(ds)
    assert res.ok, res.witness
    assert set(res.agree) == {1, 2, 3, 4, 5}


def test_printed_f5_display_disagrees_on_so4():
    """With Alt_4 on the middle k = 5 term the expansion is wrong for so(4)."""
    flags = [audit_dataset(ds).printed_f5_agrees for ds in DATASETS if ds.label.startswith("so4")]
    assert flags and not any(flags)


def test_perturbed_coefficient_detected():
    """Changing one coefficient of an expansion is caught."""
    ds = next(d for d in DATASETS if d.label.startswith("so4"))
    c, action = ds.cochain, ds.action
    key = (0, 1, 2, 3)
    wrong = [(coeff * (2 if i == 2 else 1), i, r) for coeff, i, r in DISPLAYS[4]]
    assert formula_value(c, action, 4, key) == display_value(c, action, 4, key, DISPLAYS[4])
    assert formula_value(c, action, 4, key) != display_value(c, action, 4, key, wrong)


def test_perturbed_cochain_detected_by_linearity():
    """Both sides are linear in P, so scaling P2 alone rescales only its contribution."""
    ds = DATASETS[0]
    c = ds.cochain
    comps = {i: dict(t) for i, t in c.components.items()}
    comps[2] = {k: v * 3 for k, v in comps[2].items()}
    c3 = CartanCochain(c.algebra, c.chart, c.total_degree, comps)
    key = (0, 1, 2)
    diff = formula_value(c3, ds.action, 3, key) - formula_value(c, ds.action, 3, key)
    only2 = CartanCochain(c.algebra, c.chart, c.total_degree, {0: c.components[0], 2: c.components[2]})
    assert diff == formula_value(only2, ds.action, 3, key) * 2
