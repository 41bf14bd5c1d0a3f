from __future__ import annotations

import pytest

from plectic.coalgebra import (check_square_zero, codifferential_from_brackets, reduced_diagonal,
                               reduced_diagonal_explicit, shifted_degrees, words)
from plectic.crosscheck import heisenberg_dataset, random_datasets, run_crosscheck
from plectic.lie import killing_3cocycle, su2
from plectic.linfty import central_extension

DATASETS = random_datasets(12)


@pytest.mark.parametrize("ds", DATASETS, ids=[d.label for d in DATASETS])
def test_component_equations_match_chain_map(ds):
    """Both formulations accept or reject each morphism together."""
    res = run_crosscheck(ds)
    assert res.agree, (res.component_failure, res.coalgebra_failure)
    if ds.expect_pass is not None:
        assert res.components_ok == ds.expect_pass


def test_injected_failures_are_caught():
    """The corpus contains rejected morphisms, and both sides reject them."""
    results = [run_crosscheck(ds) for ds in DATASETS]
    caught = [r for r in results if not r.components_ok]
    assert caught and all(not r.coalgebra_ok for r in caught)


def test_heisenberg_dataset_passes():
    """f_2(e1, e2) = -u makes the abelian inclusion a morphism."""
    res = run_crosscheck(heisenberg_dataset())
    assert res.components_ok and res.coalgebra_ok


def test_codifferential_squares_to_zero():
    """The string Lie 2-algebra gives Q^2 = 0 on words up to length 4."""
    g = su2()
    ext = central_extension(g, killing_3cocycle(g), 2)
    assert check_square_zero(codifferential_from_brackets(ext.table), 4).ok


def test_diagonal_matches_explicit_sum():
    """The iterated reduced coproduct equals the sum over unshuffles."""
    sdeg = shifted_degrees((0, 0, -1))
    for length in (2, 3):
        for w in words(sdeg, length):
            for p in range(2, length + 1):
                assert reduced_diagonal(w, p, sdeg) == reduced_diagonal_explicit(w, p, sdeg)
