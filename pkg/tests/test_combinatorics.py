from __future__ import annotations

from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plectic.combinatorics import (Permutation, alt_k, koszul_sign, sort_sign, unshuffle_splits, unshuffles,
                                   varsigma)
from plectic.errors import SizeMismatch


def test_varsigma_values():
    """varsigma(k) for k = 1..6."""
    assert [varsigma(k) for k in range(1, 7)] == [1, 1, -1, -1, 1, 1]
    with pytest.raises(ValueError):
        varsigma(0)


def test_unshuffle_count_is_multinomial():
    """Counts match n! / prod(b!)."""
    for blocks in [(1, 1), (2, 1), (1, 2, 1), (2, 2), (3, 1, 2)]:
        expected = factorial(sum(blocks))
        for b in blocks:
            expected //= factorial(b)
        assert len(unshuffles(blocks)) == expected


def test_unshuffles_ascend_within_blocks():
    """Every unshuffle is increasing inside each block."""
    blocks = (2, 1, 2)
    for sigma in unshuffles(blocks):
        start = 1
        for b in blocks:
            part = [sigma(i) for i in range(start, start + b)]
            assert part == sorted(part)
            start += b


def test_unshuffle_splits_signs():
    """(1,2)-unshuffles of three slots carry signs +, -, +."""
    assert [(a, b, s) for a, b, s in unshuffle_splits(3, 1)] == [((0,), (1, 2), 1), ((1,), (0, 2), -1),
                                                                ((2,), (0, 1), 1)]


def test_koszul_sign_examples():
    """Swapping two odd elements gives -1; an even one commutes."""
    swap = Permutation((2, 1))
    assert koszul_sign(swap, (1, 1)) == -1
    assert koszul_sign(swap, (1, 2)) == 1
    assert koszul_sign(Permutation.from_cycles(3, [(1, 2, 3)]), (1, 1, 1)) == 1
    with pytest.raises(SizeMismatch):
        koszul_sign(swap, (1,))


def test_sort_sign():
    """Ordinary and graded reordering signs."""
    assert sort_sign((2, 1, 0)) == ((0, 1, 2), -1)
    assert sort_sign(("b", "a"), degrees=[2, 1]) == (("a", "b"), 1)


@settings(max_examples=200)
@given(st.permutations(list(range(1, 6))), st.permutations(list(range(1, 6))))
def test_sign_is_a_homomorphism(a, b):
    """sign(ab) = sign(a) sign(b) and sign(a^-1) = sign(a)."""
    p, q = Permutation(tuple(a)), Permutation(tuple(b))
    assert p.compose(q).sign() == p.sign() * q.sign()
    assert p.inverse().sign() == p.sign()


@settings(max_examples=200)
@given(st.permutations(list(range(1, 5))), st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_koszul_sign_all_odd_is_permutation_sign(perm, degrees):
    """For all-odd degrees the Koszul sign is the permutation sign; for all-even it is +1."""
    sigma = Permutation(tuple(perm))
    assert koszul_sign(sigma, [1, 1, 1, 1]) == sigma.sign()
    assert koszul_sign(sigma, [0, 2, 2, 0]) == 1
    swap = Permutation((2, 1, 3, 4))
    odd = degrees[0] % 2 and degrees[1] % 2
    assert koszul_sign(swap, degrees) == (-1 if odd else 1)


def test_alt_k_skew_symmetrizes():
    """Alt of the table T(e1, e2) = 1 is (e1 ^ e2) / 2."""
    out = alt_k({(0, 1): Fraction(1)}, 2, 2)
    assert out == {(0, 1): Fraction(1, 2), (1, 0): Fraction(-1, 2)}
    assert alt_k(out, 2, 2) == out
