"""Permutations, Koszul signs, unshuffles and the sign varsigma(k)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Sequence

from .errors import SizeMismatch


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}; ``images[i-1]`` is sigma(i)."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        img = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - 1] = b
        return cls(tuple(img))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def compose(self, other: Permutation) -> Permutation:
        """``self.compose(other)(i) == self(other(i))``."""
        return Permutation(tuple(self(other(i)) for i in range(1, other.size + 1)))

    def inverse(self) -> Permutation:
        inv = [0] * self.size
        for i, s in enumerate(self.images, start=1):
            inv[s - 1] = i
        return Permutation(tuple(inv))

    def sign(self) -> int:
        return _inversion_sign(self.images)

    def permute(self, seq: Sequence) -> tuple:
        """Return ``(seq[sigma(1)], ..., seq[sigma(n)])``."""
        return tuple(seq[s - 1] for s in self.images)

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(1, self.size + 1):
            if start in seen or self(start) == start:
                seen.add(start)
                continue
            cyc, i = [], start
            while i not in seen:
                seen.add(i)
                cyc.append(i)
                i = self(i)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        return "".join("(" + "".join(map(str, c)) + ")" for c in cyc) or "()"


def _inversion_sign(seq: Sequence[int]) -> int:
    s = 1
    n = len(seq)
    for a in range(n):
        for b in range(a + 1, n):
            if seq[a] > seq[b]:
                s = -s
    return s


def koszul_sign(sigma: Permutation, degrees: Sequence[int]) -> int:
    """epsilon(sigma; x_1..x_n), defined by x_1...x_n = eps * x_sigma(1)...x_sigma(n).

    Only the graded sign; (-1)^sigma is not included.
    """
    if len(degrees) != sigma.size:
        raise SizeMismatch(f"{len(degrees)} degrees for a permutation of {sigma.size}")
    img = sigma.images
    s = 1
    for a in range(len(img)):
        for b in range(a + 1, len(img)):
            if img[a] > img[b] and degrees[img[a] - 1] % 2 and degrees[img[b] - 1] % 2:
                s = -s
    return s


def sort_sign(keys: Sequence, degrees: Sequence[int] | None = None) -> tuple[tuple, int]:
    """Stable sort of ``keys``; returns (sorted keys, sign of the reordering).

    With ``degrees`` the sign is the Koszul sign times nothing else (graded
    commutative reordering); without, it is the ordinary permutation sign.
    """
    order = sorted(range(len(keys)), key=lambda i: keys[i])
    s = 1
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if order[a] > order[b]:
                if degrees is None:
                    s = -s
                elif degrees[order[a]] % 2 and degrees[order[b]] % 2:
                    s = -s
    return tuple(keys[i] for i in order), s


def unshuffles(block_sizes: Sequence[int]) -> list[Permutation]:
    """All permutations ascending inside each consecutive block."""
    if any(b < 1 for b in block_sizes):
        raise ValueError("block sizes must be positive")
    n = sum(block_sizes)
    out: list[Permutation] = []

    def rec(remaining: tuple[int, ...], blocks: Sequence[int], acc: list[int]):
        if not blocks:
            out.append(Permutation(tuple(acc)))
            return
        for chosen in itertools.combinations(remaining, blocks[0]):
            rest = tuple(x for x in remaining if x not in chosen)
            rec(rest, blocks[1:], acc + list(chosen))

    rec(tuple(range(1, n + 1)), list(block_sizes), [])
    return out


def unshuffle_splits(n: int, p: int) -> list[tuple[tuple[int, ...], tuple[int, ...], int]]:
    """(p, n-p) unshuffles as 0-based index blocks with their ordinary sign."""
    out = []
    for first in itertools.combinations(range(n), p):
        rest = tuple(i for i in range(n) if i not in first)
        out.append((first, rest, _inversion_sign(first + rest)))
    return out


def varsigma(k: int) -> int:
    """The sign -(-1)^(k(k+1)/2)."""
    if k < 1:
        raise ValueError("varsigma is defined for k >= 1")
    return -1 if (k * (k + 1) // 2) % 2 == 0 else 1


def alt_k(table: dict[tuple[int, ...], object], k: int, dim: int) -> dict[tuple[int, ...], object]:
    """Ungraded skew-symmetrization (1/k!) sum_sigma (-1)^sigma T(x_sigma).

    ``table`` maps every k-tuple over range(dim) (missing keys read as zero)
    to a value supporting + and scalar *. The result is keyed the same way.
    """
    perms = list(itertools.permutations(range(k)))
    signs = [_inversion_sign(p) for p in perms]
    scale = Fraction(1, factorial(k))
    out: dict[tuple[int, ...], object] = {}
    for key in itertools.product(range(dim), repeat=k):
        acc = None
        for p, s in zip(perms, signs):
            v = table.get(tuple(key[i] for i in p))
            if v is None:
                continue
            term = v * s
            acc = term if acc is None else acc + term
        if acc is not None:
            val = acc * scale
            if not _is_zero(val):
                out[key] = val
    return out


def alternate(func: Callable[[tuple[int, ...]], object], key: tuple[int, ...], zero):
    """Evaluate Alt_k(func) at one basis tuple."""
    k = len(key)
    acc = zero
    for p in itertools.permutations(range(k)):
        acc = acc + func(tuple(key[i] for i in p)) * _inversion_sign(p)
    return acc * Fraction(1, factorial(k))


def _is_zero(v) -> bool:
    if hasattr(v, "is_zero"):
        return v.is_zero()
    return v == 0


def compositions(n: int, parts: int) -> Iterable[tuple[int, ...]]:
    """Ordered tuples of ``parts`` positive integers summing to n."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    for first in range(1, n - parts + 2):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest
