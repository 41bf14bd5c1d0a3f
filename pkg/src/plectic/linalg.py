"""Exact Gaussian elimination over the rationals."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import SizeMismatch
from .poly import scalar


@dataclass(frozen=True)
class LinearSystem:
    matrix: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]
    ncols: int

    @classmethod
    def of(cls, matrix: Sequence[Sequence], rhs: Sequence, ncols: int | None = None) -> LinearSystem:
        rows = tuple(tuple(scalar(x) for x in r) for r in matrix)
        if ncols is None:
            if not rows:
                raise SizeMismatch("ncols required for an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise SizeMismatch("ragged matrix")
        if len(rhs) != len(rows):
            raise SizeMismatch(f"{len(rows)} rows but rhs of length {len(rhs)}")
        return cls(rows, tuple(scalar(x) for x in rhs), ncols)


@dataclass(frozen=True)
class Solution:
    """x = particular + span(nullspace)."""

    particular: tuple[Fraction, ...]
    nullspace: tuple[tuple[Fraction, ...], ...] = field(default=())


@dataclass(frozen=True)
class Inconsistent:
    """``certificate`` y satisfies y A = 0 and y b != 0."""

    certificate: tuple[Fraction, ...]


def rref(rows: Sequence[Sequence[Fraction]], ncols: int, pivot_order: Sequence[int] | None = None):
    """Reduced row echelon form.

    Returns (reduced rows, pivot columns, transform) where transform[i] is the
    combination of original rows giving reduced row i.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    tr = [[Fraction(int(i == j)) for j in range(nrows)] for i in range(nrows)]
    cols = list(range(ncols)) if pivot_order is None else list(pivot_order)
    pivots: list[int] = []
    r = 0
    for c in cols:
        if r >= nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        tr[r], tr[piv] = tr[piv], tr[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        tr[r] = [x * inv for x in tr[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b if b else a for a, b in zip(m[i], m[r])]
                tr[i] = [a - f * b if b else a for a, b in zip(tr[i], tr[r])]
        pivots.append(c)
        r += 1
    return m, pivots, tr


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    rows = [[scalar(x) for x in r] for r in rows]
    if not rows:
        return 0
    return len(rref(rows, ncols if ncols is not None else len(rows[0]))[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of {x : A x = 0}, one vector per free column (in increasing order)."""
    rows = [[scalar(x) for x in r] for r in rows]
    red, pivots, _ = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(tuple(v))
    return basis


def solve_linear(system: LinearSystem) -> Solution | Inconsistent:
    n = system.ncols
    rows = [list(r) + [b] for r, b in zip(system.matrix, system.rhs)]
    red, pivots, tr = rref([r[:n] + [r[n]] for r in rows], n + 1, pivot_order=range(n))
    for i, row in enumerate(red):
        if all(x == 0 for x in row[:n]) and row[n] != 0:
            return Inconsistent(tuple(tr[i]))
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = red[i][n]
    ns = nullspace(system.matrix, n) if system.matrix else [
        tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
    ]
    return Solution(tuple(x), tuple(ns))


def mat_vec(rows: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in rows]


def inverse(rows: Sequence[Sequence]) -> list[list[Fraction]] | None:
    """Inverse of a square matrix, or None when singular."""
    n = len(rows)
    aug = [[scalar(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    red, pivots, _ = rref(aug, 2 * n, pivot_order=range(n))
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in red]
