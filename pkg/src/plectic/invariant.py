"""Invariant symmetric polynomials on a Lie algebra, e.g. symmetrized traces on su(2)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .linalg import rank
from .lie import StructLieAlgebra, su2

Complex = tuple[Fraction, Fraction]
CMatrix = tuple[tuple[Complex, ...], ...]


def _c(re, im=0) -> Complex:
    return (Fraction(re), Fraction(im))


def _cmul(a: Complex, b: Complex) -> Complex:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _cadd(a: Complex, b: Complex) -> Complex:
    return (a[0] + b[0], a[1] + b[1])


def cmat_mul(a: CMatrix, b: CMatrix) -> CMatrix:
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = _c(0)
            for k in range(n):
                acc = _cadd(acc, _cmul(a[i][k], b[k][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def real_trace(m: CMatrix) -> Fraction:
    return sum((m[i][i][0] for i in range(len(m))), Fraction(0))


def su2_matrices() -> list[CMatrix]:
    """e1 = 1/2 [[0,1],[-1,0]], e2 = 1/2 [[0,i],[i,0]], e3 = 1/2 [[i,0],[0,-i]]."""
    h = Fraction(1, 2)
    z = _c(0)
    e1 = ((z, (h, 0)), ((-h, 0), z))
    e2 = ((z, (0, h)), ((0, h), z))
    e3 = (((0, h), z), (z, (0, -h)))
    return [tuple(tuple((Fraction(a), Fraction(b)) for a, b in row) for row in m) for m in (e1, e2, e3)]


def multisets(dim: int, k: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations_with_replacement(range(dim), k))


@dataclass
class InvariantPoly:
    """Symmetric k-linear form keyed by sorted multisets of basis indices."""

    algebra: StructLieAlgebra
    degree: int
    table: Mapping[tuple[int, ...], Fraction]

    def __call__(self, *idx: int) -> Fraction:
        return self.table.get(tuple(sorted(idx)), Fraction(0))

    def evaluate(self, vectors: Sequence[Sequence]) -> Fraction:
        acc = Fraction(0)
        supports = [[(i, c) for i, c in enumerate(v) if c] for v in vectors]
        for combo in itertools.product(*supports):
            coef = Fraction(1)
            for _, c in combo:
                coef *= c
            acc += coef * self(*(i for i, _ in combo))
        return acc

    def is_zero(self) -> bool:
        return not any(self.table.values())

    def invariance_violation(self) -> tuple[int, tuple[int, ...], Fraction] | None:
        """First (y, x-tuple, value) with sum_i q(.., [y, x_i], ..) != 0."""
        g = self.algebra
        for y in range(g.dim):
            for xs in multisets(g.dim, self.degree):
                acc = Fraction(0)
                for pos, xi in enumerate(xs):
                    for m, c in g.bracket_terms(y, xi):
                        args = xs[:pos] + (m,) + xs[pos + 1:]
                        acc += c * self(*args)
                if acc:
                    return y, xs, acc
        return None


def symtrace_poly(k: int, matrices: Sequence[CMatrix] | None = None,
                  algebra: StructLieAlgebra | None = None) -> InvariantPoly:
    """q_k(x_1..x_k) = -(1/k!) sum_sigma Re Tr(x_sigma(1) ... x_sigma(k)).

    Defaults to su(2) with the basis of ``su2_matrices``.
    """
    mats = list(matrices) if matrices is not None else su2_matrices()
    g = algebra if algebra is not None else su2()
    table = {}
    scale = Fraction(1, factorial(k))
    for ms in multisets(g.dim, k):
        acc = Fraction(0)
        for perm in itertools.permutations(ms):
            prod = mats[perm[0]]
            for i in perm[1:]:
                prod = cmat_mul(prod, mats[i])
            acc += real_trace(prod)
        val = -acc * scale
        if val:
            table[ms] = val
    q = InvariantPoly(g, k, table)
    bad = q.invariance_violation()
    if bad is not None:
        raise ValueError(f"symmetrized trace is not invariant at {bad}")
    return q


def is_nondegenerate(q: InvariantPoly) -> bool:
    """x -> q(x, ., ..., .) is injective into S^{k-1}(g^v)."""
    g = q.algebra
    if q.degree == 0:
        return g.dim == 0
    cols = multisets(g.dim, q.degree - 1)
    rows = [[q(a, *m) for m in cols] for a in range(g.dim)]
    return rank(rows, len(cols)) == g.dim
