"""Lie algebras from structure constants and Chevalley-Eilenberg cochains."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import MorphismCheckFailed, NotACocycle, NotPerfect, SizeMismatch
from .linalg import LinearSystem, Solution, rank, rref, solve_linear
from .poly import scalar

Vector = tuple[Fraction, ...]


class StructLieAlgebra:
    """Finite-dimensional Lie algebra; ``bracket_table[i][j]`` is [e_i, e_j] as a vector."""

    def __init__(self, names: Sequence[str], brackets: Mapping[tuple[int, int], Sequence] | None = None,
                 check: bool = True):
        self.names = tuple(names)
        d = len(self.names)
        zero = tuple(Fraction(0) for _ in range(d))
        table = [[zero] * d for _ in range(d)]
        for (i, j), vec in (brackets or {}).items():
            if len(vec) != d:
                raise SizeMismatch(f"bracket vector of length {len(vec)} in dimension {d}")
            v = tuple(scalar(x) for x in vec)
            table[i][j] = v
            if (j, i) not in (brackets or {}):
                table[j][i] = tuple(-x for x in v)
        self.bracket_table = tuple(tuple(r) for r in table)
        if check:
            bad = self.jacobi_violation()
            if bad is not None:
                raise ValueError(f"structure constants violate {bad}")

    @property
    def dim(self) -> int:
        return len(self.names)

    def basis(self, i: int) -> Vector:
        return tuple(Fraction(int(i == j)) for j in range(self.dim))

    def zero(self) -> Vector:
        return tuple(Fraction(0) for _ in range(self.dim))

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        return self.bracket_table[i][j][k]

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, v in enumerate(self.bracket_table[i][j]):
                    if v:
                        out[k] += c * v
        return tuple(out)

    def bracket_terms(self, i: int, j: int) -> list[tuple[int, Fraction]]:
        """Sparse [e_i, e_j]."""
        return [(k, v) for k, v in enumerate(self.bracket_table[i][j]) if v]

    def jacobi_violation(self) -> str | None:
        d = self.dim
        for i in range(d):
            if any(self.bracket_table[i][i]):
                return f"antisymmetry at ({i}, {i})"
            for j in range(d):
                if any(a != -b for a, b in zip(self.bracket_table[i][j], self.bracket_table[j][i])):
                    return f"antisymmetry at ({i}, {j})"
        for i, j, k in itertools.combinations(range(d), 3):
            ei, ej, ek = self.basis(i), self.basis(j), self.basis(k)
            s = [a + b + c for a, b, c in zip(
                self.bracket(ei, self.bracket(ej, ek)),
                self.bracket(ej, self.bracket(ek, ei)),
                self.bracket(ek, self.bracket(ei, ej)))]
            if any(s):
                return f"the Jacobi identity at ({i}, {j}, {k})"
        return None

    def is_abelian(self) -> bool:
        return all(not any(v) for row in self.bracket_table for v in row)

    def is_perfect(self) -> bool:
        cols = [self.bracket_table[i][j] for i, j in itertools.combinations(range(self.dim), 2)]
        return rank([list(c) for c in cols], self.dim) == self.dim if cols else self.dim == 0

    def direct_sum(self, other: StructLieAlgebra) -> StructLieAlgebra:
        d1, d2 = self.dim, other.dim
        br = {}
        for i in range(d1):
            for j in range(d1):
                br[(i, j)] = tuple(self.bracket_table[i][j]) + (0,) * d2
        for i in range(d2):
            for j in range(d2):
                br[(d1 + i, d1 + j)] = (0,) * d1 + tuple(other.bracket_table[i][j])
        return StructLieAlgebra(self.names + other.names, br, check=False)

    def __eq__(self, other):
        return isinstance(other, StructLieAlgebra) and self.names == other.names and \
            self.bracket_table == other.bracket_table

    def __hash__(self):
        return hash((self.names, self.bracket_table))

    def __repr__(self):
        return f"StructLieAlgebra({', '.join(self.names)})"


def abelian(d: int, prefix: str = "e") -> StructLieAlgebra:
    return StructLieAlgebra([f"{prefix}{i}" for i in range(1, d + 1)], {})


def su2() -> StructLieAlgebra:
    """[e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2."""
    return StructLieAlgebra(("e1", "e2", "e3"), {
        (0, 1): (0, 0, 1), (1, 2): (1, 0, 0), (2, 0): (0, 1, 0)})


def heisenberg3() -> StructLieAlgebra:
    return StructLieAlgebra(("p", "q", "z"), {(0, 1): (0, 0, 1)})


def solvable4() -> StructLieAlgebra:
    """A non-nilpotent solvable algebra: [h,a]=a, [h,b]=b, [h,c]=2c, [a,b]=c."""
    return StructLieAlgebra(("h", "a", "b", "c"), {
        (0, 1): (0, 1, 0, 0), (0, 2): (0, 0, 1, 0), (0, 3): (0, 0, 0, 2), (1, 2): (0, 0, 0, 1)})


def sl2() -> StructLieAlgebra:
    """[h,e]=2e, [h,f]=-2f, [e,f]=h."""
    return StructLieAlgebra(("h", "e", "f"), {
        (0, 1): (0, 2, 0), (0, 2): (0, 0, -2), (1, 2): (1, 0, 0)})


def so_matrix(n: int, i: int, j: int) -> list[list[Fraction]]:
    """e_ij (0-based i<j): -1 at (i, j), +1 at (j, i)."""
    m = [[Fraction(0)] * n for _ in range(n)]
    m[i][j] = Fraction(-1)
    m[j][i] = Fraction(1)
    return m


def so_pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    return [[sum((a[i][k] * b[k][j] for k in range(m)), Fraction(0)) for j in range(p)] for i in range(n)]


def commutator(a, b):
    ab, ba = mat_mul(a, b), mat_mul(b, a)
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]


def algebra_from_matrices(names: Sequence[str], mats: Sequence) -> StructLieAlgebra:
    """Structure constants of the linear span of ``mats`` (closed under commutators)."""
    flat = [[x for row in m for x in row] for m in mats]
    d = len(mats)
    cols = [list(c) for c in zip(*flat)]
    br = {}
    for i in range(d):
        for j in range(i + 1, d):
            target = [x for row in commutator(mats[i], mats[j]) for x in row]
            sol = solve_linear(LinearSystem.of(cols, target, d))
            if not isinstance(sol, Solution):
                raise ValueError("matrices do not span a Lie algebra")
            br[(i, j)] = sol.particular
    return StructLieAlgebra(names, br)


def so(n: int) -> StructLieAlgebra:
    pairs = so_pairs(n)
    names = [f"e{i + 1}{j + 1}" for i, j in pairs]
    return algebra_from_matrices(names, [so_matrix(n, i, j) for i, j in pairs])


@dataclass(frozen=True)
class LinearAction:
    algebra: StructLieAlgebra
    matrices: tuple[tuple[tuple[Fraction, ...], ...], ...]

    @classmethod
    def of(cls, algebra: StructLieAlgebra, matrices: Sequence) -> LinearAction:
        mats = tuple(tuple(tuple(scalar(x) for x in row) for row in m) for m in matrices)
        act = cls(algebra, mats)
        bad = act.morphism_violation()
        if bad is not None:
            raise MorphismCheckFailed(bad)
        return act

    @property
    def size(self) -> int:
        return len(self.matrices[0]) if self.matrices else 0

    def matrix_of(self, x: Sequence) -> list[list[Fraction]]:
        n = self.size
        out = [[Fraction(0)] * n for _ in range(n)]
        for c, m in zip(x, self.matrices):
            if c:
                for r in range(n):
                    for s in range(n):
                        out[r][s] += c * m[r][s]
        return out

    def morphism_violation(self) -> str | None:
        d = self.algebra.dim
        if len(self.matrices) != d:
            return f"{len(self.matrices)} matrices for a {d}-dimensional algebra"
        for i in range(d):
            for j in range(i + 1, d):
                lhs = self.matrix_of(self.algebra.bracket_table[i][j])
                rhs = commutator(self.matrices[i], self.matrices[j])
                if lhs != [list(r) for r in rhs]:
                    return f"phi([e{i + 1},e{j + 1}]) != [phi(e{i + 1}),phi(e{j + 1})]"
        return None


def adjoint_action(g: StructLieAlgebra) -> LinearAction:
    d = g.dim
    mats = []
    for i in range(d):
        # ad(e_i)[r][s] = coefficient of e_r in [e_i, e_s]
        mats.append([[g.bracket_table[i][s][r] for s in range(d)] for r in range(d)])
    return LinearAction.of(g, mats)


# ---------------------------------------------------------------- cochains


def _sort_key(key: Sequence[int]) -> tuple[tuple[int, ...] | None, int]:
    """Sorted key and sign for a skew table; (None, 0) on repeated entries."""
    if len(set(key)) != len(key):
        return None, 0
    s = 1
    k = list(key)
    for a in range(len(k)):
        for b in range(a + 1, len(k)):
            if k[a] > k[b]:
                s = -s
    return tuple(sorted(k)), s


class CECochain:
    """Skew k-cochain on a Lie algebra with values in scalars or forms.

    ``components`` maps strictly increasing basis index tuples to values;
    absent keys are zero. ``zero`` is the zero of the value space.
    """

    def __init__(self, algebra: StructLieAlgebra, degree: int, components: Mapping[tuple[int, ...], object],
                 zero=Fraction(0)):
        self.algebra = algebra
        self.degree = degree
        self.zero = zero
        comps = {}
        for key, v in components.items():
            key = tuple(key)
            if len(key) != degree or any(a >= b for a, b in zip(key, key[1:])):
                raise ValueError(f"bad cochain key {key}")
            if isinstance(v, (int, str)):
                v = scalar(v)
            if not _is_zero(v):
                comps[key] = v
        self.components = comps

    @property
    def scalar_valued(self) -> bool:
        return isinstance(self.zero, Fraction)

    def __call__(self, *args):
        """Evaluate on basis indices (any order)."""
        key, s = _sort_key(args)
        if key is None:
            return self.zero
        v = self.components.get(key)
        if v is None:
            return self.zero
        return v if s > 0 else -v

    def evaluate(self, vectors: Sequence[Sequence]):
        """Evaluate on algebra elements given as coefficient vectors."""
        acc = self.zero
        supports = [[(i, c) for i, c in enumerate(v) if c] for v in vectors]
        for combo in itertools.product(*supports):
            idx = tuple(i for i, _ in combo)
            val = self(*idx)
            if _is_zero(val):
                continue
            coef = Fraction(1)
            for _, c in combo:
                coef *= c
            acc = acc + val * coef
        return acc

    def keys(self) -> list[tuple[int, ...]]:
        return list(itertools.combinations(range(self.algebra.dim), self.degree))

    def is_zero(self) -> bool:
        return not self.components

    def map_values(self, fn: Callable, zero=None) -> CECochain:
        return CECochain(self.algebra, self.degree, {k: fn(v) for k, v in self.components.items()},
                         self.zero if zero is None else zero)

    def __add__(self, other: CECochain) -> CECochain:
        comps = dict(self.components)
        for k, v in other.components.items():
            comps[k] = comps[k] + v if k in comps else v
        return CECochain(self.algebra, self.degree, comps, self.zero)

    def __neg__(self) -> CECochain:
        return self.map_values(lambda v: -v)

    def __sub__(self, other: CECochain) -> CECochain:
        return self + (-other)

    def __mul__(self, c) -> CECochain:
        return self.map_values(lambda v: v * c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CECochain):
            return NotImplemented
        return self.degree == other.degree and self.components == other.components

    def __repr__(self):
        return f"CECochain(degree={self.degree}, {len(self.components)} nonzero components)"


def _is_zero(v) -> bool:
    return v.is_zero() if hasattr(v, "is_zero") else v == 0


def bracket_first_terms(g: StructLieAlgebra, args: Sequence[int], i: int, j: int):
    """Expand [x_i, x_j], x_1..^i..^j..x_k into basis tuples with coefficients."""
    rest = tuple(a for n, a in enumerate(args) if n not in (i, j))
    return [((m,) + rest, c) for m, c in g.bracket_terms(args[i], args[j])]


def ce_differential(c: CECochain) -> CECochain:
    """(delta c)(x_1..x_{k+1}) = sum_{i<j} (-1)^{i+j} c([x_i,x_j], x_1..^i..^j..)."""
    g = c.algebra
    k = c.degree + 1
    comps = {}
    for key in itertools.combinations(range(g.dim), k):
        acc = c.zero
        for i, j in itertools.combinations(range(k), 2):
            sign = -1 if (i + j) % 2 else 1  # (i+1)+(j+1) has the parity of i+j
            for args, coef in bracket_first_terms(g, key, i, j):
                v = c(*args)
                if not _is_zero(v):
                    acc = acc + v * (coef * sign)
        if not _is_zero(acc):
            comps[key] = acc
    return CECochain(g, k, comps, c.zero)


def ce_matrix(g: StructLieAlgebra, k: int) -> tuple[list[list[Fraction]], list[tuple], list[tuple]]:
    """Matrix of delta: C^k -> C^{k+1} in the increasing-subset bases."""
    src = list(itertools.combinations(range(g.dim), k))
    tgt = list(itertools.combinations(range(g.dim), k + 1))
    mat = [[Fraction(0)] * len(src) for _ in tgt]
    for col, key in enumerate(src):
        basis = CECochain(g, k, {key: Fraction(1)})
        d = ce_differential(basis)
        for r, tk in enumerate(tgt):
            v = d.components.get(tk)
            if v:
                mat[r][col] = v
    return mat, src, tgt


def _ce_factorization(g: StructLieAlgebra, k: int):
    """Row reduction of delta: C^k -> C^{k+1}, cached on the algebra."""
    cache = g.__dict__.setdefault("_ce_factorizations", {})
    if k not in cache:
        mat, src, tgt = ce_matrix(g, k)
        red, pivots, tr = rref(mat, len(src))
        cache[k] = (src, tgt, pivots, tr)
    return cache[k]


def is_ce_coboundary(c: CECochain) -> CECochain | None:
    """A primitive b with delta b = c, or None when [c] != 0."""
    if not c.scalar_valued:
        raise TypeError("is_ce_coboundary expects a scalar cochain")
    if not ce_differential(c).is_zero():
        raise NotACocycle(f"delta c != 0 for {c}")
    g = c.algebra
    if c.degree == 0:
        return None if not c.is_zero() else CECochain(g, 0, {})
    if c.is_zero():
        return CECochain(g, c.degree - 1, {})
    src, tgt, pivots, tr = _ce_factorization(g, c.degree - 1)
    if not tgt:
        return CECochain(g, c.degree - 1, {})
    rhs = [c.components.get(k, Fraction(0)) for k in tgt]
    y = [sum((a * b for a, b in zip(row, rhs) if a and b), Fraction(0)) for row in tr]
    if any(y[i] for i in range(len(pivots), len(y))):
        return None
    return CECochain(g, c.degree - 1, {src[p]: y[i] for i, p in enumerate(pivots) if y[i]})


def scalar_cochain(g: StructLieAlgebra, degree: int, values: Mapping[tuple[int, ...], object]) -> CECochain:
    return CECochain(g, degree, {k: scalar(v) for k, v in values.items()})


def killing_3cocycle(g: StructLieAlgebra, inner: Sequence[Sequence] | None = None) -> CECochain:
    """c(x, y, z) = <x, [y, z]> for an invariant inner product (identity matrix by default)."""
    d = g.dim
    ip = inner or [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    comps = {}
    for i, j, k in itertools.combinations(range(d), 3):
        br = g.bracket_table[j][k]
        v = sum((scalar(ip[i][m]) * br[m] for m in range(d)), Fraction(0))
        if v:
            comps[(i, j, k)] = v
    return CECochain(g, 3, comps)


def solve_perfect_decomposition(g: StructLieAlgebra, x: Sequence) -> list[tuple[Vector, Vector]]:
    """Pairs (x_i, x_i') with x = sum [x_i, x_i']."""
    x = tuple(scalar(v) for v in x)
    if not g.is_perfect():
        raise NotPerfect(f"{g} is not perfect")
    if not any(x):
        return []
    pairs = list(itertools.combinations(range(g.dim), 2))
    cols = [g.bracket_table[i][j] for i, j in pairs]
    mat = [[cols[c][r] for c in range(len(pairs))] for r in range(g.dim)]
    sol = solve_linear(LinearSystem.of(mat, x, len(pairs)))
    out = []
    for (i, j), a in zip(pairs, sol.particular):
        if a:
            xi = tuple(a if m == i else Fraction(0) for m in range(g.dim))
            out.append((xi, g.basis(j)))
    return out


def lie_elements(g: StructLieAlgebra) -> Iterable[Vector]:
    for i in range(g.dim):
        yield g.basis(i)
