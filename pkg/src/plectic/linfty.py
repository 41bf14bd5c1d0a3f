"""Finite-dimensional Lie n-algebras given by bracket tables, the generalized
Jacobi identity, central n-extensions and morphisms out of Lie algebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .combinatorics import koszul_sign, unshuffles
from .errors import CoboundaryMismatch, DegreeError, NotACocycle, PropertyPViolated
from .lie import CECochain, StructLieAlgebra, ce_differential
from .poly import scalar
from .report import CheckReport, ConditionTracker


class Vec:
    """Sparse exact vector in a GradedSpace: basis index -> coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        self.terms = {i: scalar(c) for i, c in (terms or {}).items() if c}

    @classmethod
    def basis(cls, i: int, c=1) -> Vec:
        return cls({i: c})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        out = dict(self.terms)
        for i, c in other.terms.items():
            out[i] = out.get(i, 0) + c
        return Vec(out)

    __radd__ = __add__

    def __neg__(self):
        return Vec({i: -c for i, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = scalar(c)
        return Vec({i: v * c for i, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return isinstance(other, Vec) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "Vec(0)"
        return "Vec(" + ", ".join(f"{i}: {c}" for i, c in sorted(self.terms.items())) + ")"


@dataclass(frozen=True)
class GradedSpace:
    names: tuple[str, ...]
    degrees: tuple[int, ...]
    n: int

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise ValueError("names and degrees differ in length")
        for nm, d in zip(self.names, self.degrees):
            if not 1 - self.n <= d <= 0:
                raise DegreeError(f"{nm} has degree {d}, outside {1 - self.n}..0")

    @property
    def dim(self) -> int:
        return len(self.names)

    def format(self, v: Vec) -> str:
        if v.is_zero():
            return "0"
        return " + ".join(f"{c} {self.names[i]}" for i, c in sorted(v.terms.items()))


def skew_sort(idx: Sequence[int], degrees: Sequence[int]) -> tuple[tuple[int, ...] | None, int]:
    """Sort basis indices for a graded skew-symmetric map.

    Returns the sorted key and the sign (-1)^sigma eps(sigma); (None, 0) when a
    repeated even element forces the value to vanish.
    """
    key = list(idx)
    for a, b in zip(sorted(key), sorted(key)[1:]):
        if a == b and degrees[a] % 2 == 0:
            return None, 0
    s = 1
    for a in range(len(key)):
        for b in range(a + 1, len(key)):
            if key[a] > key[b] and not (degrees[key[a]] % 2 and degrees[key[b]] % 2):
                s = -s
    return tuple(sorted(key)), s


@dataclass
class BracketTable:
    """Brackets l_k on basis tuples; keys are non-decreasing index tuples."""

    space: GradedSpace
    brackets: dict[int, dict[tuple[int, ...], Vec]] = field(default_factory=dict)

    def __post_init__(self):
        sp = self.space
        clean: dict[int, dict[tuple[int, ...], Vec]] = {}
        for k, table in self.brackets.items():
            if k > sp.n + 1 and any(not v.is_zero() for v in table.values()):
                raise DegreeError(f"l_{k} must vanish in a Lie {sp.n}-algebra")
            out = {}
            for key, v in table.items():
                skey, s = skew_sort(key, sp.degrees)
                if skey is None or v.is_zero():
                    continue
                target = sum(sp.degrees[i] for i in key) + 2 - k
                for i in v.terms:
                    if sp.degrees[i] != target:
                        raise DegreeError(f"l_{k}{key} has a component of degree {sp.degrees[i]}, expected {target}")
                out[skey] = v * s
            clean[k] = out
        self.brackets = clean

    @property
    def n(self) -> int:
        return self.space.n

    def basis_bracket(self, idx: Sequence[int]) -> Vec:
        k = len(idx)
        table = self.brackets.get(k)
        if not table:
            return Vec()
        key, s = skew_sort(idx, self.space.degrees)
        if key is None:
            return Vec()
        v = table.get(key)
        if v is None:
            return Vec()
        return v if s > 0 else -v

    def bracket(self, args: Sequence[Vec]) -> Vec:
        """l_k on arbitrary homogeneous vectors (multilinear extension)."""
        k = len(args)
        if not self.brackets.get(k):
            return Vec()
        acc = Vec()
        for combo in itertools.product(*[list(a.terms.items()) for a in args]):
            coef = Fraction(1)
            for _, c in combo:
                coef *= c
            val = self.basis_bracket(tuple(i for i, _ in combo))
            if not val.is_zero():
                acc = acc + val * coef
        return acc

    # target interface shared with the observables algebra
    def l(self, k: int, args: Sequence[Vec]) -> Vec:
        return self.bracket(args)

    def zero(self, degree: int) -> Vec:
        return Vec()

    def degree_of(self, v: Vec) -> int | None:
        for i in v.terms:
            return self.space.degrees[i]
        return None

    def witness(self, a: Vec, b: Vec) -> str | None:
        d = a - b
        return None if d.is_zero() else f"residual {self.space.format(d)}"

    def property_p_violation(self) -> str | None:
        """First k >= 2 bracket nonzero on inputs of negative total degree."""
        degs = self.space.degrees
        for k, table in sorted(self.brackets.items()):
            if k < 2:
                continue
            for key, v in table.items():
                if sum(degs[i] for i in key) < 0 and not v.is_zero():
                    names = ", ".join(self.space.names[i] for i in key)
                    return f"l_{k}({names}) = {self.space.format(v)}"
        return None


def generalized_jacobi_sum(target, elems: Sequence, degrees: Sequence[int], max_arity: int | None = None):
    """sum over i+j=m+1 and Sh(i,m-i) of (-1)^sigma eps(sigma) (-1)^{i(j-1)}
    l_j(l_i(x_sigma(1..i)), x_sigma(i+1..m)) for a target with ``l``."""
    m = len(elems)
    acc = None
    for i in range(1, m + 1):
        j = m + 1 - i
        if max_arity is not None and (i > max_arity or j > max_arity):
            continue
        blocks = [i] if i == m else [i, m - i]
        for sigma in unshuffles(blocks):
            s = sigma.sign() * koszul_sign(sigma, degrees) * (-1) ** (i * (j - 1))
            xs = sigma.permute(elems)
            inner = target.l(i, list(xs[:i]))
            if inner is None or _zero(inner):
                continue
            val = target.l(j, [inner] + list(xs[i:]))
            if _zero(val):
                continue
            term = val * s
            acc = term if acc is None else acc + term
    return acc


def _zero(v) -> bool:
    if v is None:
        return True
    return v.is_zero() if hasattr(v, "is_zero") else v == 0


def check_generalized_jacobi(b: BracketTable, max_m: int) -> CheckReport:
    """The generalized Jacobi identity on all basis tuples of arity 1..max_m."""
    sp = b.space
    report = CheckReport("generalized Jacobi")
    for m in range(1, max_m + 1):
        tr = ConditionTracker(report, f"m={m}")
        for key in itertools.combinations_with_replacement(range(sp.dim), m):
            if skew_sort(key, sp.degrees)[0] is None:
                continue
            degs = [sp.degrees[i] for i in key]
            val = generalized_jacobi_sum(b, [Vec.basis(i) for i in key], degs, max_arity=sp.n + 1)
            wit = None if val is None or val.is_zero() else f"value {sp.format(val)}"
            if not tr.check("(" + ", ".join(sp.names[i] for i in key) + ")", wit):
                break
        tr.close()
    return report


def lie_table(g: StructLieAlgebra) -> BracketTable:
    """A Lie algebra as a Lie 1-algebra."""
    sp = GradedSpace(g.names, (0,) * g.dim, 1)
    l2 = {(i, j): Vec(dict(enumerate(g.bracket_table[i][j])))
          for i in range(g.dim) for j in range(i + 1, g.dim)}
    return BracketTable(sp, {2: l2})


@dataclass
class CentralExtension:
    algebra: StructLieAlgebra
    cocycle: CECochain
    n: int
    table: BracketTable

    @property
    def central(self) -> int:
        """Basis index of the central generator."""
        return self.algebra.dim


def central_extension(g: StructLieAlgebra, c: CECochain, n: int | None = None, central_name: str = "r") -> CentralExtension:
    """g in degree 0 plus R in degree 1-n with l_2 = bracket and l_{n+1} = c."""
    n = c.degree - 1 if n is None else n
    if c.degree != n + 1:
        raise DegreeError(f"a central {n}-extension needs an {n + 1}-cocycle, got degree {c.degree}")
    if not ce_differential(c).is_zero():
        raise NotACocycle(f"delta c != 0: {ce_differential(c).components}")
    d = g.dim
    sp = GradedSpace(tuple(g.names) + (central_name,), (0,) * d + (1 - n,), n)
    l2 = {}
    for i in range(d):
        for j in range(i + 1, d):
            l2[(i, j)] = Vec(dict(enumerate(g.bracket_table[i][j])))
    top = {key: Vec({d: val}) for key, val in c.components.items()}
    brackets = {2: l2}
    if n == 1:
        for key, v in top.items():
            l2[key] = l2.get(key, Vec()) + v
    else:
        brackets[n + 1] = top
    return CentralExtension(g, c, n, BracketTable(sp, brackets))


@dataclass
class MorphismData:
    """Structure maps f_k: Lambda^k g -> target for k = 1..n.

    ``maps[k]`` is a CECochain with target-valued entries. For a central
    extension source, ``central_image`` is f_1(r) and ``cocycle`` is c.
    """

    source: StructLieAlgebra
    target: object
    n: int
    maps: dict[int, CECochain]
    central_image: object = None
    cocycle: CECochain | None = None

    def f(self, k: int) -> CECochain:
        if k in self.maps:
            return self.maps[k]
        return CECochain(self.source, k, {}, self.target.zero(1 - k))


def _images(m: MorphismData, key: Sequence[int]) -> list:
    return [m.f(1)(a) for a in key]


def _names(g: StructLieAlgebra, key) -> str:
    return "(" + ", ".join(g.names[a] for a in key) + ")"


def _component_checks(m: MorphismData, report: CheckReport, eq1: str, eq2: str) -> None:
    g, tgt, n = m.source, m.target, m.n
    for k in range(2, n + 1):
        lhs_c = -ce_differential(m.f(k - 1))
        fk = m.f(k)
        tr = ConditionTracker(report, f"{eq1} k={k}")
        for key in itertools.combinations(range(g.dim), k):
            rhs = tgt.l(1, [fk(*key)]) + tgt.l(k, _images(m, key))
            if not tr.check(_names(g, key), tgt.witness(lhs_c(*key), rhs)):
                break
        tr.close()
    lhs_c = -ce_differential(m.f(n))
    tr = ConditionTracker(report, f"{eq2} k={n + 1}")
    for key in itertools.combinations(range(g.dim), n + 1):
        lhs = lhs_c(*key)
        if m.cocycle is not None:
            cval = m.cocycle(*key)
            if cval:
                lhs = lhs + m.central_image * cval
        rhs = tgt.l(n + 1, _images(m, key))
        if not tr.check(_names(g, key), tgt.witness(lhs, rhs)):
            break
    tr.close()


def _require_property_p(target) -> None:
    check = getattr(target, "property_p_violation", None)
    if check is not None:
        bad = check()
        if bad is not None:
            raise PropertyPViolated(bad)


def check_lie_to_linfty_morphism(m: MorphismData) -> CheckReport:
    """Component equations for a morphism from a Lie algebra into a Lie
    n-algebra with property (P)."""
    _require_property_p(m.target)
    report = CheckReport("Lie algebra to Lie n-algebra morphism")
    _component_checks(m, report, "cor_eq1", "cor_eq2")
    return report


def check_ext_morphism(m: MorphismData) -> CheckReport:
    """Component equations for a morphism out of a central n-extension."""
    _require_property_p(m.target)
    if m.cocycle is None or m.central_image is None:
        raise ValueError("source is not a central extension: cocycle and central_image are required")
    report = CheckReport("central extension morphism")
    tgt = m.target
    tr = ConditionTracker(report, "ext_eq0")
    img = m.central_image
    tr.check("r", tgt.witness(tgt.l(1, [img]), tgt.zero(2 - m.n)) if m.n > 1 else None)
    tr.close()
    _component_checks(m, report, "ext_eq1", "ext_eq2")
    return report


def cocycle_quasi_iso(g: StructLieAlgebra, c: CECochain, c2: CECochain, b: CECochain) -> MorphismData:
    """Quasi-isomorphism between the central extensions for c and c2 = c + delta b.

    f_1 is the identity, f_k = 0 for 1 < k < n and f_n = -b (times the
    central generator); the sign is the one forced by the morphism equations
    with delta(c)(x) = sum_{i<j} (-1)^{i+j} c([x_i,x_j], ...).
    """
    n = c.degree - 1
    diff = ce_differential(b)
    if not (c + diff - c2).is_zero():
        raise CoboundaryMismatch("c2 - c is not delta b")
    src = central_extension(g, c, n)
    tgt = central_extension(g, c2, n)
    r = tgt.central
    maps: dict[int, CECochain] = {}
    f1 = {(a,): Vec.basis(a) for a in range(g.dim)}
    if n == 1:
        for (a,), val in b.components.items():
            f1[(a,)] = f1[(a,)] + Vec.basis(r, -val)
    else:
        maps[n] = CECochain(g, n, {k: Vec.basis(r, -v) for k, v in b.components.items()}, Vec())
    maps[1] = CECochain(g, 1, f1, Vec())
    return MorphismData(g, tgt.table, n, maps, central_image=Vec.basis(r), cocycle=src.cocycle)


def strict_morphism(g: StructLieAlgebra, target: BracketTable, images: Sequence[Vec], n: int | None = None) -> MorphismData:
    """f_1 given on basis elements, all higher f_k = 0."""
    f1 = CECochain(g, 1, {(a,): v for a, v in enumerate(images)}, Vec())
    return MorphismData(g, target, target.n if n is None else n, {1: f1})
