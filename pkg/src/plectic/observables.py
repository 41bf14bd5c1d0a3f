"""The Lie n-algebra of observables of a closed (n+1)-form, evaluated on
concrete elements: degree-0 elements carry a Hamiltonian vector field."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .combinatorics import varsigma
from .errors import DegreeError, NoHamiltonianWitness, NotClosed
from .forms import PolyForm, PolyMultiVec, exterior_d, interior_sequence, interior_vector, schouten


@dataclass(frozen=True)
class HamPair:
    """(v, alpha) with d alpha = -iota_v omega; a degree-0 observable."""

    field: PolyMultiVec
    form: PolyForm

    def is_zero(self) -> bool:
        return self.field.is_zero() and self.form.is_zero()

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return HamPair(self.field + other.field, self.form + other.form)

    __radd__ = __add__

    def __neg__(self):
        return HamPair(-self.field, -self.form)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return HamPair(self.field * c, self.form * c)

    __rmul__ = __mul__


def hamiltonian_pair_check(v: PolyMultiVec, alpha: PolyForm, omega: PolyForm, manifold=None) -> tuple[bool, str | None]:
    """Whether d alpha = -iota_v omega; returns (ok, residual description)."""
    manifold = manifold or omega.chart
    lhs = exterior_d(alpha)
    rhs = -interior_vector(v, omega)
    w = manifold.difference_witness(lhs, rhs)
    return w is None, w


@dataclass
class ObservablesAlgebra:
    """L_infty(M, omega) (``variant='linf'``) or Ham_infty(M, omega) (``'ham'``).

    Degree-0 elements are HamPair; an element of degree i < 0 is a PolyForm
    of form degree n-1+i. In the 'linf' variant equality of degree-0
    elements ignores the vector field.
    """

    manifold: object
    omega: PolyForm
    variant: str = "ham"
    registry: dict[PolyForm, PolyMultiVec] = field(default_factory=dict)

    def __post_init__(self):
        if self.variant not in ("ham", "linf"):
            raise ValueError(f"unknown variant {self.variant!r}")
        w = self.manifold.difference_witness(exterior_d(self.omega), PolyForm.zero(self.chart, self.omega.degree + 1))
        if w is not None:
            raise NotClosed(f"d omega != 0: {w}")

    @property
    def chart(self):
        return self.manifold.ambient

    @property
    def n(self) -> int:
        return self.omega.degree - 1

    def register(self, alpha: PolyForm, v: PolyMultiVec) -> HamPair:
        ok, w = hamiltonian_pair_check(v, alpha, self.omega, self.manifold)
        if not ok:
            raise NoHamiltonianWitness(f"v is not Hamiltonian for alpha: {w}")
        self.registry[alpha] = v
        return HamPair(v, alpha)

    def pair(self, x) -> HamPair:
        if isinstance(x, HamPair):
            return x
        if isinstance(x, PolyForm) and x.degree == self.n - 1:
            if x in self.registry:
                return HamPair(self.registry[x], x)
            if x.is_zero():
                return HamPair(PolyMultiVec.zero(self.chart, 1), x)
        raise NoHamiltonianWitness(f"no Hamiltonian vector field registered for {x!r}")

    def degree_of(self, x) -> int:
        if isinstance(x, HamPair):
            return 0
        if isinstance(x, PolyForm):
            d = x.degree - (self.n - 1)
            if not 1 - self.n <= d <= 0:
                raise DegreeError(f"form of degree {x.degree} is not an observable")
            return d
        raise TypeError(f"not an observable: {x!r}")

    def zero(self, degree: int):
        if degree == 0:
            return HamPair(PolyMultiVec.zero(self.chart, 1), PolyForm.zero(self.chart, self.n - 1))
        return PolyForm.zero(self.chart, max(self.n - 1 + degree, 0))

    def l(self, k: int, args: Sequence):
        if k < 1 or len(args) != k:
            raise ValueError(f"l_{k} needs {k} arguments")
        if k == 1:
            x = args[0]
            deg = self.degree_of(x) if not isinstance(x, HamPair) else 0
            if deg == 0:
                return None  # lands in degree 1, outside the algebra
            dx = exterior_d(x)
            if deg == -1:
                return HamPair(PolyMultiVec.zero(self.chart, 1), dx)
            return dx
        degs = [self.degree_of(a) for a in args]
        total = sum(degs) + 2 - k
        if any(d < 0 for d in degs):
            return self.zero(total) if total >= 1 - self.n else None
        pairs = [self.pair(a) for a in args]
        form = interior_sequence([p.field for p in pairs], self.omega) * varsigma(k)
        if k == 2:
            return HamPair(schouten(pairs[0].field, pairs[1].field), form)
        return form

    def witness(self, a, b) -> str | None:
        if a is None and b is None:
            return None
        if a is None or b is None:
            a = a if a is not None else self.zero(0)
            b = b if b is not None else self.zero(0)
        if isinstance(a, HamPair) or isinstance(b, HamPair):
            a, b = self.pair(a), self.pair(b)
            w = self.manifold.difference_witness(a.form, b.form)
            if w is not None:
                return f"form {w}"
            if self.variant == "ham" and a.field != b.field:
                return f"vector field residual {a.field - b.field!r}"
            return None
        return self.manifold.difference_witness(a, b)


def obs_bracket(alg: ObservablesAlgebra, k: int, args: Sequence):
    """l_k of the observables algebra on concrete elements."""
    return alg.l(k, list(args))
