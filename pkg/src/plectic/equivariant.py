"""Lie algebra actions by polynomial vector fields, insertions, the bigraded
complex of skew cochains and the Cartan model."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ChartMismatch, MorphismCheckFailed, NotInvariant
from .forms import (Chart, PolyForm, PolyMultiVec, exterior_d, interior_vector, lie_derivative,
                    schouten, wedge)
from .invariant import multisets
from .lie import CECochain, LinearAction, StructLieAlgebra, ce_differential
from .report import CheckReport, ConditionTracker


@dataclass(frozen=True)
class ActionData:
    """Infinitesimal action: one fundamental vector field per basis element.

    ``manifold`` is a Chart or a LevelSetChart; forms and fields always live
    on the ambient chart.
    """

    algebra: StructLieAlgebra
    manifold: object
    fields: tuple[PolyMultiVec, ...]
    checked: bool = field(default=True, compare=False)

    def __post_init__(self):
        if len(self.fields) != self.algebra.dim:
            raise MorphismCheckFailed(f"{len(self.fields)} fields for a {self.algebra.dim}-dimensional algebra")
        for v in self.fields:
            if v.degree != 1 or v.chart != self.chart:
                raise ChartMismatch("fundamental fields must be vector fields on the ambient chart")
        if self.checked:
            bad = self.morphism_violation()
            if bad is not None:
                raise MorphismCheckFailed(bad)

    @property
    def chart(self) -> Chart:
        return self.manifold.ambient

    def field_of(self, x: Sequence) -> PolyMultiVec:
        out = PolyMultiVec.zero(self.chart, 1)
        for c, v in zip(x, self.fields):
            if c:
                out = out + v * c
        return out

    def morphism_violation(self) -> str | None:
        g = self.algebra
        for i in range(g.dim):
            for j in range(i + 1, g.dim):
                lhs = schouten(self.fields[i], self.fields[j])
                rhs = self.field_of(g.bracket_table[i][j])
                if lhs != rhs:
                    return f"[v_{g.names[i]}, v_{g.names[j]}] != v_[{g.names[i]},{g.names[j]}]"
        return None

    def equal(self, a, b) -> bool:
        return self.manifold.difference_witness(a, b) is None

    def witness(self, a, b) -> str | None:
        return self.manifold.difference_witness(a, b)


def fundamental_fields_linear(action: LinearAction, manifold=None, chart: Chart | None = None) -> ActionData:
    """v_x|_p = -phi(x) p."""
    if manifold is None:
        manifold = chart or Chart.standard(action.size)
    ch = manifold.ambient
    coords = ch.coords()
    fields = []
    for m in action.matrices:
        comps = []
        for row in m:
            acc = ch.const(0)
            for c, x in zip(row, coords):
                if c:
                    acc = acc - x * c
            comps.append(acc)
        fields.append(PolyMultiVec.vector_field(ch, comps))
    return ActionData(action.algebra, manifold, tuple(fields))


def zero_form(chart: Chart, degree: int) -> PolyForm:
    return PolyForm.zero(chart, max(degree, 0))


def insert_chain(action: ActionData, form: PolyForm, args: Sequence[int]) -> PolyForm:
    """iota_{v_{x_k}} ... iota_{v_{x_1}} form for basis indices x_1..x_k."""
    out = form
    for a in args:
        if out.degree == 0:
            return zero_form(form.chart, 0)
        out = interior_vector(action.fields[a], out)
    return out


def insert_g_k(omega: PolyForm, action: ActionData, k: int) -> CECochain:
    """(iota_g^k omega)(x_1..x_k) = iota_{v_{x_k}} ... iota_{v_{x_1}} omega."""
    g = action.algebra
    if k > omega.degree:
        return CECochain(g, k, {}, zero_form(omega.chart, 0))
    cache: dict[tuple[int, ...], PolyForm] = {(): omega}
    comps = {}
    for key in itertools.combinations(range(g.dim), k):
        for r in range(1, k + 1):
            pre = key[:r]
            if pre not in cache:
                cache[pre] = interior_vector(action.fields[pre[-1]], cache[key[:r - 1]])
        comps[key] = cache[key]
    return CECochain(g, k, comps, PolyForm.zero(omega.chart, omega.degree - k))


# ------------------------------------------------------------ total complex


@dataclass
class TotalCochain:
    """Components f_k in Lambda^k g^v (x) Omega^{m-k}, k = 0..m."""

    algebra: StructLieAlgebra
    chart: Chart
    total_degree: int
    components: dict[int, CECochain]

    def component(self, k: int) -> CECochain:
        if k in self.components:
            return self.components[k]
        return CECochain(self.algebra, k, {}, zero_form(self.chart, self.total_degree - k))


def form_cochain_d(c: CECochain) -> CECochain:
    deg = c.zero.degree + 1
    return CECochain(c.algebra, c.degree, {k: exterior_d(v) for k, v in c.components.items()},
                     PolyForm.zero(c.zero.chart, deg))


def total_differential(f: TotalCochain) -> TotalCochain:
    """(bold d f)_k = delta f_{k-1} + (-1)^k d f_k."""
    m = f.total_degree + 1
    out = {}
    for k in range(0, m + 1):
        if m - k < 0:
            break
        acc = CECochain(f.algebra, k, {}, zero_form(f.chart, m - k))
        if k >= 1 and (k - 1) in f.components and f.total_degree - (k - 1) >= 0:
            acc = acc + ce_differential(f.component(k - 1))
        if k in f.components and f.total_degree - k >= 0:
            dfk = form_cochain_d(f.component(k))
            acc = acc + (dfk if k % 2 == 0 else -dfk)
        out[k] = acc
    return TotalCochain(f.algebra, f.chart, m, out)


# ------------------------------------------------------------ Cartan model


@dataclass
class CartanCochain:
    """omega + P_1 + P_2 + ... with P_i symmetric in i algebra slots.

    ``components[i]`` maps sorted multisets of basis indices to forms of
    degree ``total_degree - 2 i``; ``components[0][()]`` is omega.
    """

    algebra: StructLieAlgebra
    chart: Chart
    total_degree: int
    components: dict[int, dict[tuple[int, ...], PolyForm]]

    @property
    def omega(self) -> PolyForm:
        return self.value(0, ())

    @property
    def top(self) -> int:
        return max((i for i, t in self.components.items() if t), default=0)

    def form_degree(self, i: int) -> int:
        return self.total_degree - 2 * i

    def value(self, i: int, idx: Sequence[int]) -> PolyForm:
        key = tuple(sorted(idx))
        table = self.components.get(i, {})
        if key in table:
            return table[key]
        return zero_form(self.chart, self.form_degree(i))

    def evaluate(self, i: int, vectors: Sequence[Sequence]) -> PolyForm:
        """P_i on algebra elements (multilinear expansion)."""
        acc = zero_form(self.chart, self.form_degree(i))
        supports = [[(a, c) for a, c in enumerate(v) if c] for v in vectors]
        for combo in itertools.product(*supports):
            coef = Fraction(1)
            for _, c in combo:
                coef *= c
            val = self.value(i, [a for a, _ in combo])
            if not val.is_zero():
                acc = acc + val * coef
        return acc

    def __add__(self, other: CartanCochain) -> CartanCochain:
        comps = {i: dict(t) for i, t in self.components.items()}
        for i, t in other.components.items():
            tab = comps.setdefault(i, {})
            for k, v in t.items():
                tab[k] = tab[k] + v if k in tab else v
        return CartanCochain(self.algebra, self.chart, self.total_degree, comps)

    def scaled(self, c) -> CartanCochain:
        return CartanCochain(self.algebra, self.chart, self.total_degree,
                             {i: {k: v * c for k, v in t.items()} for i, t in self.components.items()})


def cartan_from_moment(omega: PolyForm, algebra: StructLieAlgebra, mu: Mapping[int, PolyForm]) -> CartanCochain:
    """The 1-step cochain omega - mu."""
    return CartanCochain(algebra, omega.chart, omega.degree,
                         {0: {(): omega}, 1: {(a,): -f for a, f in mu.items()}})


def sym_iota(c: CartanCochain, action: ActionData, i: int, idx: Sequence[int]) -> PolyForm:
    """(1/i) sum_j iota_{v_{x_j}} P_{i-1}(x_1..^j..x_i)."""
    deg = c.form_degree(i - 1) - 1
    acc = zero_form(c.chart, deg)
    if deg < 0:
        return acc
    for j in range(i):
        rest = tuple(idx[:j]) + tuple(idx[j + 1:])
        val = c.value(i - 1, rest)
        if not val.is_zero():
            acc = acc + interior_vector(action.fields[idx[j]], val)
    return acc / i


def cartan_dG(c: CartanCochain, action: ActionData) -> CartanCochain:
    """d_G alpha(x) = d(alpha(x)) - iota_{v_x} alpha(x), with g^v in degree 2."""
    g = c.algebra
    m = c.total_degree + 1
    comps: dict[int, dict[tuple[int, ...], PolyForm]] = {}
    for i in range(0, m // 2 + 1):
        table = {}
        for idx in multisets(g.dim, i):
            val = zero_form(c.chart, m - 2 * i)
            if i in c.components and c.form_degree(i) >= 0:
                pi = c.value(i, idx)
                if not pi.is_zero():
                    val = val + exterior_d(pi)
            if i >= 1:
                val = val - sym_iota(c, action, i, idx)
            if not val.is_zero():
                table[idx] = val
        comps[i] = table
    return CartanCochain(g, c.chart, m, comps)


def _names(g: StructLieAlgebra, idx: Sequence[int]) -> str:
    return "(" + ", ".join(g.names[a] for a in idx) + ")"


def invariance_condition(report: CheckReport, name: str, action: ActionData, arity: int,
                         value, bracket_slots: bool = True, skew: bool = False) -> None:
    """L_{v_x} T(y_1..y_k) = sum_j T(y_1..[x,y_j]..y_k) over basis x and tuples y.

    ``value(idx)`` evaluates T on basis indices; tuples are multisets unless
    ``skew``, then increasing subsets.
    """
    g = action.algebra
    tr = ConditionTracker(report, name)
    keys = (itertools.combinations(range(g.dim), arity) if skew else multisets(g.dim, arity))
    keys = list(keys)
    for x in range(g.dim):
        vx = action.fields[x]
        for idx in keys:
            t = value(idx)
            lhs = lie_derivative(vx, t) if not t.is_zero() else t
            rhs = zero_form(t.chart, t.degree)
            for pos in range(arity):
                for mm, coef in g.bracket_terms(x, idx[pos]):
                    args = idx[:pos] + (mm,) + idx[pos + 1:]
                    v = value(args)
                    if not v.is_zero():
                        rhs = rhs + v * coef
            if not tr.check(f"x={g.names[x]}, y={_names(g, idx)}", action.witness(lhs, rhs)):
                break
        if tr.witness:
            break
    tr.close()


def cocycle_condition_name(i: int, top: int) -> str:
    if i == 1:
        return "dP1 = iota omega"
    if i > top:
        # for a 1-step extension Sym iota P1 (x,x) = -iota_{v_x} mu(x)
        return "iota_v mu = 0" if top == 1 else f"Sym iota P{i - 1} = 0"
    return f"dP{i} = Sym iota P{i - 1}"


def check_extension(c: CartanCochain, action: ActionData, invariance: bool = True) -> CheckReport:
    """Closedness, the graded cocycle conditions of d_G c = 0, and invariance."""
    g = c.algebra
    report = CheckReport("extension")
    omega = c.omega
    tr = ConditionTracker(report, "closed")
    tr.check("omega", action.witness(exterior_d(omega), zero_form(c.chart, omega.degree + 1)))
    tr.close()
    top = c.top
    m = c.total_degree + 1
    for i in range(1, min(top + 1, m // 2) + 1):
        tr = ConditionTracker(report, cocycle_condition_name(i, top))
        for idx in multisets(g.dim, i):
            lhs = zero_form(c.chart, m - 2 * i)
            if c.form_degree(i) >= 0:
                pi = c.value(i, idx)
                if not pi.is_zero():
                    lhs = exterior_d(pi)
            rhs = sym_iota(c, action, i, idx)
            if not tr.check(_names(g, idx), action.witness(lhs, rhs)):
                break
        tr.close()
    if invariance:
        for i in range(0, top + 1):
            invariance_condition(report, f"invariant P{i}", action, i, lambda idx, i=i: c.value(i, idx))
    return report


def extension_from_exact(alpha: PolyForm, action: ActionData) -> CartanCochain:
    """omega = d alpha, mu(x) = iota_{v_x} alpha, i.e. P_1 = -mu."""
    for a, v in enumerate(action.fields):
        w = action.witness(lie_derivative(v, alpha), zero_form(alpha.chart, alpha.degree))
        if w is not None:
            raise NotInvariant(f"L_v alpha != 0 for {action.algebra.names[a]}: {w}")
    omega = exterior_d(alpha)
    mu = {a: interior_vector(v, alpha) for a, v in enumerate(action.fields)}
    return cartan_from_moment(omega, action.algebra, mu)


def invariant_primitive_linear(omega: PolyForm) -> PolyForm:
    """alpha = iota_E omega / (n+1) for a constant-coefficient omega."""
    from .forms import euler_field

    return interior_vector(euler_field(omega.chart), omega) / omega.degree


def product_extension(ext1: CartanCochain, act1: ActionData, ext2: CartanCochain,
                      act2: ActionData) -> tuple[CartanCochain, ActionData]:
    """omega1 omega2 - eta + p for two 1-step extensions omega_i - mu_i."""
    c1, c2 = act1.chart, act2.chart
    names2 = c2.names
    if set(c1.names) & set(names2):
        names2 = tuple(f"{n}_2" for n in names2)
    chart = Chart(c1.names + names2)
    n1 = c1.dim
    map1 = list(range(n1))
    map2 = [n1 + i for i in range(c2.dim)]
    g = act1.algebra.direct_sum(act2.algebra)
    fields = tuple(v.rechart(chart, map1) for v in act1.fields) + \
        tuple(v.rechart(chart, map2) for v in act2.fields)
    action = ActionData(g, chart, fields)
    w1 = ext1.omega.rechart(chart, map1)
    w2 = ext2.omega.rechart(chart, map2)
    d1 = act1.algebra.dim
    mu1 = {a: -ext1.value(1, (a,)).rechart(chart, map1) for a in range(d1)}
    mu2 = {b: -ext2.value(1, (b,)).rechart(chart, map2) for b in range(act2.algebra.dim)}
    p1 = {}
    for a, f in mu1.items():
        p1[(a,)] = -wedge(f, w2)
    for b, f in mu2.items():
        p1[(d1 + b,)] = -wedge(w1, f)
    p2 = {}
    for a, f in mu1.items():
        for b, h in mu2.items():
            val = wedge(f, h) / 2
            if not val.is_zero():
                p2[(a, d1 + b)] = val
    omega = wedge(w1, w2)
    cochain = CartanCochain(g, chart, omega.degree, {0: {(): omega}, 1: p1, 2: p2})
    return cochain, action


def change_of_basis(c: CartanCochain, action: ActionData, A: Sequence[Sequence],
                    names: Sequence[str] | None = None) -> tuple[CartanCochain, ActionData]:
    """Re-express a 1-step extension and its action in the basis e'_i = sum_j A[i][j] e_j."""
    from .linalg import inverse

    if c.top > 1:
        raise ValueError("change_of_basis handles 1-step cochains")
    g = action.algebra
    Ainv = inverse(A)
    if Ainv is None:
        raise ValueError("change of basis matrix is singular")
    d = g.dim
    brackets = {}
    for i, j in itertools.combinations(range(d), 2):
        w = g.bracket(A[i], A[j])
        brackets[(i, j)] = tuple(sum((w[a] * Ainv[a][b] for a in range(d)), Fraction(0)) for b in range(d))
    h = StructLieAlgebra(names or [f"{n}'" for n in g.names], brackets)
    new_action = ActionData(h, action.manifold, tuple(action.field_of(A[i]) for i in range(d)))
    comps = {0: {(): c.omega}, 1: {(i,): c.evaluate(1, [A[i]]) for i in range(d)}}
    return CartanCochain(h, c.chart, c.total_degree, comps), new_action
