"""Homotopy moment maps: verification, construction from extensions and
Cartan cocycles, obstruction classes, existence, central-extension lifts and
modifications in the 2-plectic case."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .combinatorics import unshuffle_splits, varsigma
from .equivariant import (ActionData, CartanCochain, TotalCochain, check_extension, insert_chain,
                          insert_g_k, invariance_condition, total_differential, zero_form)
from .errors import (InternalInconsistency, NoPrimitive, NotACocycle, NotClosed, NotInvariant,
                     Obstructed)
from .forms import PolyForm, PolyMultiVec, exterior_d, interior_sequence, interior_vector, lie_derivative, poincare_homotopy
from .lie import CECochain, StructLieAlgebra, ce_differential, is_ce_coboundary, solve_perfect_decomposition
from .linfty import CentralExtension, MorphismData, central_extension
from .observables import HamPair, ObservablesAlgebra
from .report import CheckReport, ConditionTracker


@dataclass
class MomentMap:
    """Components f_k: Lambda^k g -> Omega^{n-k}, k = 1..n."""

    action: ActionData
    omega: PolyForm
    components: dict[int, CECochain]

    @property
    def n(self) -> int:
        return self.omega.degree - 1

    @property
    def algebra(self) -> StructLieAlgebra:
        return self.action.algebra

    @property
    def chart(self):
        return self.action.chart

    def f(self, k: int) -> CECochain:
        if k in self.components:
            return self.components[k]
        return CECochain(self.algebra, k, {}, zero_form(self.chart, self.n - k))

    def replace(self, k: int, cochain: CECochain) -> MomentMap:
        comps = dict(self.components)
        comps[k] = cochain
        return MomentMap(self.action, self.omega, comps)


def _names(g: StructLieAlgebra, key) -> str:
    return "(" + ", ".join(g.names[a] for a in key) + ")"


def require_closed_invariant(action: ActionData, omega: PolyForm) -> None:
    """Raise NotClosed / NotInvariant; a passing (action, omega) pair is remembered on the action."""
    seen = action.__dict__.setdefault("_closed_invariant", [])
    if any(o is omega for o in seen):
        return
    _check_closed_invariant(action, omega)
    seen.append(omega)


def _check_closed_invariant(action: ActionData, omega: PolyForm) -> None:
    w = action.witness(exterior_d(omega), zero_form(omega.chart, omega.degree + 1))
    if w is not None:
        raise NotClosed(f"d omega != 0: {w}")
    for a, v in enumerate(action.fields):
        w = action.witness(lie_derivative(v, omega), zero_form(omega.chart, omega.degree))
        if w is not None:
            raise NotInvariant(f"L_v omega != 0 for {action.algebra.names[a]}: {w}")


def verify_moment(m: MomentMap, cross_check: bool = True) -> CheckReport:
    """f_1 is Hamiltonian for the fundamental fields, then the component
    equations for 2 <= k <= n and at k = n+1."""
    action, omega, g, n = m.action, m.omega, m.algebra, m.n
    require_closed_invariant(action, omega)
    report = CheckReport("moment map")
    ins = {k: insert_g_k(omega, action, k) for k in range(1, n + 2)}
    tr = ConditionTracker(report, "d f1 = -iota omega")
    f1 = m.f(1)
    for a in range(g.dim):
        if not tr.check(g.names[a], action.witness(exterior_d(f1(a)), -ins[1](a))):
            break
    tr.close()
    for k in range(2, n + 2):
        lhs_c = -ce_differential(m.f(k - 1))
        sk = varsigma(k)
        name = f"main_eq_1 k={k}" if k <= n else f"main_eq_2 k={n + 1}"
        tr = ConditionTracker(report, name)
        fk = m.f(k) if k <= n else None
        for key in itertools.combinations(range(g.dim), k):
            rhs = ins[k](*key) * sk
            if fk is not None:
                rhs = rhs + exterior_d(fk(*key))
            if not tr.check(_names(g, key), action.witness(lhs_c(*key), rhs)):
                break
        tr.close()
    if cross_check:
        total_ok = total_complex_check(m, ins) is None
        if total_ok != report.ok:
            raise InternalInconsistency(
                f"component equations give {report.ok}, total complex gives {total_ok}")
    return report


def total_complex_check(m: MomentMap, ins: Mapping[int, CECochain] | None = None) -> str | None:
    """bold-d f^varsigma = sum_k (-1)^{k+1} iota_g^k omega; first failure or None."""
    action, omega, g, n = m.action, m.omega, m.algebra, m.n
    ins = ins or {k: insert_g_k(omega, action, k) for k in range(1, n + 2)}
    comps = {k: m.f(k) * varsigma(k) for k in range(1, n + 1)}
    comps[0] = CECochain(g, 0, {}, zero_form(m.chart, n))
    df = total_differential(TotalCochain(g, m.chart, n, comps))
    for k in range(1, n + 2):
        lhs = df.component(k)
        rhs = ins[k] * (1 if k % 2 else -1)
        for key in itertools.combinations(range(g.dim), k):
            w = action.witness(lhs(*key), rhs(*key))
            if w is not None:
                return f"k={k} {_names(g, key)}: {w}"
    return None


def check_2plectic_conditions(m: MomentMap) -> CheckReport:
    """The two explicit n = 2 equations, written directly in terms of omega."""
    if m.n != 2:
        raise ValueError("only for closed 3-forms")
    g, action, omega = m.algebra, m.action, m.omega
    f1, f2 = m.f(1), m.f(2)
    report = CheckReport("2-plectic moment map")
    tr = ConditionTracker(report, "f1 Hamiltonian")
    for a in range(g.dim):
        tr.check(g.names[a], action.witness(exterior_d(f1(a)), -interior_vector(action.fields[a], omega)))
    tr.close()
    tr = ConditionTracker(report, "f1([x,y]) - omega(v_x,v_y,.) = d f2(x,y)")
    for x, y in itertools.combinations(range(g.dim), 2):
        lhs = f1.evaluate([g.bracket_table[x][y]]) - insert_chain(action, omega, (x, y))
        tr.check(_names(g, (x, y)), action.witness(lhs, exterior_d(f2(x, y))))
    tr.close()
    tr = ConditionTracker(report, "-omega(v_x,v_y,v_z) = f2(x,[y,z]) - f2(y,[x,z]) + f2(z,[x,y])")
    bt = g.bracket_table
    for x, y, z in itertools.combinations(range(g.dim), 3):
        lhs = -insert_chain(action, omega, (x, y, z))
        rhs = (f2.evaluate([g.basis(x), bt[y][z]]) - f2.evaluate([g.basis(y), bt[x][z]])
               + f2.evaluate([g.basis(z), bt[x][y]]))
        tr.check(_names(g, (x, y, z)), action.witness(lhs, rhs))
    tr.close()
    return report


def check_equivariance(m: MomentMap) -> CheckReport:
    """L_{v_x} f_k(y_1..y_k) = sum_i f_k(y_1..[x,y_i]..y_k) for every k."""
    report = CheckReport("equivariance")
    for k in range(1, m.n + 1):
        fk = m.f(k)
        invariance_condition(report, f"invariant f{k}", m.action, k, lambda idx, fk=fk: fk(*idx), skew=True)
    return report


# ------------------------------------------------------------ constructors


def moment_from_extension(ext: CartanCochain, action: ActionData, check: bool = True) -> MomentMap:
    """f_k(x_1..x_k) = varsigma(k) iota(v_{x_1}..v_{x_{k-1}}) mu(x_k), mu = -P_1."""
    if check:
        rep = check_extension(ext, action)
        if not rep.ok:
            raise NotACocycle(f"not a 1-step extension: {rep.first_failure()}")
    g = action.algebra
    omega = ext.omega
    n = omega.degree - 1
    mu = {a: -ext.value(1, (a,)) for a in range(g.dim)}
    comps = {}
    for k in range(1, n + 1):
        sk = varsigma(k)
        table = {}
        for key in itertools.combinations(range(g.dim), k):
            val = insert_chain(action, mu[key[-1]], key[:-1]) * sk
            if k >= 2:
                swapped = insert_chain(action, mu[key[-2]], key[:-2] + (key[-1],)) * sk
                w = action.witness(val, -swapped)
                if w is not None:
                    raise InternalInconsistency(f"f_{k} is not skew at {_names(g, key)}: {w}")
            table[key] = val
        comps[k] = CECochain(g, k, table, zero_form(omega.chart, n - k))
    return MomentMap(action, omega, comps)


def cartan_coefficient(k: int, i: int) -> Fraction:
    """(-1)^i varsigma(k) i! (k-i)! / (2^{i-1} (k-2i+1)!)."""
    return Fraction((-1) ** i * varsigma(k) * factorial(i) * factorial(k - i),
                    2 ** (i - 1) * factorial(k - 2 * i + 1))


def _perm_sign(p: Sequence[int]) -> int:
    s = 1
    for a in range(len(p)):
        for b in range(a + 1, len(p)):
            if p[a] > p[b]:
                s = -s
    return s


def bracket_slots_value(c: CartanCochain, i: int, args: Sequence[int]) -> PolyForm:
    """P_i(y_1, [y_2,y_3], ..., [y_{2i-2}, y_{2i-1}]) on basis indices."""
    g = c.algebra
    vecs = [g.basis(args[0])]
    for t in range(1, 2 * i - 1, 2):
        br = g.bracket_table[args[t]][args[t + 1]]
        if not any(br):
            return zero_form(c.chart, c.form_degree(i))
        vecs.append(br)
    return c.evaluate(i, vecs)


def alt_cartan_term(c: CartanCochain, action: ActionData, k: int, i: int, key: Sequence[int]) -> PolyForm:
    """Alt_k(iota_g^{k-2i+1} P_i(., [.,.], ...)) at basis indices ``key``.

    The first k-2i+1 arguments are inserted (iota_{v_{x_m}}...iota_{v_{x_1}})
    into P_i evaluated on the remaining ones. Uses the skew-symmetry of the
    insertion block: Alt_k T = (m!/k!) sum over (m, 2i-1) unshuffles.
    """
    m = k - 2 * i + 1
    deg = c.form_degree(i) - m
    acc = zero_form(c.chart, deg)
    if deg < 0:
        return acc
    rest_len = 2 * i - 1
    for first, rest, sign in unshuffle_splits(k, m):
        inner = zero_form(c.chart, c.form_degree(i))
        ys = [key[r] for r in rest]
        for perm in itertools.permutations(range(rest_len)):
            val = bracket_slots_value(c, i, [ys[p] for p in perm])
            if not val.is_zero():
                inner = inner + val * _perm_sign(perm)
        if inner.is_zero():
            continue
        acc = acc + insert_chain(action, inner, [key[f] for f in first]) * sign
    return acc * Fraction(factorial(m), factorial(k))


def moment_from_cartan(c: CartanCochain, action: ActionData, check: bool = True) -> MomentMap:
    """f_k = sum_i coefficient(k,i) Alt_k(iota_g^{k-2i+1} P_i(., [.,.], ..., [.,.]))."""
    if check:
        rep = check_extension(c, action)
        if not rep.ok:
            raise NotACocycle(f"not a Cartan cocycle: {rep.first_failure()}")
    g = action.algebra
    n = c.total_degree - 1
    comps = {}
    for k in range(1, n + 1):
        table = {}
        for key in itertools.combinations(range(g.dim), k):
            val = zero_form(c.chart, n - k)
            for i in range(1, (k + 1) // 2 + 1):
                if not c.components.get(i):
                    continue
                term = alt_cartan_term(c, action, k, i, key)
                if not term.is_zero():
                    val = val + term * cartan_coefficient(k, i)
            table[key] = val
        comps[k] = CECochain(g, k, table, zero_form(c.chart, n - k))
    return MomentMap(action, c.omega, comps)


# ------------------------------------------------------------ obstructions


@dataclass
class ObstructionClass:
    cocycle: CECochain
    point: tuple[Fraction, ...]
    primitive: CECochain | None

    @property
    def trivial(self) -> bool:
        return self.primitive is not None

    @property
    def verdict(self) -> str:
        return "Trivial" if self.trivial else "NonTrivial"


def _at_point(f: PolyForm, p: Sequence) -> Fraction:
    return f.as_function().evaluate(p)


def obstruction(action: ActionData, omega: PolyForm, p: Sequence) -> ObstructionClass:
    """c_p(x_1..x_{n+1}) = (-1)^n varsigma(n+1) iota(v_1..v_{n+1}) omega |_p."""
    require_closed_invariant(action, omega)
    g = action.algebra
    n = omega.degree - 1
    pt = tuple(Fraction(x) for x in p)
    # freeze omega and the fields at p; the contraction is then a constant computation
    chart = omega.chart
    omega_p = PolyForm(chart, omega.degree, {i: chart.const(c.evaluate(pt)) for i, c in omega.components.items()})
    fields_p = [PolyMultiVec(chart, 1, {i: chart.const(c.evaluate(pt)) for i, c in v.components.items()})
                for v in action.fields]
    s = (-1) ** n * varsigma(n + 1)
    comps = {}
    for key in itertools.combinations(range(g.dim), n + 1):
        val = _at_point(interior_sequence([fields_p[a] for a in key], omega_p), pt) * s
        if val:
            comps[key] = val
    c = CECochain(g, n + 1, comps)
    if not ce_differential(c).is_zero():
        raise InternalInconsistency("obstruction cochain is not closed")
    return ObstructionClass(c, pt, is_ce_coboundary(c))


def _require_star_shaped(action: ActionData) -> None:
    if not getattr(action.manifold, "star_shaped", False):
        raise NoPrimitive("primitives need a star-shaped chart; level sets are not supported")


def _phi_cochain(g: StructLieAlgebra, phi, chart, n: int) -> CECochain:
    if isinstance(phi, CECochain):
        return phi
    return CECochain(g, 1, {(a,): f for a, f in phi.items()}, zero_form(chart, n - 1))


def _recursion(action: ActionData, omega: PolyForm, f1: CECochain, n: int) -> dict[int, CECochain]:
    """f_k = K(-delta f_{k-1} - varsigma(k) iota_g^k omega) for k = 2..n."""
    g = action.algebra
    comps = {1: f1}
    for k in range(2, n + 1):
        lhs = -ce_differential(comps[k - 1])
        ins = insert_g_k(omega, action, k)
        sk = varsigma(k)
        table = {}
        for key in itertools.combinations(range(g.dim), k):
            form = lhs(*key) - ins(*key) * sk
            if not exterior_d(form).is_zero():
                raise InternalInconsistency(f"recursion form is not closed at k={k}, {_names(g, key)}")
            table[key] = poincare_homotopy(form) if not form.is_zero() else zero_form(omega.chart, n - k)
        comps[k] = CECochain(g, k, table, zero_form(omega.chart, n - k))
    return comps


def construct_unobstructed(action: ActionData, omega: PolyForm, phi, p: Sequence) -> MomentMap:
    """Build a moment map with f_1 = phi by successive primitives, then fix f_n
    by a constant b with delta b = h|_p."""
    _require_star_shaped(action)
    require_closed_invariant(action, omega)
    g = action.algebra
    n = omega.degree - 1
    chart = omega.chart
    f1 = _phi_cochain(g, phi, chart, n)
    for a in range(g.dim):
        w = action.witness(exterior_d(f1(a)), -interior_vector(action.fields[a], omega))
        if w is not None:
            raise ValueError(f"phi({g.names[a]}) is not a Hamiltonian form for v: {w}")
    comps = _recursion(action, omega, f1, n)
    pt = tuple(Fraction(x) for x in p)
    h_forms = ce_differential(comps[n]) + insert_g_k(omega, action, n + 1) * varsigma(n + 1)
    h = {}
    for key, val in h_forms.components.items():
        fn = val.as_function()
        if not fn.is_constant():
            raise InternalInconsistency(f"h is not constant at {_names(g, key)}")
        h[key] = fn.evaluate(pt)
    b = is_ce_coboundary(CECochain(g, n + 1, h))
    if b is None:
        raise Obstructed(obstruction(action, omega, pt))
    fn = comps[n]
    fixed = {}
    for key in itertools.combinations(range(g.dim), n):
        val = fn(*key)
        bv = b(*key)
        if bv:
            val = val - PolyForm.function(chart.const(bv), chart)
        fixed[key] = val
    comps[n] = CECochain(g, n, fixed, zero_form(chart, 0))
    return MomentMap(action, omega, comps)


def extension_lift(action: ActionData, omega: PolyForm, phi, p: Sequence) -> tuple[CentralExtension, MorphismData]:
    """Morphism from the central n-extension by c_p into Ham_infty(M, omega)."""
    _require_star_shaped(action)
    require_closed_invariant(action, omega)
    g = action.algebra
    n = omega.degree - 1
    chart = omega.chart
    pt = tuple(Fraction(x) for x in p)
    obs = obstruction(action, omega, pt)
    ext = central_extension(g, obs.cocycle, n)
    target = ObservablesAlgebra(action.manifold, omega, "ham")
    f1_forms = _phi_cochain(g, phi, chart, n)
    comps = _recursion(action, omega, f1_forms, n)
    fn = comps[n]
    shifted = {}
    for key in itertools.combinations(range(g.dim), n):
        val = fn(*key)
        bv = _at_point(val, pt)
        shifted[key] = val - PolyForm.function(chart.const(bv), chart) if bv else val
    comps[n] = CECochain(g, n, shifted, zero_form(chart, 0))
    pairs = {(a,): HamPair(action.fields[a], comps[1](a)) for a in range(g.dim)}
    maps = dict(comps)
    maps[1] = CECochain(g, 1, pairs, target.zero(0))
    unit = PolyForm.function(chart.const((-1) ** n), chart)
    central = HamPair(target.zero(0).field, unit) if n == 1 else unit
    return ext, MorphismData(g, target, n, maps, central_image=central, cocycle=obs.cocycle)


def as_observables_morphism(m: MomentMap, variant: str = "linf") -> MorphismData:
    """The moment map as structure maps into the observables algebra."""
    target = ObservablesAlgebra(m.action.manifold, m.omega, variant)
    g = m.algebra
    maps = dict(m.components)
    maps[1] = CECochain(g, 1, {(a,): HamPair(m.action.fields[a], m.f(1)(a)) for a in range(g.dim)}, target.zero(0))
    return MorphismData(g, target, m.n, maps)


def modify_moment_2plectic(m: MomentMap, psi: Mapping[int, object]) -> MomentMap:
    """f1 + d psi and f2(x,y) + psi([x,y]) for psi: g -> functions."""
    if m.n != 2:
        raise ValueError("the modification applies to closed 3-forms")
    g = m.algebra
    chart = m.chart
    ps = {}
    for a in range(g.dim):
        v = psi.get(a, 0)
        if not isinstance(v, PolyForm):
            v = PolyForm.function(chart.const(0) + v, chart)
        ps[a] = v
    psi_c = CECochain(g, 1, {(a,): v for a, v in ps.items()}, zero_form(chart, 0))
    f1 = m.f(1)
    new1 = {(a,): f1(a) + exterior_d(ps[a]) for a in range(g.dim)}
    f2 = m.f(2)
    new2 = {}
    for x, y in itertools.combinations(range(g.dim), 2):
        new2[(x, y)] = f2(x, y) + psi_c.evaluate([g.bracket_table[x][y]])
    comps = dict(m.components)
    comps[1] = CECochain(g, 1, new1, zero_form(chart, 1))
    comps[2] = CECochain(g, 2, new2, zero_form(chart, 0))
    return MomentMap(m.action, m.omega, comps)


def moment_from_perfect(action: ActionData, omega: PolyForm) -> CECochain:
    """mu(x) = sum_i iota(v_{x_i} ^ v_{x_i'}) omega for x = sum_i [x_i, x_i']."""
    require_closed_invariant(action, omega)
    g = action.algebra
    chart = omega.chart
    table = {}
    for a in range(g.dim):
        acc = zero_form(chart, omega.degree - 2)
        for u, w in solve_perfect_decomposition(g, g.basis(a)):
            vu, vw = action.field_of(u), action.field_of(w)
            acc = acc + interior_vector(vw, interior_vector(vu, omega))
        wit = action.witness(exterior_d(acc), -interior_vector(action.fields[a], omega))
        if wit is not None:
            raise InternalInconsistency(f"d mu != -iota omega for {g.names[a]}: {wit}")
        table[(a,)] = acc
    return CECochain(g, 1, table, zero_form(chart, omega.degree - 2))


def check_obstruction_primitive(m: MomentMap, points: Sequence[Sequence]) -> CheckReport:
    """At each p: c_p = delta b with b = (-1)^{n+1} f_n |_p."""
    g, n = m.algebra, m.n
    report = CheckReport("moment map primitive of the obstruction")
    tr = ConditionTracker(report, "c_p = delta((-1)^{n+1} f_n|_p)")
    fn = m.f(n)
    for pi, p in enumerate(points):
        pt = tuple(Fraction(x) for x in p)
        ob = obstruction(m.action, m.omega, pt)
        b = CECochain(g, n, {key: _at_point(fn(*key), pt) * (-1) ** (n + 1)
                             for key in itertools.combinations(range(g.dim), n)})
        diff = ce_differential(b) - ob.cocycle
        if not tr.check(f"point #{pi}", None if diff.is_zero() else f"residual {diff.components}"):
            break
        if not ob.trivial:
            tr.check(f"point #{pi}", "class reported nontrivial")
    tr.close()
    return report


def triviality_verdicts(action: ActionData, omega: PolyForm, points: Sequence[Sequence]) -> list[str]:
    return [obstruction(action, omega, p).verdict for p in points]


def hamiltonian_primitives(action: ActionData, omega: PolyForm) -> CECochain:
    """phi(x) = -K(iota_{v_x} omega), a primitive of -iota_{v_x} omega on a star-shaped chart."""
    _require_star_shaped(action)
    require_closed_invariant(action, omega)
    g = action.algebra
    table = {}
    for a in range(g.dim):
        form = interior_vector(action.fields[a], omega)
        if not form.is_zero():
            table[(a,)] = -poincare_homotopy(form)
    return CECochain(g, 1, table, zero_form(omega.chart, omega.degree - 2))
