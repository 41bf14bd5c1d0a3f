"""The Cartan 3-form on SU(2) = S^3, modelled on unit quaternions
g = x1 + x2 i + x3 j + x4 k, with the conjugation and left-translation actions
of su(2) = Im H (basis i/2, j/2, k/2)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .equivariant import ActionData, CartanCochain, cartan_from_moment
from .forms import PolyForm, PolyMultiVec, wedge
from .levelset import LevelSetChart
from .lie import su2
from .moment import MomentMap, ObstructionClass, moment_from_extension, obstruction
from .report import CheckReport, ConditionTracker

# (a, b) -> (sign, c) with e_a e_b = sign e_c in the basis 1, i, j, k
_QTABLE = {}
for _a in range(4):
    _QTABLE[(0, _a)] = (1, _a)
    _QTABLE[(_a, 0)] = (1, _a)
for _a in range(1, 4):
    _QTABLE[(_a, _a)] = (-1, 0)
for _a, _b, _c in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
    _QTABLE[(_a, _b)] = (1, _c)
    _QTABLE[(_b, _a)] = (-1, _c)


def qmul(p: Sequence, q: Sequence, mul: Callable = lambda a, b: a * b, zero=0) -> list:
    """Quaternion product for entries in any ring-like structure."""
    out = [zero] * 4
    for a in range(4):
        for b in range(4):
            s, c = _QTABLE[(a, b)]
            term = mul(p[a], q[b])
            out[c] = out[c] + term if s > 0 else out[c] - term
    return out


def qconj(p: Sequence) -> list:
    return [p[0], -p[1], -p[2], -p[3]]


def basis_element(a: int) -> tuple[Fraction, ...]:
    """E_a = e_{a+1}/2 in Im H for a = 0, 1, 2."""
    v = [Fraction(0)] * 4
    v[a + 1] = Fraction(1, 2)
    return tuple(v)


def inner(u: Sequence, v: Sequence) -> Fraction:
    """Ad-invariant inner product Re(u conj(v))."""
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


@dataclass
class Cartan3Data:
    action: ActionData
    omega: PolyForm
    extension: CartanCochain

    @property
    def levelset(self) -> LevelSetChart:
        return self.action.manifold


def _maurer_cartan(ls: LevelSetChart) -> tuple[list[PolyForm], list[PolyForm]]:
    """Imaginary parts of conj(g) dg and dg conj(g)."""
    chart = ls.ambient
    g = chart.coords()
    dg = [PolyForm.basis(chart, [m], 1) for m in range(4)]
    zero = PolyForm.zero(chart, 1)
    left = qmul(qconj(g), dg, lambda a, b: b * a, zero)
    right = qmul(dg, qconj(g), lambda a, b: a * b, zero)
    return left[1:], right[1:]


def _fields(ls: LevelSetChart, left_translation: bool) -> list[PolyMultiVec]:
    chart = ls.ambient
    g = chart.coords()
    out = []
    for a in range(3):
        x = [chart.const(c) for c in basis_element(a)]
        xg = qmul(x, g)
        vec = [-c for c in xg] if left_translation else [u - w for u, w in zip(qmul(g, x), xg)]
        out.append(PolyMultiVec.vector_field(chart, vec))
    return out


def cartan_3form(count: int = 20, seed: int = 0) -> Cartan3Data:
    """omega = <theta_L, [theta_L, theta_L]>/12 with the conjugation action
    v_x(g) = gx - xg and mu(x) = <theta_L + theta_R, x>/2."""
    ls = LevelSetChart.sphere(3, count=count, seed=seed)
    action = ActionData(su2(), ls, _fields(ls, False))
    tl, tr = _maurer_cartan(ls)
    # <e_c, [e_a, e_b]> = 2 eps_abc, so the 1/12 normalisation leaves theta^1 theta^2 theta^3
    omega = wedge(wedge(tl[0], tl[1]), tl[2])
    mu = {a: (tl[a] + tr[a]) * Fraction(1, 4) for a in range(3)}
    return Cartan3Data(action, omega, cartan_from_moment(omega, action.algebra, mu))


def cartan3_moment(data: Cartan3Data) -> MomentMap:
    return moment_from_extension(data.extension, data.action)


def f2_closed_form(point: Sequence, a: int, b: int) -> Fraction:
    """1/2 <(Ad_g - Ad_{g^-1}) x, y> with Ad_g x = g x conj(g) on unit quaternions."""
    g = [Fraction(c) for c in point]
    x, y = basis_element(a), basis_element(b)
    ad = qmul(qmul(g, x), qconj(g))
    ad_inv = qmul(qmul(qconj(g), x), g)
    return Fraction(1, 2) * inner([u - w for u, w in zip(ad, ad_inv)], y)


def check_cartan3(data: Cartan3Data, m: MomentMap | None = None) -> CheckReport:
    """d mu(x) = -iota_{v_x} omega and the closed form of f_2 at every sample point."""
    from .forms import exterior_d, interior_vector

    action, omega = data.action, data.omega
    g = action.algebra
    report = CheckReport("Cartan 3-form")
    tr = ConditionTracker(report, "d mu = -iota omega")
    for a in range(3):
        mu = -data.extension.value(1, (a,))
        tr.check(g.names[a], action.witness(exterior_d(mu), -interior_vector(action.fields[a], omega)))
    tr.close()
    m = m or cartan3_moment(data)
    f2 = m.f(2)
    tr = ConditionTracker(report, "f2(x,y)(g) = 1/2 <(Ad_g - Ad_g^-1) x, y>")
    for a in range(3):
        for b in range(3):
            fn = f2(a, b).as_function() if a != b else None
            for pi, p in enumerate(data.levelset.sample_points):
                got = fn.evaluate(p) if fn is not None else Fraction(0)
                want = f2_closed_form(p, a, b)
                if got != want:
                    tr.check(f"{g.names[a]},{g.names[b]} at point #{pi}", f"{got} != {want}")
                    break
    tr.close()
    return report


def left_translation_action(count: int = 20, seed: int = 0) -> tuple[ActionData, PolyForm]:
    """su(2) acting on S^3 by left translations, v_x(g) = -xg."""
    data = cartan_3form(count, seed)
    ls = data.levelset
    return ActionData(su2(), ls, _fields(ls, True)), data.omega


def left_translation_obstruction(points: Sequence[Sequence] | None = None) -> list[ObstructionClass]:
    """Obstruction classes of the left-translation action at the given points."""
    action, omega = left_translation_action()
    if points is None:
        points = [(1, 0, 0, 0)] + list(action.manifold.sample_points[:2])
    return [obstruction(action, omega, p) for p in points]
