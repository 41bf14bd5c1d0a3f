"""The volume form of S^n with the rotation action of so(n) fixing the last
coordinate, and its explicit 2-step extension in the Cartan model."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .equivariant import ActionData, CartanCochain, fundamental_fields_linear
from .errors import UnsupportedN
from .forms import Chart, PolyForm, interior_vector
from .levelset import LevelSetChart
from .lie import LinearAction, so, so_matrix, so_pairs


@dataclass
class SphereData:
    n: int
    action: ActionData
    cochain: CartanCochain
    alpha: PolyForm

    @property
    def levelset(self) -> LevelSetChart:
        return self.action.manifold


def embedded_so_action(n: int) -> LinearAction:
    """so(n) acting on R^{n+1}, fixing the last coordinate."""
    mats = []
    for i, j in so_pairs(n):
        m = so_matrix(n, i, j)
        mats.append([list(r) + [Fraction(0)] for r in m] + [[Fraction(0)] * (n + 1)])
    return LinearAction.of(so(n), mats)


def _hat_form(chart: Chart, n: int, removed: set[int], coeff) -> PolyForm:
    """coeff * dx_1 ... dx_n with the 0-based indices in ``removed`` omitted."""
    idx = [k for k in range(n) if k not in removed]
    return PolyForm.basis(chart, idx, coeff)


def sphere_volume(chart: Chart, n: int) -> tuple[PolyForm, PolyForm]:
    """(omega, alpha): omega = sum_k (-1)^{k+1} x_k dx_1..^k..dx_{n+1} and its
    planar part alpha on the first n coordinates."""
    x = chart.coords()
    omega = PolyForm.zero(chart, n)
    for k in range(n + 1):
        omega = omega + _hat_form(chart, n + 1, {k}, x[k] * (-1) ** k)
    alpha = PolyForm.zero(chart, n - 1)
    for k in range(n):
        alpha = alpha + _hat_form(chart, n, {k}, x[k] * (-1) ** k)
    return omega, alpha


def _crossings(i: int, j: int, l: int, m: int) -> int:
    return (-1) ** sum(1 for x in (i, j) if l < x < m)


def sphere_two_step(n: int, count: int = 20, seed: int = 0) -> SphereData:
    """omega + P + Q on S^n for 2 <= n <= 5 (Q = 0 for n < 4)."""
    if not 2 <= n <= 5:
        raise UnsupportedN(f"explicit 2-step extension is provided for 2 <= n <= 5, got {n}")
    ls = LevelSetChart.sphere(n, count=count, seed=seed)
    chart = ls.ambient
    action = fundamental_fields_linear(embedded_so_action(n), manifold=ls)
    omega, alpha = sphere_volume(chart, n)
    t = chart.var(n)
    pairs = so_pairs(n)
    cubic = t - t ** 3 / 3
    quintic = t ** 3 / 3 - t ** 5 / 15
    P = {}
    for a, (i, j) in enumerate(pairs):
        # 1-based signs (-1)^{i+j} coincide with the 0-based ones
        first = interior_vector(action.fields[a], alpha) * (t * Fraction((-1) ** (n + 1), n))
        second = _hat_form(chart, n, {i, j}, cubic * (Fraction(n + 1, n) * (-1) ** (i + j + n)))
        P[(a,)] = first + second
    Q = {}
    if n >= 4:
        for a, (i, j) in enumerate(pairs):
            for b in range(a, len(pairs)):
                l, m = pairs[b]
                if len({i, j, l, m}) < 4:
                    continue
                coeff = Fraction(n + 1, 2 * n) * (-1) ** (n + i + j + l + m) * _crossings(i, j, l, m)
                Q[(a, b)] = _hat_form(chart, n, {i, j, l, m}, quintic * coeff)
    comps = {0: {(): omega}, 1: P}
    if Q:
        comps[2] = Q
    cochain = CartanCochain(action.algebra, chart, n, comps)
    return SphereData(n, action, cochain, alpha)
