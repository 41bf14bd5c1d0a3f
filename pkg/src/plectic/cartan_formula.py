"""Audit of the closed formula for moment maps from Cartan cocycles against
its low-degree expansions, as identities of multilinear maps."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

from .equivariant import ActionData, CartanCochain, fundamental_fields_linear, insert_chain, zero_form
from .forms import Chart, PolyForm
from .invariant import multisets
from .lie import LinearAction, StructLieAlgebra, adjoint_action, so, so_matrix, so_pairs, solvable4, su2
from .moment import _perm_sign, alt_cartan_term, bracket_slots_value, cartan_coefficient

MAX_K = 5


def raw_term(c: CartanCochain, action: ActionData, i: int, args: Sequence[int]) -> PolyForm:
    """iota_{v_{x_m}}..iota_{v_{x_1}} P_i(x_{m+1}, [x_{m+2}, x_{m+3}], ...) with m = k-2i+1."""
    m = len(args) - 2 * i + 1
    inner = bracket_slots_value(c, i, args[m:])
    if inner.is_zero():
        return inner if m == 0 else zero_form(c.chart, max(c.form_degree(i) - m, 0))
    return insert_chain(action, inner, args[:m])


def alt_prefix(func: Callable[[Sequence[int]], PolyForm], args: Sequence[int], r: int, zero: PolyForm) -> PolyForm:
    """(1/r!) sum over permutations of the first r slots, with sign."""
    acc = zero
    head, tail = list(args[:r]), list(args[r:])
    for perm in itertools.permutations(range(r)):
        val = func([head[p] for p in perm] + tail)
        if not val.is_zero():
            acc = acc + val * _perm_sign(perm)
    return acc * Fraction(1, factorial(r))


# (coefficient, i, number of skew-symmetrized leading slots) for each k
DISPLAYS: dict[int, list[tuple[int, int, int]]] = {
    1: [(-1, 1, 1)],
    2: [(-1, 1, 2)],
    3: [(1, 1, 3), (-1, 2, 3)],
    4: [(1, 1, 4), (-2, 2, 4)],
    5: [(-1, 1, 5), (3, 2, 5), (-3, 3, 5)],
}

# the k = 5 display as printed, with Alt_4 on the middle term
DISPLAY_F5_PRINTED: list[tuple[int, int, int]] = [(-1, 1, 5), (3, 2, 4), (-3, 3, 5)]


def display_value(c: CartanCochain, action: ActionData, k: int, key: Sequence[int],
                  terms: Sequence[tuple[int, int, int]]) -> PolyForm:
    acc = zero_form(c.chart, max(c.total_degree - 1 - k, 0))
    for coeff, i, r in terms:
        if not c.components.get(i):
            continue
        if c.form_degree(i) - (k - 2 * i + 1) < 0:
            continue
        val = alt_prefix(lambda a, i=i: raw_term(c, action, i, a), key, r, acc * 0)
        acc = acc + val * coeff
    return acc


def formula_value(c: CartanCochain, action: ActionData, k: int, key: Sequence[int]) -> PolyForm:
    acc = zero_form(c.chart, max(c.total_degree - 1 - k, 0))
    for i in range(1, (k + 1) // 2 + 1):
        if not c.components.get(i) or c.form_degree(i) - (k - 2 * i + 1) < 0:
            continue
        acc = acc + alt_cartan_term(c, action, k, i, key) * cartan_coefficient(k, i)
    return acc


@dataclass
class AuditDataset:
    label: str
    action: ActionData
    cochain: CartanCochain


@dataclass
class AuditResult:
    label: str
    agree: dict[int, bool] = field(default_factory=dict)
    printed_f5_agrees: bool | None = None
    witness: dict[int, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.agree.values())


def _random_form(rng: random.Random, chart: Chart, degree: int, terms: int = 2) -> PolyForm:
    acc = PolyForm.zero(chart, degree)
    for _ in range(terms):
        idx = sorted(rng.sample(range(chart.dim), degree))
        coeff = chart.const(Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
        coeff = coeff + chart.var(rng.randrange(chart.dim)) * rng.randint(-3, 3)
        acc = acc + PolyForm.basis(chart, idx, coeff)
    return acc


def _padded(action: LinearAction, size: int) -> LinearAction:
    pad = size - action.size
    mats = [[list(r) + [0] * pad for r in m] + [[0] * size for _ in range(pad)] for m in action.matrices]
    return LinearAction.of(action.algebra, mats)


def random_dataset(g: StructLieAlgebra, lin: LinearAction, rng: random.Random, label: str,
                   total_degree: int = 6, size: int = 6) -> AuditDataset:
    """Random P_1, P_2, P_3 (not necessarily a cocycle: the identity is linear in P)."""
    action = fundamental_fields_linear(_padded(lin, size))
    chart = action.chart
    comps: dict[int, dict] = {0: {(): _random_form(rng, chart, total_degree, 1)}}
    for i in range(1, total_degree // 2 + 1):
        table = {}
        for ms in multisets(g.dim, i):
            if rng.random() < 0.6:
                table[ms] = _random_form(rng, chart, total_degree - 2 * i)
        comps[i] = table
    return AuditDataset(label, action, CartanCochain(g, chart, total_degree, comps))


def standard_datasets(count: int = 12, seed: int = 0) -> list[AuditDataset]:
    """Cycle through su(2) and solvable4 (adjoint) and so(4) (defining action)."""
    rng = random.Random(seed)
    so4 = LinearAction.of(so(4), [so_matrix(4, i, j) for i, j in so_pairs(4)])
    sources = [("su2", su2(), adjoint_action(su2())), ("solvable4", solvable4(), adjoint_action(solvable4())),
               ("so4", so(4), so4)]
    out = []
    for t in range(count):
        name, g, lin = sources[t % len(sources)]
        out.append(random_dataset(g, lin, rng, f"{name}#{t // len(sources)}"))
    return out


def audit_dataset(ds: AuditDataset, max_k: int = MAX_K) -> AuditResult:
    c, action = ds.cochain, ds.action
    res = AuditResult(ds.label)
    dim = c.algebra.dim
    for k in range(1, max_k + 1):
        res.agree[k] = True
        for key in itertools.combinations(range(dim), k):
            diff = formula_value(c, action, k, key) - display_value(c, action, k, key, DISPLAYS[k])
            if not diff.is_zero():
                res.agree[k] = False
                res.witness[k] = f"{key}: {diff}"
                break
    if max_k >= 5 and dim >= 5:
        res.printed_f5_agrees = all(
            (formula_value(c, action, 5, key) - display_value(c, action, 5, key, DISPLAY_F5_PRINTED)).is_zero()
            for key in itertools.combinations(range(dim), 5))
    return res


def coefficient_table(max_k: int = MAX_K) -> dict[tuple[int, int], Fraction]:
    return {(k, i): cartan_coefficient(k, i) for k in range(1, max_k + 1) for i in range(1, (k + 1) // 2 + 1)}


def display_coefficients_match(max_k: int = MAX_K) -> bool:
    """The closed-form coefficients reproduce the display coefficients."""
    return all(coefficient_table()[(k, i)] == coeff for k in range(1, max_k + 1) for coeff, i, _ in DISPLAYS[k])
