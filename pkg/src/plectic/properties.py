"""Randomized exact property suite for the calculus layer: d^2 = 0,
delta^2 = 0, the interior/Lie-derivative commutator, the bracket of local
Hamiltonian fields, the contraction identity for m fields and the Poincare
homotopy formula."""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .forms import (Chart, PolyForm, PolyMultiVec, exterior_d, interior, interior_sequence, interior_vector,
                    lie_derivative, poincare_homotopy, schouten, volume_form)
from .lie import CECochain, StructLieAlgebra, ce_differential, heisenberg3, sl2, so, solvable4, su2
from .poly import MultiPoly


def default_seed() -> int:
    """PLECTIC_SEED if set, else 0."""
    return int(os.environ.get("PLECTIC_SEED", "0"))


def _coef(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-5, 5), rng.randint(1, 4))


def random_poly(rng: random.Random, chart: Chart, max_degree: int = 2, terms: int = 3) -> MultiPoly:
    out = {}
    for _ in range(terms):
        e = [0] * chart.dim
        for _ in range(rng.randint(0, max_degree)):
            e[rng.randrange(chart.dim)] += 1
        out[tuple(e)] = out.get(tuple(e), 0) + _coef(rng)
    return MultiPoly(chart.names, out)


def random_form(rng: random.Random, chart: Chart, degree: int, terms: int = 2, max_degree: int = 2) -> PolyForm:
    acc = PolyForm.zero(chart, degree)
    for _ in range(terms):
        idx = sorted(rng.sample(range(chart.dim), degree))
        acc = acc + PolyForm.basis(chart, idx, random_poly(rng, chart, max_degree, 2))
    return acc


def random_multivec(rng: random.Random, chart: Chart, degree: int, terms: int = 2) -> PolyMultiVec:
    acc = PolyMultiVec.zero(chart, degree)
    for _ in range(terms):
        idx = sorted(rng.sample(range(chart.dim), degree))
        acc = acc + PolyMultiVec.basis(chart, idx, random_poly(rng, chart, 2, 2))
    return acc


def divergence_free_field(rng: random.Random, chart: Chart, pairs: int = 2) -> PolyMultiVec:
    """sum over random i < j of (d_j h) @_i - (d_i h) @_j; preserves the volume form."""
    comps = [chart.const(0) for _ in range(chart.dim)]
    for _ in range(pairs):
        i, j = sorted(rng.sample(range(chart.dim), 2))
        h = random_poly(rng, chart, 3, 3)
        comps[i] = comps[i] + h.diff(j)
        comps[j] = comps[j] - h.diff(i)
    return PolyMultiVec.vector_field(chart, comps)


ALGEBRAS: list[Callable[[], StructLieAlgebra]] = [su2, sl2, heisenberg3, solvable4, lambda: so(4)]


def check_d_squared(rng: random.Random) -> str | None:
    chart = Chart.standard(rng.randint(2, 4))
    a = random_form(rng, chart, rng.randint(0, chart.dim - 2), max_degree=3)
    dd = exterior_d(exterior_d(a))
    return None if dd.is_zero() else f"d d {a!r} = {dd!r}"


def check_delta_squared(rng: random.Random) -> str | None:
    g = rng.choice(ALGEBRAS)()
    k = rng.randint(0, min(g.dim - 2, 3))
    c = CECochain(g, k, {key: _coef(rng) for key in itertools.combinations(range(g.dim), k) if rng.random() < 0.7})
    dd = ce_differential(ce_differential(c))
    return None if dd.is_zero() else f"delta delta on {g.names} degree {k}: {dd.components}"


def check_commutator(rng: random.Random) -> str | None:
    """iota([u,v]) a = (-1)^{(deg u - 1) deg v} L_u iota(v) a - iota(v) L_u a."""
    chart = Chart.standard(4)
    du, dv = rng.randint(1, 2), rng.randint(1, 2)
    k = min(chart.dim, max(du + dv - 1, dv) + rng.randint(0, 1))
    u, v = random_multivec(rng, chart, du), random_multivec(rng, chart, dv)
    a = random_form(rng, chart, k)
    lhs = interior(schouten(u, v), a)
    s = -1 if ((du - 1) * dv) % 2 else 1
    rhs = lie_derivative(u, interior(v, a)) * s - interior(v, lie_derivative(u, a))
    diff = lhs - rhs
    return None if diff.is_zero() else f"deg u={du}, deg v={dv}, deg a={k}: residual {diff!r}"


def check_bracket_hamiltonian(rng: random.Random) -> str | None:
    """d iota(v1 ^ v2) omega = -iota_{[v1,v2]} omega for volume-preserving fields."""
    chart = Chart.standard(rng.randint(3, 4))
    omega = volume_form(chart) * _nonzero(rng)
    v1, v2 = divergence_free_field(rng, chart), divergence_free_field(rng, chart)
    lhs = exterior_d(interior_sequence([v1, v2], omega))
    rhs = -interior_vector(schouten(v1, v2), omega)
    diff = lhs - rhs
    return None if diff.is_zero() else f"residual {diff!r}"


def check_big_identity(rng: random.Random, max_m: int = 4) -> str | None:
    """d iota(v_1..v_m) omega = (-1)^m sum_{i<j} (-1)^{i+j} iota([v_i,v_j] ^ v_1..^i..^j..v_m) omega."""
    m = rng.randint(2, max_m)
    chart = Chart.standard(rng.randint(max(m, 3), max(m + 1, 4)))
    omega = volume_form(chart) * _nonzero(rng)
    vs = [divergence_free_field(rng, chart, pairs=1) for _ in range(m)]
    lhs = exterior_d(interior_sequence(vs, omega))
    rhs = PolyForm.zero(chart, omega.degree - m + 1)
    for i, j in itertools.combinations(range(m), 2):
        br = schouten(vs[i], vs[j])
        if br.is_zero():
            continue
        rest = [v for t, v in enumerate(vs) if t not in (i, j)]
        term = interior_sequence([br] + rest, omega)
        rhs = rhs + (term if (i + j) % 2 == 0 else -term)
    if m % 2:
        rhs = -rhs
    diff = lhs - rhs
    return None if diff.is_zero() else f"m={m}: residual {diff!r}"


def check_homotopy(rng: random.Random) -> str | None:
    """dK a + K da = a for forms of positive degree."""
    chart = Chart.standard(rng.randint(2, 4))
    a = random_form(rng, chart, rng.randint(1, chart.dim), max_degree=3)
    da = exterior_d(a)
    total = exterior_d(poincare_homotopy(a))
    if not da.is_zero():
        total = total + poincare_homotopy(da)
    diff = total - a
    return None if diff.is_zero() else f"residual {diff!r}"


def _nonzero(rng: random.Random) -> Fraction:
    return _coef(rng) or Fraction(1)


PROPERTIES: dict[str, Callable[[random.Random], str | None]] = {
    "d^2 = 0": check_d_squared,
    "delta^2 = 0": check_delta_squared,
    "interior/Lie derivative commutator": check_commutator,
    "bracket of local Hamiltonian fields": check_bracket_hamiltonian,
    "contraction identity m <= 4": check_big_identity,
    "dK + Kd = id": check_homotopy,
}


@dataclass
class PropertyOutcome:
    name: str
    instances: int
    failures: int
    first_failure: str | None

    @property
    def ok(self) -> bool:
        return self.failures == 0


def run_property_suite(count: int = 200, seed: int | None = None,
                       names: list[str] | None = None) -> list[PropertyOutcome]:
    seed = default_seed() if seed is None else seed
    out = []
    for t, (name, fn) in enumerate(PROPERTIES.items()):
        if names is not None and name not in names:
            continue
        rng = random.Random(f"{seed}:{name}")
        failures, first = 0, None
        for _ in range(count):
            w = fn(rng)
            if w is not None:
                failures += 1
                first = first or w
        out.append(PropertyOutcome(name, count, failures, first))
    return out
