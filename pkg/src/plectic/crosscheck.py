"""Random morphism datasets for comparing the component equations of a
morphism from a Lie algebra into a Lie n-algebra with the coalgebra
chain-map condition."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .coalgebra import coalgebra_check_of
from .lie import CECochain, StructLieAlgebra, abelian, ce_differential, heisenberg3, killing_3cocycle, su2
from .linfty import (BracketTable, GradedSpace, MorphismData, Vec, central_extension, check_lie_to_linfty_morphism,
                     lie_table)


def solvable3() -> StructLieAlgebra:
    """[h,a] = a, [h,b] = 2b."""
    return StructLieAlgebra(("h", "a", "b"), {(0, 1): (0, 1, 0), (0, 2): (0, 0, 2)})


def r2() -> StructLieAlgebra:
    """The non-abelian 2-dimensional algebra, [h,a] = a."""
    return StructLieAlgebra(("h", "a"), {(0, 1): (0, 1)})


@dataclass
class MorphismDataset:
    label: str
    morphism: MorphismData
    source: BracketTable
    expect_pass: bool | None = None


@dataclass
class CrosscheckResult:
    label: str
    components_ok: bool
    coalgebra_ok: bool
    component_failure: str | None
    coalgebra_failure: str | None

    @property
    def agree(self) -> bool:
        return self.components_ok == self.coalgebra_ok


def _rand(rng: random.Random) -> Fraction:
    v = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return v or Fraction(1)


def _random_cochain(g: StructLieAlgebra, k: int, rng: random.Random) -> CECochain:
    return CECochain(g, k, {key: _rand(rng) for key in itertools.combinations(range(g.dim), k)})


def _exact_target(g: StructLieAlgebra, n: int, rng: random.Random):
    b = _random_cochain(g, n, rng)
    c = ce_differential(b)
    return b, central_extension(g, c, n)


def _morphism(g, ext, n, f1_images, fn: CECochain | None) -> MorphismData:
    maps = {1: CECochain(g, 1, {(a,): v for a, v in enumerate(f1_images)}, Vec())}
    if fn is not None:
        maps[n] = fn
    return MorphismData(g, ext.table, n, maps)


def _central(g, b: CECochain, r: int, sign=-1) -> CECochain:
    return CECochain(g, b.degree, {k: Vec.basis(r, sign * v) for k, v in b.components.items()}, Vec())


PLAN = [
    (su2, 2, "pass"),
    (solvable3, 2, "perturb-f1"),
    (solvable3, 2, "pass"),
    (solvable3, 2, "perturb-fn"),
    (heisenberg3, 3, "pass"),
    (su2, 2, "non-exact"),
    (su2, 3, "perturb-f1"),
    (heisenberg3, 2, "perturb-f1"),
]


def random_datasets(count: int = 8, seed: int = 0) -> list[MorphismDataset]:
    """Passing morphisms into exact central extensions with f_1 the inclusion
    and f_n = -b', plus injected failures, and one fixed Heisenberg dataset."""
    rng = random.Random(seed)
    out = []
    for t in range(count):
        make, n, kind = PLAN[t % len(PLAN)]
        g = make()
        b, ext = _exact_target(g, n, rng)
        if kind == "non-exact":
            ext = central_extension(g, killing_3cocycle(g), n)
        r = ext.central
        images = [Vec.basis(a) for a in range(g.dim)]
        fn = _central(g, b, r)
        if kind == "perturb-f1":
            images[0] = images[0] * rng.choice([2, 3, -1, Fraction(1, 2)])
        elif kind == "perturb-fn":
            extra = _random_cochain(g, n, rng)
            while ce_differential(extra).is_zero():
                extra = _random_cochain(g, n, rng)
            fn = _central(g, b + extra, r)
        elif kind == "non-exact":
            fn = None
        out.append(MorphismDataset(f"{'/'.join(g.names)} n={n} {kind}", _morphism(g, ext, n, images, fn),
                                   lie_table(g), kind == "pass"))
    out.append(heisenberg_dataset())
    return out


def heisenberg_dataset() -> MorphismDataset:
    """Abelian R^2 into heisenberg3 plus u in degree -1 with l_1(u) = z:
    f_1 includes x, y and f_2(e1, e2) = -u."""
    sp = GradedSpace(("x", "y", "z", "u"), (0, 0, 0, -1), 2)
    table = BracketTable(sp, {1: {(3,): Vec.basis(2)}, 2: {(0, 1): Vec.basis(2)}})
    g = abelian(2)
    maps = {1: CECochain(g, 1, {(0,): Vec.basis(0), (1,): Vec.basis(1)}, Vec()),
            2: CECochain(g, 2, {(0, 1): Vec.basis(3, -1)}, Vec())}
    return MorphismDataset("heisenberg-u", MorphismData(g, table, 2, maps), lie_table(g), True)


def run_crosscheck(ds: MorphismDataset) -> CrosscheckResult:
    comp = check_lie_to_linfty_morphism(ds.morphism)
    coal = coalgebra_check_of(ds.morphism, ds.source)
    cf, qf = comp.first_failure(), coal.first_failure()
    return CrosscheckResult(ds.label, comp.ok, coal.ok, None if cf is None else str(cf),
                            None if qf is None else str(qf))
