"""The acceptance suite: twelve timed, exact checks over the whole package."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import cartan3, cartan_formula, crosscheck, scenarios
from .equivariant import change_of_basis, check_extension
from .errors import Obstructed
from .lie import abelian, is_ce_coboundary, killing_3cocycle, su2
from .linalg import inverse
from .linfty import central_extension, check_generalized_jacobi
from .moment import (construct_unobstructed, moment_from_cartan, moment_from_extension, obstruction,
                     verify_moment)
from .properties import run_property_suite
from .sphere import sphere_two_step


@dataclass
class CriterionResult:
    number: int
    title: str
    ok: bool
    seconds: float
    limit: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.ok and self.seconds < self.limit

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        text = f"{verdict} [{self.number:2}] {self.title} ({self.seconds:.2f}s < {self.limit:g}s)"
        return text + (f": {self.detail}" if self.detail else "")


def _timed(fn: Callable[[], tuple[bool, str]]) -> tuple[bool, str, float]:
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as e:  # a crash is a failed criterion, reported with its message
        ok, detail = False, f"{type(e).__name__}: {e}"
    return ok, detail, time.perf_counter() - start


def classical_recovery() -> tuple[bool, str]:
    report = scenarios.run_builtin("sorn-2")
    check = next(c for c in report.checks if c.name == "classical-moment")
    return report.ok and check.passed, f"f1(e12) = {check.details.get('f1(e12)')}"


def sorn_moment(n: int) -> Callable[[], tuple[bool, str]]:
    def run() -> tuple[bool, str]:
        s = scenarios.build_sorn(n)
        m = moment_from_extension(s.cartan, s.action)
        rep = verify_moment(m)
        return rep.ok, "" if rep.ok else str(rep.first_failure())
    return run


def coefficient_audit() -> tuple[bool, str]:
    results = [cartan_formula.audit_dataset(ds) for ds in cartan_formula.standard_datasets(12)]
    bad = [r for r in results if not r.ok]
    printed = [r.printed_f5_agrees for r in results if r.printed_f5_agrees is not None]
    f5 = "printed f5 display disagrees" if printed and not all(printed) else "printed f5 display agrees"
    detail = f"{len(results) - len(bad)}/{len(results)} datasets agree for k = 1..5; {f5}"
    if bad:
        detail += f"; first failure {bad[0].label}: {bad[0].witness}"
    return not bad and cartan_formula.display_coefficients_match(), detail


ONE_STEP_SCENARIOS = ("sorn-2", "sorn-3", "sorn-4", "linear-action", "ctlift-2-1", "ctlift-3-2", "sphere-3",
                      "cartan3form-su2")


def _random_basis(rng: random.Random, d: int) -> list[list[Fraction]]:
    while True:
        A = [[Fraction(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(d)] for _ in range(d)]
        if inverse(A) is not None:
            return A


def one_step_agreement(instances: int = 10, seed: int = 0) -> tuple[bool, str]:
    rng = random.Random(seed)
    total = 0
    for name in ONE_STEP_SCENARIOS:
        s = scenarios.builtin(name)
        for t in range(instances):
            scale = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
            c, action = change_of_basis(s.cartan.scaled(scale), s.action, _random_basis(rng, s.algebra.dim))
            a = moment_from_cartan(c, action, check=False)
            b = moment_from_extension(c, action, check=False)
            for k in range(1, a.n + 1):
                for key in itertools.combinations(range(action.algebra.dim), k):
                    w = action.witness(a.f(k)(*key), b.f(k)(*key))
                    if w is not None:
                        return False, f"{name} instance {t}: f{k}{key}: {w}"
            total += 1
    return True, f"{total} instances over {len(ONE_STEP_SCENARIOS)} scenarios agree componentwise"


def sphere_equations() -> tuple[bool, str]:
    counts = []
    for n in range(2, 6):
        data = sphere_two_step(n, count=20)
        rep = check_extension(data.cochain, data.action)
        if not rep.ok:
            return False, f"S^{n}: {rep.first_failure()}"
        counts.append(f"S^{n}: {len(data.levelset.sample_points)} points")
    return True, ", ".join(counts)


def extensions_jacobi() -> tuple[bool, str]:
    g = su2()
    c = killing_3cocycle(g)
    string = central_extension(g, c, 2)
    translations = scenarios.build_heisenberg()
    heis = central_extension(abelian(3), obstruction(translations.action, translations.omega, (0, 0, 0)).cocycle, 2)
    for label, ext in (("string(su2)", string), ("heisenberg", heis)):
        rep = check_generalized_jacobi(ext.table, ext.n + 2)
        if not rep.ok:
            return False, f"{label}: {rep.first_failure()}"
    if is_ce_coboundary(c) is not None:
        return False, "Cartan 3-cocycle is exact"
    return True, "Jacobi through arity 4 for both; Cartan 3-cocycle NonTrivial"


def coalgebra_equivalence() -> tuple[bool, str]:
    datasets = crosscheck.random_datasets(8)
    results = [crosscheck.run_crosscheck(ds) for ds in datasets]
    for ds, r in zip(datasets, results):
        if not r.agree:
            return False, f"{r.label}: components {r.components_ok}, chain map {r.coalgebra_ok}"
        if ds.expect_pass is not None and r.components_ok != ds.expect_pass:
            return False, f"{r.label}: expected {'pass' if ds.expect_pass else 'failure'}"
        if ds.morphism.source.dim > 3 or ds.morphism.target.space.dim > 4:
            return False, f"{r.label}: dataset outside the size bounds"
    caught = sum(1 for r in results if not r.components_ok)
    return True, f"{len(results)} datasets agree, {caught} injected failures caught by both sides"


def obstruction_behavior() -> tuple[bool, str]:
    t = scenarios.build_translations()
    classes = [obstruction(t.action, t.omega, p) for p in t.points]
    if len({c.verdict for c in classes}) != 1 or classes[0].trivial:
        return False, f"translations verdicts {[c.verdict for c in classes]}"
    if any(c.cocycle.components != {(0, 1): Fraction(-1)} for c in classes):
        return False, f"translations class {classes[0].cocycle.components}"
    try:
        construct_unobstructed(t.action, t.omega, scenarios.hamiltonian_primitives(t.action, t.omega), t.points[0])
        return False, "translations construction did not raise Obstructed"
    except Obstructed:
        pass
    s = scenarios.build_sorn(3)
    classes = [obstruction(s.action, s.omega, p) for p in s.points]
    if len(s.points) < 3 or not all(c.trivial for c in classes):
        return False, f"SO(3) verdicts {[c.verdict for c in classes]}"
    m = construct_unobstructed(s.action, s.omega, s.phi, s.points[0])
    rep = verify_moment(m)
    return rep.ok, "translations NonTrivial c(e1,e2) = -1 and Obstructed; SO(3) Trivial at 3 points, constructed"


def noncocycle() -> tuple[bool, str]:
    report = scenarios.run_builtin("noteq-torus")
    flag = next(c for c in report.checks if c.name == "non-cocycle-moment-map")
    return report.ok, flag.details.get("extension", flag.witness or "")


def property_suite(count: int = 200) -> tuple[bool, str]:
    outcomes = run_property_suite(count=count)
    bad = [o for o in outcomes if not o.ok]
    detail = ", ".join(f"{o.name}: {o.instances - o.failures}/{o.instances}" for o in outcomes)
    return not bad and all(o.instances >= 200 for o in outcomes), detail


def su2_traces() -> tuple[bool, str]:
    report = scenarios.run_builtin("sutraces")
    return report.ok, "q3 = 0, q4(e_i,e_j,e_j,e_j) = -1/8 delta_ij, q2 and q4 nondegenerate"


def cartan3_scenario() -> tuple[bool, str]:
    data = cartan3.cartan_3form(count=20)
    rep = cartan3.check_cartan3(data)
    n = len(data.levelset.sample_points)
    return rep.ok and n >= 20, f"{n} sample points" if rep.ok else str(rep.first_failure())


CRITERIA: list[tuple[int, str, float, Callable[[], tuple[bool, str]]]] = [
    (1, "classical recovery on sorn-2", 1, classical_recovery),
    (2, "SO(2) on R^2 moment map verifies", 10, sorn_moment(2)),
    (2, "SO(3) on R^3 moment map verifies", 10, sorn_moment(3)),
    (2, "SO(4) on R^4 moment map verifies", 10, sorn_moment(4)),
    (3, "Cartan coefficient audit k = 1..5", 30, coefficient_audit),
    (4, "1-step agreement of the two constructions", 30, one_step_agreement),
    (5, "sphere extension equations n = 2..5", 60, sphere_equations),
    (6, "string and Heisenberg Jacobi, string class nontrivial", 5, extensions_jacobi),
    (7, "component equations vs chain-map condition", 60, coalgebra_equivalence),
    (8, "obstruction behaviour", 10, obstruction_behavior),
    (9, "non-cocycle moment map on the torus chart", 5, noncocycle),
    (10, "calculus property suite", 120, property_suite),
    (11, "su(2) symmetrized traces", 5, su2_traces),
    (12, "Cartan 3-form on S^3", 60, cartan3_scenario),
]


def run_criterion(index: int) -> CriterionResult:
    number, title, limit, fn = CRITERIA[index]
    ok, detail, seconds = _timed(fn)
    return CriterionResult(number, title, ok, seconds, limit, detail)


def run_acceptance() -> list[CriterionResult]:
    return [run_criterion(i) for i in range(len(CRITERIA))]
