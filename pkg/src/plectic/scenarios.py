"""Scenarios: JSON schema, built-in examples and the check runner."""

from __future__ import annotations

import itertools
import json
import re
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import cartan3
from .coalgebra import coalgebra_check_of
from .crosscheck import heisenberg_dataset
from .equivariant import (ActionData, CartanCochain, cartan_from_moment, check_extension, extension_from_exact,
                          fundamental_fields_linear, invariant_primitive_linear, product_extension)
from .errors import Obstructed, ParseError, PlecticError
from .forms import Chart, PolyForm, PolyMultiVec, interior_sequence, lie_derivative, volume_form
from .invariant import is_nondegenerate, symtrace_poly
from .levelset import LevelSetChart
from .lie import (CECochain, LinearAction, StructLieAlgebra, abelian, heisenberg3, is_ce_coboundary,
                  killing_3cocycle, sl2, so, so_matrix, so_pairs, solvable4, su2)
from .linfty import (BracketTable, central_extension, check_ext_morphism, check_generalized_jacobi,
                     check_lie_to_linfty_morphism, cocycle_quasi_iso)
from .moment import (MomentMap, check_2plectic_conditions, check_equivariance, check_obstruction_primitive,
                     construct_unobstructed, extension_lift, hamiltonian_primitives, modify_moment_2plectic,
                     moment_from_cartan, moment_from_extension, moment_from_perfect, obstruction, verify_moment)
from .parser import parse_expression
from .poly import scalar
from .printer import format_value
from .properties import run_property_suite
from .report import CheckReport
from .sphere import sphere_two_step

CHECK_NAMES = ("jacobi", "extension", "verify-moment", "build-from-cartan", "build-from-extension", "obstruction",
               "unobstructed-construct", "extension-lift", "coalgebra-crosscheck", "properties")

Witness = str | None
CheckFn = Callable[["Scenario", dict], tuple[Witness, dict]]


@dataclass
class CheckOutcome:
    name: str
    passed: bool
    witness: str | None = None
    details: dict[str, str] = field(default_factory=dict)
    millis: int | None = None

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self, timing: bool = True) -> dict:
        d: dict[str, Any] = {"name": self.name, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.details:
            d["details"] = dict(sorted(self.details.items()))
        d["millis"] = self.millis if timing else 0
        return d


@dataclass
class Report:
    scenario: str
    checks: list[CheckOutcome] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self, timing: bool = True) -> dict:
        return {"scenario": self.scenario, "checks": [c.to_dict(timing) for c in self.checks]}

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2)

    def to_text(self, timing: bool = True) -> str:
        lines = [f"{self.scenario}: {'pass' if self.ok else 'FAIL'}"]
        for c in self.checks:
            t = f" [{c.millis} ms]" if timing and c.millis is not None else ""
            lines.append(f"  {c.status.upper():4} {c.name}{t}")
            if c.witness:
                lines.append(f"       witness: {c.witness}")
            for k, v in sorted(c.details.items()):
                lines.append(f"       {k} = {v}")
        return "\n".join(lines)


@dataclass
class Scenario:
    name: str
    checks: list[str]
    description: str = ""
    algebra: StructLieAlgebra | None = None
    action: ActionData | None = None
    omega: PolyForm | None = None
    cartan: CartanCochain | None = None
    moment: MomentMap | None = None
    phi: CECochain | None = None
    points: list[tuple] = field(default_factory=list)
    table: BracketTable | None = None
    expect: dict[str, str] = field(default_factory=dict)
    extra: dict[str, CheckFn] = field(default_factory=dict)
    # (label, morphism, source table, "lie" or "ext") for the coalgebra cross-check
    morphisms: list[tuple] = field(default_factory=list)


# ------------------------------------------------------------------ checks


def _report_witness(rep: CheckReport) -> Witness:
    f = rep.first_failure()
    return None if f is None else str(f)


def _need(value, what: str):
    if value is None:
        raise ValueError(f"scenario has no {what}")
    return value


def _check_jacobi(s: Scenario, state: dict) -> tuple[Witness, dict]:
    details = {}
    if s.algebra is not None:
        w = s.algebra.jacobi_violation()
        if w is not None:
            return f"{w}", details
    if s.table is not None:
        top = s.table.space.n + 2
        rep = check_generalized_jacobi(s.table, top)
        details["arity"] = f"1..{top}"
        return _report_witness(rep), details
    return None, details


def _check_extension(s: Scenario, state: dict) -> tuple[Witness, dict]:
    rep = check_extension(_need(s.cartan, "Cartan cochain"), _need(s.action, "action"))
    return _report_witness(rep), {c.name: f"{c.checked} cases" for c in rep.conditions}


def _verify(m: MomentMap, s: Scenario) -> Witness:
    rep = verify_moment(m)
    w = _report_witness(rep)
    if m.n == 2:
        two = check_2plectic_conditions(m)
        if two.ok != rep.ok:
            return f"explicit 2-plectic equations give {two.ok}, component equations give {rep.ok}"
    if w is None and s.points:
        w = _report_witness(check_obstruction_primitive(m, s.points))
    return w


def _summary(m: MomentMap, limit: int = 3) -> dict:
    out = {}
    g = m.algebra
    for k in sorted(m.components):
        for key, val in list(m.f(k).components.items())[:limit]:
            out[f"f{k}(" + ",".join(g.names[a] for a in key) + ")"] = format_value(val)
    return out


def _check_from_extension(s: Scenario, state: dict) -> tuple[Witness, dict]:
    m = moment_from_extension(_need(s.cartan, "Cartan cochain"), _need(s.action, "action"))
    state["from-extension"] = m
    state.setdefault("moment", m)
    return _verify(m, s), _summary(m)


def _same_moment(a: MomentMap, b: MomentMap) -> Witness:
    for k in range(1, a.n + 1):
        for key in itertools.combinations(range(a.algebra.dim), k):
            w = a.action.witness(a.f(k)(*key), b.f(k)(*key))
            if w is not None:
                return f"f{k}{key}: {w}"
    return None


def _check_from_cartan(s: Scenario, state: dict) -> tuple[Witness, dict]:
    m = moment_from_cartan(_need(s.cartan, "Cartan cochain"), _need(s.action, "action"))
    state["from-cartan"] = m
    state.setdefault("moment", m)
    w = _verify(m, s) or _report_witness(check_equivariance(m))
    if w is None and "from-extension" in state:
        w = _same_moment(m, state["from-extension"])
    return w, _summary(m)


def _check_verify(s: Scenario, state: dict) -> tuple[Witness, dict]:
    m = s.moment or state.get("moment")
    if m is None:
        raise ValueError("scenario has no moment map; add a build check first")
    return _verify(m, s), {}


def _check_obstruction(s: Scenario, state: dict) -> tuple[Witness, dict]:
    action, omega = _need(s.action, "action"), _need(s.omega or (s.cartan.omega if s.cartan else None), "omega")
    classes = [obstruction(action, omega, p) for p in _need(s.points or None, "base points")]
    verdicts = [c.verdict for c in classes]
    details = {f"point {i + 1}": f"{c.verdict} {format_cocycle(c.cocycle)}" for i, c in enumerate(classes)}
    if len(set(verdicts)) > 1:
        return f"triviality differs between base points: {verdicts}", details
    want = s.expect.get("obstruction")
    if want is not None and verdicts[0] != want:
        return f"expected {want}, got {verdicts[0]}", details
    return None, details


def format_cocycle(c: CECochain) -> str:
    g = c.algebra
    parts = [f"c({','.join(g.names[a] for a in key)}) = {v}" for key, v in sorted(c.components.items())]
    return "; ".join(parts) if parts else "0"


def _check_construct(s: Scenario, state: dict) -> tuple[Witness, dict]:
    action, omega = _need(s.action, "action"), _need(s.omega or (s.cartan.omega if s.cartan else None), "omega")
    phi = s.phi if s.phi is not None else hamiltonian_primitives(action, omega)
    p = _need(s.points or None, "base points")[0]
    want = s.expect.get("unobstructed-construct", "constructed")
    try:
        m = construct_unobstructed(action, omega, phi, p)
    except Obstructed as e:
        detail = {"result": "Obstructed", "class": format_cocycle(e.obstruction.cocycle)}
        return (None if want == "Obstructed" else "unexpectedly obstructed"), detail
    if want == "Obstructed":
        return "expected Obstructed, but a moment map was constructed", {}
    state.setdefault("moment", m)
    for a in range(action.algebra.dim):
        if m.f(1)(a) != phi(a):
            return f"f1 differs from phi at {action.algebra.names[a]}", {}
    return _verify(m, s), {"result": "constructed", **_summary(m)}


def _check_lift(s: Scenario, state: dict) -> tuple[Witness, dict]:
    action, omega = _need(s.action, "action"), _need(s.omega or (s.cartan.omega if s.cartan else None), "omega")
    phi = s.phi if s.phi is not None else hamiltonian_primitives(action, omega)
    ext, mor = extension_lift(action, omega, phi, _need(s.points or None, "base points")[0])
    details = {"cocycle": format_cocycle(ext.cocycle), "n": str(ext.n)}
    rep = check_generalized_jacobi(ext.table, ext.n + 2)
    if not rep.ok:
        return f"central extension: {rep.first_failure()}", details
    return _report_witness(check_ext_morphism(mor)), details


def _check_coalgebra(s: Scenario, state: dict) -> tuple[Witness, dict]:
    pairs = state.get("morphisms") or []
    details = {}
    for label, m, source, kind in pairs:
        comp = check_ext_morphism(m) if kind == "ext" else check_lie_to_linfty_morphism(m)
        coal = coalgebra_check_of(m, source)
        details[label] = f"components {'pass' if comp.ok else 'fail'}, chain map {'pass' if coal.ok else 'fail'}"
        if comp.ok != coal.ok:
            return f"{label}: component equations and chain-map condition disagree", details
        if not comp.ok:
            return f"{label}: {comp.first_failure()}", details
    if not pairs:
        return "no morphisms to cross-check", details
    return None, details


def _check_properties(s: Scenario, state: dict) -> tuple[Witness, dict]:
    outcomes = run_property_suite(count=int(s.expect.get("property-count", "20")))
    details = {o.name: f"{o.instances - o.failures}/{o.instances}" for o in outcomes}
    bad = next((o for o in outcomes if not o.ok), None)
    return (None if bad is None else f"{bad.name}: {bad.first_failure}"), details


GENERIC: dict[str, CheckFn] = {
    "jacobi": _check_jacobi,
    "extension": _check_extension,
    "build-from-extension": _check_from_extension,
    "build-from-cartan": _check_from_cartan,
    "verify-moment": _check_verify,
    "obstruction": _check_obstruction,
    "unobstructed-construct": _check_construct,
    "extension-lift": _check_lift,
    "coalgebra-crosscheck": _check_coalgebra,
    "properties": _check_properties,
}


def run_scenario(s: Scenario) -> Report:
    """Run the scenario's checks in order; failures and errors become entries."""
    report = Report(s.name)
    state: dict = {}
    state["morphisms"] = list(s.morphisms)
    for name in s.checks:
        fn = s.extra.get(name) or GENERIC.get(name)
        start = time.perf_counter()
        if fn is None:
            outcome = CheckOutcome(name, False, f"unknown check {name!r}")
        else:
            try:
                w, details = fn(s, state)
                outcome = CheckOutcome(name, w is None, w, {k: str(v) for k, v in details.items()})
            except (PlecticError, ValueError, KeyError) as e:
                outcome = CheckOutcome(name, False, f"{type(e).__name__}: {e}")
        outcome.millis = int((time.perf_counter() - start) * 1000)
        report.checks.append(outcome)
    return report


# ----------------------------------------------------------- JSON scenarios


def _q(x) -> Fraction:
    return scalar(x)


def parse_algebra(spec) -> StructLieAlgebra:
    if isinstance(spec, str):
        named = {"su2": su2, "sl2": sl2, "heisenberg3": heisenberg3, "solvable4": solvable4}
        if spec in named:
            return named[spec]()
        if spec.startswith("so(") and spec.endswith(")"):
            return so(int(spec[3:-1]))
        if spec.startswith("abelian(") and spec.endswith(")"):
            return abelian(int(spec[8:-1]))
        raise ValueError(f"unknown algebra {spec!r}")
    dim = int(spec["dim"])
    names = spec.get("names") or [f"e{i}" for i in range(1, dim + 1)]
    brackets = {}
    for i, j, coeffs in spec.get("brackets", []):
        if len(coeffs) != dim:
            raise ValueError(f"bracket [{i},{j}] needs {dim} coefficients")
        brackets[(int(i) - 1, int(j) - 1)] = tuple(_q(c) for c in coeffs)
    return StructLieAlgebra(names, brackets, check=False)


def _parse_manifold(spec: dict):
    kind = spec.get("type", "chart")
    if kind == "chart":
        return Chart(tuple(spec["coords"]))
    if kind == "sphere":
        coords = spec.get("coords")
        chart = Chart(tuple(coords)) if coords else None
        return LevelSetChart.sphere(int(spec["n"]), count=int(spec.get("samples", 20)),
                                    seed=int(spec.get("seed", 0)), chart=chart)
    if kind == "levelset":
        chart = Chart(tuple(spec["coords"]))
        constraint = parse_expression(spec["constraint"], chart, "poly")
        return LevelSetChart.from_points(chart, constraint, [[_q(x) for x in p] for p in spec["points"]])
    raise ValueError(f"unknown manifold type {kind!r}")


def _key(text: str) -> tuple[int, ...]:
    return tuple(int(t) - 1 for t in str(text).split(",") if t.strip())


def scenario_from_dict(d: dict) -> Scenario:
    """Build a scenario from the JSON schema (basis indices are 1-based)."""
    g = parse_algebra(d["algebra"])
    manifold = _parse_manifold(d.get("manifold", {"type": "chart", "coords": []}))
    chart = manifold.ambient
    act = d.get("action")
    action = None
    if act is not None:
        if act["type"] == "linear":
            mats = [[[_q(x) for x in row] for row in m] for m in act["matrices"]]
            action = fundamental_fields_linear(LinearAction.of(g, mats), manifold=manifold)
        elif act["type"] == "fields":
            fields = [parse_expression(src, chart, "multivec") for src in act["fields"]]
            action = ActionData(g, manifold, fields)
        else:
            raise ValueError(f"unknown action type {act['type']!r}")
    omega = parse_expression(d["omega"], chart, "form") if "omega" in d else None
    cartan = None
    if "cartan" in d:
        comps: dict[int, dict] = {0: {(): omega}}
        for i, table in d["cartan"].items():
            comps[int(i)] = {tuple(sorted(_key(k))): parse_expression(v, chart, "form") for k, v in table.items()}
        cartan = CartanCochain(g, chart, omega.degree, comps)
    moment = None
    if "moment" in d:
        n = omega.degree - 1
        comps = {}
        for k, table in d["moment"].items():
            k = int(k)
            comps[k] = CECochain(g, k, {_key(key): parse_expression(v, chart, "form") for key, v in table.items()},
                                 PolyForm.zero(chart, n - k))
        moment = MomentMap(_need(action, "action"), omega, comps)
    phi = None
    if "phi" in d:
        phi = CECochain(g, 1, {_key(k): parse_expression(v, chart, "form") for k, v in d["phi"].items()},
                        PolyForm.zero(chart, omega.degree - 2))
    points = [tuple(_q(x) for x in p) for p in d.get("points", [])]
    if not points and isinstance(manifold, LevelSetChart):
        points = list(manifold.sample_points[:3])
    checks = list(d.get("checks", []))
    for c in checks:
        if c not in CHECK_NAMES:
            raise ValueError(f"unknown check {c!r}; expected one of {', '.join(CHECK_NAMES)}")
    return Scenario(d.get("name", "scenario"), checks, d.get("description", ""), g, action, omega, cartan, moment,
                    phi, points, expect={k: str(v) for k, v in d.get("expect", {}).items()})


def load_scenario(path: str) -> Scenario:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg}", e.pos) from e
    return scenario_from_dict(data)


# ---------------------------------------------------------------- builtins


def _chart_points(dim: int) -> list[tuple]:
    pts = [tuple([Fraction(0)] * dim), tuple([Fraction(1)] + [Fraction(0)] * (dim - 1))]
    pts.append(tuple(Fraction((-1) ** i * (i + 1), i + 2) for i in range(dim)))
    return pts


def _linear_scenario(name: str, lin: LinearAction, description: str) -> Scenario:
    action = fundamental_fields_linear(lin)
    chart = action.chart
    omega = volume_form(chart)
    cartan = extension_from_exact(invariant_primitive_linear(omega), action)
    phi = CECochain(action.algebra, 1, {(a,): -cartan.value(1, (a,)) for a in range(action.algebra.dim)},
                    PolyForm.zero(chart, omega.degree - 2))
    checks = ["extension", "build-from-extension", "build-from-cartan", "verify-moment", "obstruction",
              "unobstructed-construct", "linear-formula"]
    return Scenario(name, checks, description, action.algebra, action, omega, cartan, None, phi,
                    _chart_points(chart.dim), expect={"obstruction": "Trivial"}, extra={"linear-formula": _linear_formula})


def _linear_formula(s: Scenario, state: dict) -> tuple[Witness, dict]:
    """f_k(xi)|_p = -varsigma(k)/(n+1) iota(p ^ phi(xi_1)p ^ ... ^ phi(xi_k)p) omega."""
    from .combinatorics import varsigma
    from .forms import euler_field

    m = state["from-extension"]
    action, omega = s.action, s.omega
    n = omega.degree - 1
    E = euler_field(action.chart)
    for k in range(1, n + 1):
        for key in itertools.combinations(range(action.algebra.dim), k):
            ws = [-action.fields[a] for a in key]
            want = interior_sequence([E] + ws, omega) * Fraction(-varsigma(k), n + 1)
            w = action.witness(m.f(k)(*key), want)
            if w is not None:
                return f"f{k}{key}: {w}", {}
    return None, {"components": str(n)}


def _so_action(n: int) -> LinearAction:
    return LinearAction.of(so(n), [so_matrix(n, i, j) for i, j in so_pairs(n)])


def build_sorn(n: int) -> Scenario:
    s = _linear_scenario(f"sorn-{n}", _so_action(n), f"SO({n}) acting on R^{n} with the volume form")
    if n == 2:
        s.checks.append("classical-moment")
        s.extra["classical-moment"] = _sorn2_value
    if n == 3:
        s.checks += ["f2-value", "perfect-moment"]
        s.extra["f2-value"] = _sorn3_value
        s.extra["perfect-moment"] = _perfect_moment
    return s


def _sorn2_value(s: Scenario, state: dict) -> tuple[Witness, dict]:
    m = state["from-extension"]
    x1, x2 = s.action.chart.coords()
    want = PolyForm.function((x1 ** 2 + x2 ** 2) * Fraction(-1, 2), s.action.chart)
    got = m.f(1)(0)
    return (None if got == want else f"got {format_value(got)}"), {"f1(e12)": format_value(got)}


def _sorn3_value(s: Scenario, state: dict) -> tuple[Witness, dict]:
    m = state["from-extension"]
    x1, x2, x3 = s.action.chart.coords()
    want = PolyForm.function(x1 * (x1 ** 2 + x2 ** 2 + x3 ** 2) * Fraction(-1, 3), s.action.chart)
    got = m.f(2)(0, 1)
    return (None if got == want else f"got {format_value(got)}"), {"f2(e12,e13)": format_value(got)}


def _perfect_moment(s: Scenario, state: dict) -> tuple[Witness, dict]:
    """mu from a perfect decomposition differs from the extension's mu by a closed form,
    and feeds construct_unobstructed."""
    from .forms import exterior_d

    mu = moment_from_perfect(s.action, s.omega)
    base = state["from-extension"].f(1)
    for a in range(s.algebra.dim):
        if not exterior_d(mu(a) - base(a)).is_zero():
            return f"difference at {s.algebra.names[a]} is not closed", {}
    m = construct_unobstructed(s.action, s.omega, mu, s.points[0])
    return _verify(m, s), {f"mu({s.algebra.names[a]})": format_value(mu(a)) for a in range(s.algebra.dim)}


def build_linear_action() -> Scenario:
    z = [0, 0]

    def block(m):
        return [list(m[0]) + z, list(m[1]) + z, z + list(m[0]), z + list(m[1])]

    mats = [block([[1, 0], [0, -1]]), block([[0, 1], [0, 0]]), block([[0, 0], [1, 0]])]
    return _linear_scenario("linear-action", LinearAction.of(sl2(), mats),
                            "sl(2) acting on R^2 + R^2 with the volume form (n = 3)")


def build_ctlift(m: int, n: int) -> Scenario:
    """so(m) acting on R^m lifted to Lambda^n T* R^m with alpha = sum_I p_I dq_I."""
    subsets = list(itertools.combinations(range(m), n))
    names = tuple(f"q{i + 1}" for i in range(m)) + tuple("p" + "".join(str(i + 1) for i in I) for I in subsets)
    chart = Chart(names)
    coords = chart.coords()
    alpha = PolyForm.zero(chart, n)
    for t, I in enumerate(subsets):
        alpha = alpha + PolyForm.basis(chart, list(I), coords[m + t])
    fields = []
    for mat in _so_action(m).matrices:
        comps = [chart.const(0) for _ in range(chart.dim)]
        for i in range(m):
            for j in range(m):
                if mat[i][j]:
                    comps[i] = comps[i] - coords[j] * mat[i][j]
        vq = PolyMultiVec.vector_field(chart, comps)
        lv = lie_derivative(vq, alpha)
        for t, I in enumerate(subsets):
            c = lv.components.get(I)
            if c is not None:
                comps[m + t] = comps[m + t] - c
        fields.append(PolyMultiVec.vector_field(chart, comps))
    action = ActionData(so(m), chart, fields)
    cartan = extension_from_exact(alpha, action)
    checks = ["extension", "build-from-extension", "build-from-cartan", "verify-moment", "obstruction",
              "unobstructed-construct", "horizontal-mu"]
    return Scenario(f"ctlift-{m}-{n}", checks, f"cotangent lift of SO({m}) on Lambda^{n} T*R^{m}",
                    so(m), action, cartan.omega, cartan, None, None, _chart_points(chart.dim),
                    expect={"obstruction": "Trivial"}, extra={"horizontal-mu": _horizontal_mu(m)})


def _horizontal_mu(m: int) -> CheckFn:
    def check(s: Scenario, state: dict) -> tuple[Witness, dict]:
        for a in range(s.algebra.dim):
            mu = -s.cartan.value(1, (a,))
            for idx in mu.components:
                if any(i >= m for i in idx):
                    return f"mu({s.algebra.names[a]}) has a fibre differential", {}
        return None, {}
    return check


def build_sphere(n: int) -> Scenario:
    data = sphere_two_step(n)
    checks = ["extension", "build-from-cartan", "verify-moment", "obstruction"]
    return Scenario(f"sphere-{n}", checks, f"S^{n} with the rotation action of so({n}) and its 2-step extension",
                    data.action.algebra, data.action, data.cochain.omega, data.cochain, None, None,
                    list(data.levelset.sample_points[:3]), expect={"obstruction": "Trivial"})


def build_product() -> Scenario:
    s2, s3 = build_sorn(2), build_sorn(3)
    c, action = product_extension(s2.cartan, s2.action, s3.cartan, s3.action)
    checks = ["extension", "build-from-cartan", "verify-moment"]
    return Scenario("product-2step", checks, "product of the SO(2) and SO(3) extensions, a 2-step cocycle",
                    action.algebra, action, c.omega, c, None, None, _chart_points(action.chart.dim))


def build_cartan3() -> Scenario:
    data = cartan3.cartan_3form()

    def closed_form(s: Scenario, state: dict) -> tuple[Witness, dict]:
        rep = cartan3.check_cartan3(data, state["from-extension"])
        return _report_witness(rep), {"sample points": str(len(data.levelset.sample_points))}

    checks = ["extension", "build-from-extension", "verify-moment", "cartan3-closed-form", "obstruction"]
    return Scenario("cartan3form-su2", checks, "Cartan 3-form on SU(2) = S^3 with the conjugation action",
                    su2(), data.action, data.omega, data.extension, None, None,
                    list(data.levelset.sample_points[:3]), expect={"obstruction": "Trivial"},
                    extra={"cartan3-closed-form": closed_form})


def build_string() -> Scenario:
    g = su2()
    c = killing_3cocycle(g)
    ext = central_extension(g, c, 2)

    def nontrivial(s: Scenario, state: dict) -> tuple[Witness, dict]:
        b = is_ce_coboundary(c)
        return (None if b is None else "the 3-cocycle is exact"), {"cocycle": format_cocycle(c)}

    def left_translation(s: Scenario, state: dict) -> tuple[Witness, dict]:
        classes = cartan3.left_translation_obstruction()
        details = {f"point {i + 1}": f"{o.verdict} {format_cocycle(o.cocycle)}" for i, o in enumerate(classes)}
        for o in classes:
            if o.trivial:
                return "left translation obstruction is trivial", details
            ratio = o.cocycle(0, 1, 2) / c(0, 1, 2)
            if (o.cocycle - c * ratio).components:
                return "obstruction is not a multiple of the string cocycle", details
        return None, details

    rng = random.Random(0)
    b = CECochain(g, 2, {k: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for k in itertools.combinations(range(3), 2)})
    qi = cocycle_quasi_iso(g, c, c, b)
    s = Scenario("string-su2", ["jacobi", "string-class", "left-translation-obstruction", "coalgebra-crosscheck"],
                 "string Lie 2-algebra of su(2)", g, table=ext.table,
                 extra={"string-class": nontrivial, "left-translation-obstruction": left_translation})
    s.morphisms = [("quasi-iso", qi, ext.table, "ext")]
    return s


def build_heisenberg() -> Scenario:
    chart = Chart.standard(3)
    fields = [PolyMultiVec.basis(chart, [i], 1) for i in range(3)]
    action = ActionData(abelian(3), chart, fields)
    omega = volume_form(chart)
    ext = central_extension(abelian(3), obstruction(action, omega, (0, 0, 0)).cocycle, 2)
    s = Scenario("heisenberg", ["jacobi", "obstruction", "unobstructed-construct", "extension-lift",
                                "coalgebra-crosscheck"],
                 "translations of R^3 with the volume form: the Heisenberg Lie 2-algebra", abelian(3), action,
                 omega, None, None, None, _chart_points(3), table=ext.table,
                 expect={"obstruction": "NonTrivial", "unobstructed-construct": "Obstructed"})
    ds = heisenberg_dataset()
    s.morphisms = [("abelian R^2 into heisenberg3 + u", ds.morphism, ds.source, "lie")]
    return s


def build_translations() -> Scenario:
    chart = Chart.standard(2)
    fields = [PolyMultiVec.basis(chart, [i], 1) for i in range(2)]
    action = ActionData(abelian(2), chart, fields)
    omega = volume_form(chart)

    def value(s: Scenario, state: dict) -> tuple[Witness, dict]:
        c = obstruction(action, omega, (0, 0)).cocycle
        got = c(0, 1)
        return (None if got == -1 else f"c(e1,e2) = {got}"), {"c(e1,e2)": str(got)}

    return Scenario("translations-obstructed", ["obstruction", "obstruction-value", "unobstructed-construct",
                                                 "extension-lift"],
                    "translations of R^2 with the area form", abelian(2), action, omega, None, None, None,
                    _chart_points(2), expect={"obstruction": "NonTrivial", "unobstructed-construct": "Obstructed"},
                    extra={"obstruction-value": value})


NONCOCYCLE_FLAG = "NonCocycleMomentMap"


def noteq_data():
    """(action, omega, base extension, modified moment map) on the (theta1, theta2, z) chart."""
    chart = Chart(("theta1", "theta2", "z"))
    t1, t2, z = chart.coords()
    g = abelian(2)
    action = ActionData(g, chart, [PolyMultiVec.basis(chart, [0], 1), PolyMultiVec.basis(chart, [1], 1)])
    omega = volume_form(chart)
    mu = {0: PolyForm.basis(chart, [1], z), 1: PolyForm.basis(chart, [0], -z)}
    base_ext = cartan_from_moment(omega, g, mu)
    base = moment_from_extension(base_ext, action)
    modified = modify_moment_2plectic(base, {0: PolyForm.function(t1, chart), 1: PolyForm.function(t2, chart)})
    f2 = modified.f(2)
    shifted = CECochain(g, 2, {(0, 1): f2(0, 1) + PolyForm.function(chart.const(Fraction(1, 2)), chart)},
                        PolyForm.zero(chart, 0))
    return action, omega, base_ext, modified.replace(2, shifted)


def build_noteq() -> Scenario:
    action, omega, base_ext, m = noteq_data()

    def noncocycle(s: Scenario, state: dict) -> tuple[Witness, dict]:
        rep = verify_moment(m)
        if not rep.ok:
            return f"modified map is not a moment map: {rep.first_failure()}", {}
        eq = check_equivariance(m)
        if not eq.ok:
            return f"modified map is not equivariant: {eq.first_failure()}", {}
        ext = check_extension(cartan_from_moment(omega, action.algebra, {a: m.f(1)(a) for a in range(2)}), action)
        failed = ext.failures()
        details = {"extension": "; ".join(str(c) for c in failed) or "pass"}
        if [c.name for c in failed] != ["iota_v mu = 0"]:
            return "extension check did not fail exactly at iota_v mu = 0", details
        if not re.search(r"\(e1, e1\): residual 1\b", failed[0].witness or ""):
            return f"unexpected residual: {failed[0].witness}", details
        details["flag"] = NONCOCYCLE_FLAG
        return None, details

    checks = ["extension", "build-from-extension", "verify-moment", "non-cocycle-moment-map"]
    return Scenario("noteq-torus", checks, "an equivariant moment map not arising from a Cartan cocycle",
                    action.algebra, action, omega, base_ext, m, None, _chart_points(3),
                    extra={"non-cocycle-moment-map": noncocycle})


def build_sutraces() -> Scenario:
    def q3_zero(s, state):
        q = symtrace_poly(3)
        return (None if q.is_zero() else f"q3 = {q.table}"), {}

    def q4_values(s, state):
        q = symtrace_poly(4)
        vals = {f"q4(e{i + 1},e{j + 1},e{j + 1},e{j + 1})": q(i, j, j, j) for i in range(3) for j in range(3)}
        for i in range(3):
            for j in range(3):
                want = Fraction(-1, 8) if i == j else Fraction(0)
                if q(i, j, j, j) != want:
                    return f"q4(e{i + 1},e{j + 1},e{j + 1},e{j + 1}) = {q(i, j, j, j)}", vals
        return None, vals

    def nondeg(s, state):
        res = {f"q{k}": str(is_nondegenerate(symtrace_poly(k))) for k in (2, 4)}
        bad = [k for k, v in res.items() if v != "True"]
        return (None if not bad else f"degenerate: {bad}"), res

    return Scenario("sutraces", ["q3-vanishes", "q4-values", "nondegenerate"],
                    "symmetrized real traces on su(2)", su2(),
                    extra={"q3-vanishes": q3_zero, "q4-values": q4_values, "nondegenerate": nondeg})


BUILTINS: dict[str, tuple[str, Callable[[], Scenario]]] = {
    "sorn-2": ("SO(2) on R^2 (classical moment map)", lambda: build_sorn(2)),
    "sorn-3": ("SO(3) on R^3 with the volume form", lambda: build_sorn(3)),
    "sorn-4": ("SO(4) on R^4 with the volume form", lambda: build_sorn(4)),
    "linear-action": ("sl(2) on R^2 + R^2, constant 4-form", build_linear_action),
    "ctlift-2-1": ("cotangent lift of SO(2) on T*R^2", lambda: build_ctlift(2, 1)),
    "ctlift-3-2": ("cotangent lift of SO(3) on Lambda^2 T*R^3", lambda: build_ctlift(3, 2)),
    "sphere-2": ("S^2, 1-step extension", lambda: build_sphere(2)),
    "sphere-3": ("S^3, 1-step extension", lambda: build_sphere(3)),
    "sphere-4": ("S^4, 2-step extension", lambda: build_sphere(4)),
    "sphere-5": ("S^5, 2-step extension", lambda: build_sphere(5)),
    "product-2step": ("product of two 1-step extensions", build_product),
    "cartan3form-su2": ("Cartan 3-form on S^3, conjugation action", build_cartan3),
    "string-su2": ("string Lie 2-algebra of su(2)", build_string),
    "heisenberg": ("Heisenberg Lie 2-algebra from translations of R^3", build_heisenberg),
    "translations-obstructed": ("translations of R^2: obstructed", build_translations),
    "noteq-torus": ("moment map not arising from a cocycle", build_noteq),
    "sutraces": ("symmetrized traces on su(2)", build_sutraces),
}


def list_builtins() -> list[tuple[str, str]]:
    return [(name, desc) for name, (desc, _) in BUILTINS.items()]


def builtin(name: str) -> Scenario:
    if name not in BUILTINS:
        raise KeyError(f"unknown builtin {name!r}; try one of {', '.join(BUILTINS)}")
    return BUILTINS[name][1]()


def run_builtin(name: str) -> Report:
    return run_scenario(builtin(name))
