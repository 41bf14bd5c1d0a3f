from __future__ import annotations

import json
from pathlib import Path

import pytest

from plectic.errors import ParseError
from plectic.scenarios import builtin, list_builtins, load_scenario, run_builtin, run_scenario

DATA = Path(__file__).parent / "data"
NAMES = [n for n, _ in list_builtins()]


def test_builtin_catalogue():
    """At least twelve named scenarios, including the string algebra and traces."""
    assert len(NAMES) >= 12
    assert {"string-su2", "sutraces", "sorn-2", "noteq-torus"} <= set(NAMES)
    with pytest.raises(KeyError):
        builtin("no-such-scenario")


@pytest.mark.parametrize("name", NAMES)
def test_builtin_passes(name):
    """Every built-in scenario passes all of its checks."""
    report = run_builtin(name)
    assert report.ok, report.to_text(False)
    assert report.checks


@pytest.mark.parametrize("name,ok", [("rotation-plane", True), ("translations", True), ("moment-sphere", True),
                                     ("bad-jacobi", False)])
def test_json_scenarios(name, ok):
    """Scenario files load and report the expected verdict."""
    report = run_scenario(load_scenario(DATA / f"{name}.json"))
    assert report.ok == ok
    if not ok:
        assert report.checks[0].name == "jacobi" and report.checks[0].witness


def test_malformed_json_rejected(tmp_path):
    """Broken JSON raises ParseError."""
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ParseError):
        load_scenario(bad)


def test_report_schema_and_determinism():
    """Reports follow the schema and are byte-identical without timing."""
    a = run_builtin("sorn-3").to_json(timing=False)
    b = run_builtin("sorn-3").to_json(timing=False)
    assert a == b
    doc = json.loads(a)
    assert doc["scenario"] == "sorn-3"
    for check in doc["checks"]:
        assert {"name", "status", "millis"} <= set(check)
        assert check["status"] in ("pass", "fail") and check["millis"] == 0


def test_noncocycle_flag():
    """The torus scenario reports the failing cocycle condition as its witness."""
    report = run_builtin("noteq-torus")
    flag = next(c for c in report.checks if c.name == "non-cocycle-moment-map")
    assert flag.passed and "(e1, e1)" in flag.details["extension"]
