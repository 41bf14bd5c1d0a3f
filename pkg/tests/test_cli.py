from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

from plectic.cli import main

DATA = Path(__file__).parent / "data"


def test_list(capsys):
    """list prints one line per built-in."""
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "string-su2" in out and "sutraces" in out


def test_builtin_json(capsys):
    """builtin emits the report schema and exits 0 on success."""
    assert main(["builtin", "sorn-2", "--format", "json", "--no-timing"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["scenario"] == "sorn-2"
    assert all(c["status"] == "pass" and c["millis"] == 0 for c in doc["checks"])


def test_check_failing_file_exits_one(capsys):
    """A failing scenario file gives exit code 1 and a witness."""
    assert main(["check", str(DATA / "bad-jacobi.json"), "--format", "json"]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["checks"][0]["status"] == "fail" and doc["checks"][0]["witness"]


def test_check_missing_file(capsys):
    """An unreadable file is reported as a failed load."""
    assert main(["check", str(DATA / "missing.json")]) == 1
    assert "load" in capsys.readouterr().out


def test_unknown_builtin(capsys):
    """Unknown names fail rather than crash."""
    assert main(["builtin", "nope"]) == 1


def test_report_parallel_is_deterministic(capsys):
    """--jobs does not change the output when timing is off."""
    args = ["report", "sorn-2", "translations-obstructed", "sutraces", "--format", "json", "--no-timing"]
    assert main(args) == 0
    serial = capsys.readouterr().out
    assert main(args + ["--jobs", "2"]) == 0
    assert capsys.readouterr().out == serial
    assert len(json.loads(serial)) == 3


def test_module_entry_point():
    """python -m plectic runs the same interface."""
    proc = subprocess.run([sys.executable, "-m", "plectic", "check", str(DATA / "rotation-plane.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "PASS" in proc.stdout.upper()
