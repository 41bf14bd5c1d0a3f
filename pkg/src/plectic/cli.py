"""Command line interface: check, builtin, report, all, list."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

from . import acceptance, scenarios
from .errors import PlecticError


def _run_file(path: str) -> scenarios.Report:
    try:
        return scenarios.run_scenario(scenarios.load_scenario(path))
    except (OSError, PlecticError, ValueError, KeyError) as e:
        return scenarios.Report(path, [scenarios.CheckOutcome("load", False, f"{type(e).__name__}: {e}")])


def _run_builtin(name: str) -> scenarios.Report:
    try:
        return scenarios.run_builtin(name)
    except KeyError as e:
        return scenarios.Report(name, [scenarios.CheckOutcome("load", False, str(e.args[0]))])


def _map(fn: Callable, items: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _emit(reports: list[scenarios.Report], fmt: str, timing: bool) -> None:
    if fmt == "json":
        docs = [r.to_dict(timing) for r in reports]
        print(json.dumps(docs[0] if len(docs) == 1 else docs, indent=2))
    else:
        print("\n\n".join(r.to_text(timing) for r in reports))


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--jobs", type=int, default=1, help="run scenarios in N worker processes")
    p.add_argument("--no-timing", action="store_true", help="report millis as 0 for byte-identical output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plectic", description="Exact checks for homotopy moment maps.")
    sub = parser.add_subparsers(dest="verb", required=True)
    p = sub.add_parser("check", help="run scenario JSON files")
    p.add_argument("files", nargs="+")
    _common(p)
    p = sub.add_parser("builtin", help="run built-in scenarios by name")
    p.add_argument("names", nargs="+")
    _common(p)
    p = sub.add_parser("report", help="run built-in scenarios (all by default) and print a report")
    p.add_argument("names", nargs="*")
    _common(p)
    p = sub.add_parser("all", help="run every built-in scenario and the acceptance suite")
    _common(p)
    sub.add_parser("list", help="list the built-in scenarios")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verb == "list":
        for name, desc in scenarios.list_builtins():
            print(f"{name:24} {desc}")
        return 0
    timing = not args.no_timing
    if args.verb == "check":
        reports = _map(_run_file, args.files, args.jobs)
    else:
        names = getattr(args, "names", None) or [n for n, _ in scenarios.list_builtins()]
        reports = _map(_run_builtin, names, args.jobs)
    _emit(reports, args.format, timing)
    ok = all(r.ok for r in reports)
    if args.verb == "all":
        results = _map(acceptance.run_criterion, list(range(len(acceptance.CRITERIA))), args.jobs)
        if args.format == "json":
            print(json.dumps([{"criterion": r.number, "title": r.title, "status": "pass" if r.passed else "fail",
                               "detail": r.detail, **({"seconds": round(r.seconds, 3)} if timing else {})}
                              for r in results], indent=2))
        else:
            print()
            print("\n".join(r.line() if timing else r.line().split(" (")[0] for r in results))
        ok = ok and all(r.passed for r in results)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
