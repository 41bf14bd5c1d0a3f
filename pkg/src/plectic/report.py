"""Verification reports: named conditions with pass/fail and a witness."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Condition:
    name: str
    passed: bool
    witness: str | None = None
    checked: int = 0

    def __str__(self):
        status = "pass" if self.passed else "FAIL"
        tail = f" ({self.witness})" if self.witness else ""
        return f"[{status}] {self.name}{tail}"


@dataclass
class CheckReport:
    title: str
    conditions: list[Condition] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.conditions)

    def __bool__(self) -> bool:
        return self.ok

    def add(self, name: str, passed: bool, witness: str | None = None, checked: int = 0) -> Condition:
        c = Condition(name, passed, witness, checked)
        self.conditions.append(c)
        return c

    def condition(self, name: str) -> Condition:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[Condition]:
        return [c for c in self.conditions if not c.passed]

    def first_failure(self) -> Condition | None:
        return next((c for c in self.conditions if not c.passed), None)

    def __str__(self):
        lines = [f"{self.title}: {'pass' if self.ok else 'FAIL'}"]
        lines += [f"  {c}" for c in self.conditions]
        return "\n".join(lines)


class ConditionTracker:
    """Accumulates per-key checks for one condition, keeping the first failure."""

    def __init__(self, report: CheckReport, name: str):
        self.report = report
        self.name = name
        self.count = 0
        self.witness: str | None = None

    def check(self, key_text: str, witness: str | None) -> bool:
        self.count += 1
        if witness is not None and self.witness is None:
            self.witness = f"{key_text}: {witness}"
        return witness is None

    def close(self) -> Condition:
        return self.report.add(self.name, self.witness is None, self.witness, self.count)
