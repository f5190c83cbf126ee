"""Validation reports: named checks with witnesses instead of exceptions."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    witnesses: tuple = ()

    def __str__(self) -> str:
        status = "ok" if self.ok else "FAIL"
        suffix = f" {list(self.witnesses)}" if self.witnesses and not self.ok else ""
        return f"{self.name}: {status}{suffix}"


@dataclass(frozen=True)
class Report:
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def __str__(self) -> str:
        return "\n".join(str(c) for c in self.checks)


class ReportBuilder:
    def __init__(self):
        self._checks: list[Check] = []

    def add(self, name: str, ok: bool, witnesses=()) -> None:
        self._checks.append(Check(name, bool(ok), tuple(witnesses)))

    def build(self) -> Report:
        return Report(tuple(self._checks))
