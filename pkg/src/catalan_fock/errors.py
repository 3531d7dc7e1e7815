from __future__ import annotations

from dataclasses import dataclass, field


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class SizeGuardError(ValueError):
    """An enumeration was asked for beyond its hard size limit."""


def guard(n: int, limit: int, what: str) -> None:
    if n > limit:
        raise SizeGuardError(f"{what}: n={n} exceeds the limit {limit}")


@dataclass(frozen=True)
class Check:
    """Outcome of one named identity check."""

    name: str
    ok: bool
    cases: int = 0
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"{status} {self.name} ({self.cases} cases)"
        if self.detail:
            text += f": {self.detail}"
        return text


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, check: Check) -> None:
        self.checks.append(check)

    def extend(self, other: Report) -> None:
        self.checks.extend(other.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def text(self) -> str:
        return "\n".join(c.line() for c in self.checks)


class Tally:
    """Counts cases for one check and remembers the first counterexample."""

    def __init__(self, name: str):
        self.name = name
        self.cases = 0
        self.first_failure = ""

    def expect(self, cond: bool, where: str) -> None:
        self.cases += 1
        if not cond and not self.first_failure:
            self.first_failure = where

    def result(self) -> Check:
        ok = not self.first_failure
        return Check(self.name, ok, self.cases, "" if ok else f"first failure at {self.first_failure}")
