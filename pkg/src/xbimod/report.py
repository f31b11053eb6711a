"""Check reports: a list of violated laws with witnesses plus derived data."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple
    location: str = ""

    def to_json(self) -> dict:
        return {"law": self.law, "witness": _plain(self.witness), "location": self.location}


@dataclass
class Report:
    subject: str
    violations: list[Violation] = field(default_factory=list)
    derived: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, law: str, witness=(), location: str = "") -> None:
        self.violations.append(Violation(law, tuple(witness), location))

    def extend(self, other: "Report", prefix: str = "") -> None:
        for v in other.violations:
            loc = f"{prefix}.{v.location}" if prefix and v.location else (prefix or v.location)
            self.violations.append(Violation(v.law, v.witness, loc))

    def laws(self) -> set[str]:
        return {v.law for v in self.violations}

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "violations": [v.to_json() for v in self.violations],
            "derived": _plain(self.derived),
        }

    def __bool__(self) -> bool:
        return self.ok


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x
