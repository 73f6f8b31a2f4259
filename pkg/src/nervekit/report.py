"""Check entries shared by the verifiers and the CLI reports."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    witness: Any = None
    numbers: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in (PASS, FAIL, SKIPPED):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == FAIL and self.witness is None:
            raise ValueError(f"failing check {self.name} needs a witness")

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "witness": self.witness, "numbers": self.numbers}


def status(ok: bool) -> str:
    return PASS if ok else FAIL


def overall(checks: Iterable[Check]) -> str:
    return FAIL if any(c.failed for c in checks) else PASS


def sorted_checks(checks: Iterable[Check]) -> list[Check]:
    return sorted(checks, key=lambda c: c.name)
