"""Outcome records for verification sweeps."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"


@dataclass(frozen=True)
class Report:
    check: str
    depth: Any
    status: str
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in (PASS, FAIL):
            raise ValueError(f"status must be {PASS!r} or {FAIL!r}")
        if self.status == FAIL and not self.witness:
            raise ValueError("a failing report needs a witness")

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "depth": self.depth,
            "status": self.status,
            "witness": self.witness,
            "details": self.details,
        }

    def __str__(self) -> str:
        head = f"{self.check} [{self.depth}]: {self.status.upper()}"
        extra = ", ".join(f"{k}={v}" for k, v in self.details.items())
        if extra:
            head += f" ({extra})"
        if self.witness:
            head += f"\n  witness: {self.witness}"
        return head


def passed(check: str, depth, **details) -> Report:
    return Report(check, depth, PASS, None, details)


def failed(check: str, depth, witness: dict, **details) -> Report:
    return Report(check, depth, FAIL, witness, details)
