"""Check records shared by validators, suites and the CLI, plus error types."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass
class Check:
    name: str
    passed: bool
    expected: Any = None
    got: Any = None
    witness: Optional[Any] = None

    def as_json(self) -> str:
        return json.dumps(
            {
                "name": self.name,
                "expected": _plain(self.expected),
                "got": _plain(self.got),
                "pass": bool(self.passed),
            },
            sort_keys=True,
        )

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] {self.name}: expected={_plain(self.expected)} got={_plain(self.got)}"
        if not self.passed and self.witness is not None:
            text += f" witness={_plain(self.witness)}"
        return text


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, passed, expected=None, got=None, witness=None) -> Check:
        c = Check(name, bool(passed), expected, got, witness)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.expected, c.got, c.witness))

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _plain(x):
    if hasattr(x, "tolist"):
        return x.tolist()
    if isinstance(x, tuple):
        return [_plain(v) for v in x]
    if isinstance(x, list):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return str(x)


class DimensionMismatch(ValueError):
    pass


class SchemeMismatch(ValueError):
    pass


class NotHopfIdeal(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class NotNormal(ValueError):
    pass


class ExtensionDoesNotSplit(ValueError):
    def __init__(self, msg, required_degree: int):
        super().__init__(msg)
        self.required_degree = required_degree


class NotInfinitesimal(ValueError):
    pass


class NotInvariant(ValueError):
    pass


class MissingDegreeBound(ValueError):
    pass


class CarrierNotAField(ValueError):
    pass


class SizeCapExceeded(RuntimeError):
    pass


class ConstructionError(RuntimeError):
    """An internal identity failed on valid input; indicates a bug."""
