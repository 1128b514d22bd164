"""Line-oriented and JSON reports made of named pass/fail checks."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

__all__ = ["Check", "Report"]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    data: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"CHECK {self.name} {status}" + (f" {self.detail}" if self.detail else "")


@dataclass
class Report:
    title: str = ""
    checks: list[Check] = field(default_factory=list)
    _t0: float = field(default_factory=time.perf_counter, repr=False)

    def add(self, name: str, passed: bool, detail: str = "", **data: Any) -> Check:
        now = time.perf_counter()
        c = Check(name, bool(passed), detail, data, round(now - self._t0, 3))
        self._t0 = now
        self.checks.append(c)
        return c

    @contextmanager
    def timed(self):
        """Restart the clock so the next check's time excludes earlier work."""
        self._t0 = time.perf_counter()
        yield

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def text(self) -> str:
        return "\n".join(c.line() for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail, "seconds": c.seconds, **({"data": c.data} if c.data else {})}
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=False, default=_jsonable)


def _jsonable(x):
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    return str(x)
