"""Pass/fail reports shared by every checker and by the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np


@dataclass
class Check:
    id: str
    anchor: str
    passed: bool
    witness: Any = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {"id": self.id, "anchor": self.anchor, "passed": self.passed,
                "witness": _jsonable(self.witness), "detail": self.detail}


@dataclass
class Report:
    suite: str
    checks: list[Check] = field(default_factory=list)

    def add(self, id: str, anchor: str, passed: bool, witness: Any = None, detail: str = "") -> Check:
        chk = Check(id, anchor, bool(passed), witness, detail)
        self.checks.append(chk)
        return chk

    def extend(self, other: Report, prefix: str = "") -> Report:
        for c in other.checks:
            self.checks.append(Check(prefix + c.id, c.anchor, c.passed, c.witness, c.detail))
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    @property
    def exit_status(self) -> int:
        return 0 if self.passed else 1

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, check_id: str) -> Check:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "exit_status": self.exit_status,
                "checks": [c.to_dict() for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def format_text(self) -> str:
        lines = [f"== {self.suite}"]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            line = f"[{mark}] {c.id}: {c.anchor}"
            if c.detail:
                line += f" ({c.detail})"
            if not c.passed and c.witness is not None:
                line += f" witness={_jsonable(c.witness)}"
            lines.append(line)
        lines.append(f"== {'all checks passed' if self.passed else f'{len(self.failures())} check(s) failed'}")
        return "\n".join(lines)


def _jsonable(x):
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    return str(x)


def first_nonzero(diff: np.ndarray, axes: list[tuple[str, tuple[str, ...]]]):
    """Locate the first nonzero entry of ``diff`` and name it by basis labels.

    ``axes`` pairs each array axis with a role name and the labels of that axis.
    Returns ``None`` when ``diff`` vanishes identically.
    """
    nz = np.argwhere(np.asarray(diff != 0))
    if nz.size == 0:
        return None
    idx = tuple(int(k) for k in nz[0])
    return {role: labels[k] for (role, labels), k in zip(axes, idx)}
