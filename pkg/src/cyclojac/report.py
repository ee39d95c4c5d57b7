"""Structured pass/fail reports returned by the verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional


def _jsonable(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    return str(value)


@dataclass
class ClauseResult:
    clause: str
    passed: bool
    checked: int = 0
    witness: Optional[Any] = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"clause": self.clause, "passed": self.passed, "checked": self.checked}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    """An ordered list of clause results; passes when every clause passes."""

    name: str
    clauses: list[ClauseResult] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    def add(self, clause: str, passed: bool, checked: int = 0, witness=None, detail: str = "") -> ClauseResult:
        result = ClauseResult(clause, passed, checked, witness, detail)
        self.clauses.append(result)
        return result

    def clause(self, clause: str) -> ClauseResult:
        return next(c for c in self.clauses if c.clause == clause)

    def failures(self) -> list[ClauseResult]:
        return [c for c in self.clauses if not c.passed]

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.clauses:
            self.clauses.append(ClauseResult(prefix + c.clause, c.passed, c.checked, c.witness, c.detail))

    def merged(self) -> "Report":
        """Same report with repeated clause names folded into one result (first failing witness kept)."""
        out = Report(self.name, meta=dict(self.meta))
        by_name: dict[str, ClauseResult] = {}
        for c in self.clauses:
            prev = by_name.get(c.clause)
            if prev is None:
                by_name[c.clause] = ClauseResult(c.clause, c.passed, c.checked, c.witness, c.detail)
                out.clauses.append(by_name[c.clause])
                continue
            prev.checked += c.checked
            if prev.passed and not c.passed:
                prev.witness = c.witness
            prev.passed = prev.passed and c.passed
        return out

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "meta": _jsonable(self.meta),
            "clauses": [c.to_json() for c in self.clauses],
        }


class ClauseCheck:
    """Accumulates one clause: counts checks and keeps the first counterexample."""

    def __init__(self, report: Report, clause: str):
        self.report = report
        self.clause = clause
        self.checked = 0
        self.witness = None

    def __call__(self, ok: bool, witness=None) -> None:
        self.checked += 1
        if not ok and self.witness is None:
            self.witness = witness if witness is not None else self.checked

    def close(self, detail: str = "") -> ClauseResult:
        return self.report.add(self.clause, self.witness is None, self.checked, self.witness, detail)
