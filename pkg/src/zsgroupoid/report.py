"""Violation records and check reports used by all exhaustive verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


def label(x: Any) -> str:
    """Render an element as a display label.

    Strings are their own label; tuples render as ``(a,b)`` recursively.
    """
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return "(" + ",".join(label(p) for p in x) + ")"
    return str(x)


def _plain(value: Any) -> Any:
    if isinstance(value, tuple):
        return [_plain(v) for v in value]
    if isinstance(value, list):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if value is None or isinstance(value, (bool, int, float)):
        return value
    return label(value)


@dataclass
class Violation:
    """One failed rule instance: which rule, on which tuple, with both sides."""

    rule: str
    witness: tuple
    lhs: Any = None
    rhs: Any = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "witness": [label(w) for w in self.witness],
            "lhs": _plain(self.lhs),
            "rhs": _plain(self.rhs),
            "detail": self.detail,
        }

    def __str__(self) -> str:
        wit = ", ".join(label(w) for w in self.witness)
        text = f"{self.rule} at ({wit})"
        if self.lhs is not None or self.rhs is not None:
            text += f": {label(self.lhs)} != {label(self.rhs)}"
        if self.detail:
            text += f" [{self.detail}]"
        return text


@dataclass
class CheckReport:
    """Outcome of an exhaustive check over a family of named rules.

    ``checked`` counts evaluated tuples per rule; ``violations`` holds at most
    ``cap`` entries, ``truncated`` records that more were found.
    """

    name: str
    rules: tuple[str, ...]
    violations: list[Violation] = field(default_factory=list)
    domain_errors: list[Violation] = field(default_factory=list)
    checked: dict[str, int] = field(default_factory=dict)
    cap: int = 100
    truncated: bool = False

    def __post_init__(self):
        for rule in self.rules:
            self.checked.setdefault(rule, 0)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.domain_errors and not self.truncated

    def tick(self, rule: str, n: int = 1) -> None:
        self.checked[rule] = self.checked.get(rule, 0) + n

    def add(self, violation: Violation) -> None:
        if len(self.violations) + len(self.domain_errors) >= self.cap:
            self.truncated = True
            return
        self.violations.append(violation)

    def add_domain_error(self, violation: Violation) -> None:
        if len(self.violations) + len(self.domain_errors) >= self.cap:
            self.truncated = True
            return
        self.domain_errors.append(violation)

    def violated_rules(self) -> set[str]:
        return {v.rule for v in self.violations}

    def status(self, rule: str) -> str:
        return "violated" if rule in self.violated_rules() else "ok"

    def to_dict(self) -> dict:
        return {
            "status": "ok" if self.ok else "violations",
            "check": self.name,
            "rules": {rule: self.status(rule) for rule in self.rules},
            "checked": dict(self.checked),
            "violations": [v.to_dict() for v in self.violations],
            "domain_errors": [v.to_dict() for v in self.domain_errors],
            "truncated": self.truncated,
        }
