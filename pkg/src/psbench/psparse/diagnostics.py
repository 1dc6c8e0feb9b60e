"""Diagnostic severities and records shared by the parser and linter."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Severity(enum.IntEnum):
    """Total order: ParseError > Error > Warning > Information."""

    INFORMATION = 1
    WARNING = 2
    ERROR = 3
    PARSE_ERROR = 4

    @property
    def label(self) -> str:
        return _LABELS[self]

    @classmethod
    def from_label(cls, label: str) -> "Severity":
        try:
            return _BY_LABEL[label]
        except KeyError:
            raise ValueError(f"unknown severity {label!r}") from None


_LABELS = {
    Severity.INFORMATION: "Information",
    Severity.WARNING: "Warning",
    Severity.ERROR: "Error",
    Severity.PARSE_ERROR: "ParseError",
}
_BY_LABEL = {label: sev for sev, label in _LABELS.items()}


@dataclass(frozen=True)
class Diagnostic:
    code: str
    severity: Severity
    span: tuple[int, int]
    message: str

    def to_json_dict(self) -> dict:
        return {"code": self.code, "severity": self.severity.label,
                "span": list(self.span), "message": self.message}

    @classmethod
    def from_json_dict(cls, payload: dict) -> "Diagnostic":
        return cls(code=payload["code"],
                   severity=Severity.from_label(payload["severity"]),
                   span=tuple(payload.get("span", (0, 0))),
                   message=payload.get("message", ""))
