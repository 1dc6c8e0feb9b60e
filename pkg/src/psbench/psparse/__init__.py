"""PowerShell one-liner tokenizer, parser, and best-practice linter."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .diagnostics import Diagnostic, Severity
from .lint import ALIASES, APPROVED_VERBS, RULE_CODES, lint, load_catalog
from .parser import (
    BracketGroup, Invocation, Parameter, Pipeline, ScriptBlock, Snippet,
    Statement, Subexpression, parse_ps,
)
from .tokens import (
    KIND_COMMAND, KIND_COMMENT, KIND_DELIMITER, KIND_END, KIND_ERROR,
    KIND_NUMBER, KIND_OPERATOR, KIND_PARAMETER, KIND_PIPE, KIND_REDIRECTION,
    KIND_SEMICOLON, KIND_STRING, KIND_STUB, KIND_VARIABLE, Token, tokenize_ps,
)


@dataclass
class Analysis:
    """Combined parse and lint result for one snippet."""

    source: str
    tokens: list[Token]
    snippet: Snippet | None
    diagnostics: list[Diagnostic] = field(default_factory=list)
    has_stub_template: bool = False

    @property
    def parse_errors(self) -> frozenset[str]:
        return frozenset(d.code for d in self.diagnostics
                         if d.severity == Severity.PARSE_ERROR)


def analyze(source: str) -> Analysis:
    """Tokenize, parse, and (when parsing succeeds) lint one snippet."""
    tokens = tokenize_ps(source)
    snippet, diagnostics = parse_ps(tokens, source)
    if snippet is not None:
        diagnostics = diagnostics + lint(snippet)
    return Analysis(
        source=source,
        tokens=tokens,
        snippet=snippet,
        diagnostics=diagnostics,
        has_stub_template=any(t.kind == KIND_STUB for t in tokens),
    )


def write_diagnostics(path: str | Path, per_sample: list[tuple[str, list[Diagnostic]]]) -> None:
    """Flat JSON-lines export: one line per diagnostic with its sample id."""
    with Path(path).open("w", encoding="utf-8") as fh:
        for sample_id, diagnostics in per_sample:
            for diagnostic in diagnostics:
                record = {"id": sample_id, **diagnostic.to_json_dict()}
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")
