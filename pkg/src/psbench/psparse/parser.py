"""Recursive-descent parser for the one-liner PowerShell subset.

Covers pipelines, semicolon-separated statements, parameters with and
without arguments, variable assignment, parenthesized subexpressions, and
brace script blocks. Parsing is total: every input produces a diagnostic
list, and a Snippet is returned exactly when no ParseError was emitted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagnostics import Diagnostic, Severity
from .tokens import (
    KIND_COMMAND, KIND_COMMENT, KIND_DELIMITER, KIND_END, KIND_ERROR,
    KIND_NUMBER, KIND_OPERATOR, KIND_PARAMETER, KIND_PIPE, KIND_REDIRECTION,
    KIND_SEMICOLON, KIND_STRING, KIND_STUB, KIND_VARIABLE, Token,
)

_VALUE_KINDS = frozenset({KIND_COMMAND, KIND_STRING, KIND_NUMBER, KIND_VARIABLE})
_OPENERS = {"(": ")", "$(": ")", "@(": ")", "{": "}", "@{": "}", "[": "]"}


@dataclass
class ScriptBlock:
    statements: list = field(default_factory=list)
    hashtable: bool = False


@dataclass
class Subexpression:
    opener: str
    statements: list = field(default_factory=list)


@dataclass
class BracketGroup:
    tokens: list[Token] = field(default_factory=list)


@dataclass
class Parameter:
    name: str
    token: Token
    argument: object | None = None


@dataclass
class Redirection:
    operator: Token
    target: object | None = None


@dataclass
class Invocation:
    name: str | None = None
    name_token: Token | None = None
    parameters: list[Parameter] = field(default_factory=list)
    positional: list = field(default_factory=list)
    redirections: list[Redirection] = field(default_factory=list)


@dataclass
class Pipeline:
    invocations: list[Invocation] = field(default_factory=list)


@dataclass
class Statement:
    pipeline: Pipeline
    assignment_target: Token | None = None
    assignment_operator: str | None = None


@dataclass
class Snippet:
    statements: list[Statement]
    source: str
    has_stub_template: bool = False


def _parse_error(code: str, token: Token, message: str) -> Diagnostic:
    return Diagnostic(code=code, severity=Severity.PARSE_ERROR,
                      span=token.span, message=message)


class _Parser:
    def __init__(self, tokens: list[Token], source: str):
        self.tokens = [t for t in tokens if t.kind != KIND_COMMENT]
        self.source = source
        self.pos = 0
        self.diagnostics: list[Diagnostic] = []

    def peek(self) -> Token:
        return self.tokens[min(self.pos, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.peek()
        if self.pos < len(self.tokens) - 1:
            self.pos += 1
        return token

    def at_end(self) -> bool:
        return self.peek().kind == KIND_END

    def report(self, code: str, token: Token, message: str) -> None:
        self.diagnostics.append(_parse_error(code, token, message))

    # statement level -----------------------------------------------------

    def parse_snippet(self) -> Snippet:
        statements: list[Statement] = []
        while not self.at_end():
            token = self.peek()
            if token.kind == KIND_SEMICOLON:
                self.advance()
                continue
            if token.kind == KIND_DELIMITER and token.text in ")}]":
                self.report("UnbalancedDelimiter", token,
                            f"unexpected '{token.text}' with no matching opener")
                self.advance()
                continue
            statements.append(self.parse_statement(closer=None))
        has_stub = any(t.kind == KIND_STUB for t in self.tokens)
        return Snippet(statements=statements, source=self.source,
                       has_stub_template=has_stub)

    def parse_statement(self, closer: str | None) -> Statement:
        token = self.peek()
        if token.kind == KIND_VARIABLE:
            following = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
            if following is not None and following.kind == KIND_OPERATOR \
                    and following.text in ("=", "+="):
                target = self.advance()
                operator = self.advance()
                if self._pipeline_missing(closer):
                    self.report("MissingExpression", self.peek(),
                                f"assignment to {target.text} has no right-hand expression")
                    return Statement(pipeline=Pipeline(),
                                     assignment_target=target,
                                     assignment_operator=operator.text)
                pipeline = self.parse_pipeline(closer)
                return Statement(pipeline=pipeline, assignment_target=target,
                                 assignment_operator=operator.text)
        return Statement(pipeline=self.parse_pipeline(closer))

    def _pipeline_missing(self, closer: str | None) -> bool:
        token = self.peek()
        if token.kind in (KIND_END, KIND_SEMICOLON):
            return True
        return (token.kind == KIND_DELIMITER and closer is not None
                and token.text == closer)

    def parse_pipeline(self, closer: str | None) -> Pipeline:
        pipeline = Pipeline()
        while self.peek().kind == KIND_PIPE:
            self.report("MissingExpression", self.peek(), "empty pipe element")
            self.advance()
        while True:
            pipeline.invocations.append(self.parse_invocation(closer))
            if self.peek().kind != KIND_PIPE:
                break
            pipe = self.advance()
            if self._pipeline_missing(closer) or self.peek().kind == KIND_PIPE:
                self.report("MissingExpression", pipe, "empty pipe element")
                while self.peek().kind == KIND_PIPE:
                    self.advance()
                if self._pipeline_missing(closer):
                    break
        return pipeline

    # invocation level ----------------------------------------------------

    def parse_invocation(self, closer: str | None) -> Invocation:
        invocation = Invocation()
        while True:
            token = self.peek()
            if token.kind in (KIND_END, KIND_SEMICOLON, KIND_PIPE):
                break
            if token.kind == KIND_DELIMITER and token.text in ")}]":
                if closer is not None and token.text == closer:
                    break
                self.report("UnbalancedDelimiter", token,
                            f"unexpected '{token.text}' with no matching opener")
                self.advance()
                continue
            if token.kind == KIND_ERROR:
                self.report(token.value or "UnterminatedString", token,
                            "string literal is missing its closing quote"
                            if (token.value or "") == "UnterminatedString"
                            else "unterminated braced variable")
                self.advance()
                continue
            if token.kind == KIND_COMMAND and invocation.name is None \
                    and not invocation.parameters and not invocation.positional:
                self.advance()
                invocation.name = token.text
                invocation.name_token = token
                continue
            if token.kind == KIND_PARAMETER:
                self.advance()
                invocation.parameters.append(self._parse_parameter(token, closer))
                continue
            if token.kind == KIND_STUB:
                self.advance()
                self.report("RedirectionNotSupported", token,
                            f"the '<' operator is reserved for future use ({token.text})")
                invocation.positional.append(token)
                continue
            if token.kind == KIND_REDIRECTION:
                self.advance()
                invocation.redirections.append(self._parse_redirection(token))
                continue
            if token.kind == KIND_DELIMITER:
                if token.text in _OPENERS:
                    invocation.positional.append(self._parse_group(closer))
                else:
                    self.advance()
                    invocation.positional.append(token)
                continue
            if token.kind == KIND_OPERATOR and token.text == "&" \
                    and invocation.name is None and not invocation.parameters \
                    and not invocation.positional:
                # call operator: the next value names the command
                self.advance()
                continue
            if token.kind in _VALUE_KINDS or token.kind == KIND_OPERATOR:
                self.advance()
                if invocation.name is None and not invocation.parameters \
                        and not invocation.positional and token.kind in _VALUE_KINDS:
                    invocation.name = token.text
                    invocation.name_token = token
                else:
                    invocation.positional.append(token)
                continue
            # unknown token kind: consume to guarantee progress
            self.advance()
            invocation.positional.append(token)
        return invocation

    def _parse_parameter(self, token: Token, closer: str | None) -> Parameter:
        parameter = Parameter(name=token.text, token=token)
        following = self.peek()
        if following.kind in _VALUE_KINDS:
            parameter.argument = self.advance()
        elif following.kind == KIND_DELIMITER and following.text in _OPENERS:
            parameter.argument = self._parse_group(closer)
        return parameter

    def _parse_redirection(self, operator: Token) -> Redirection:
        redirection = Redirection(operator=operator)
        if operator.text.startswith("<"):
            self.report("RedirectionNotSupported", operator,
                        "the '<' operator is reserved for future use")
            return redirection
        if "&" in operator.text:
            return redirection
        target = self.peek()
        if target.kind in _VALUE_KINDS:
            redirection.target = self.advance()
        else:
            self.report("MissingFileSpecification", operator,
                        f"redirection operator '{operator.text}' has no file target")
        return redirection

    def _parse_group(self, closer: str | None):
        opener = self.advance()
        expected = _OPENERS[opener.text]
        if opener.text == "[":
            return self._parse_bracket_group(opener)
        statements: list[Statement] = []
        saw_content = False
        while True:
            token = self.peek()
            if token.kind == KIND_END:
                self.report("UnbalancedDelimiter", opener,
                            f"missing closing '{expected}' for '{opener.text}'")
                break
            if token.kind == KIND_DELIMITER and token.text == expected:
                self.advance()
                break
            if token.kind == KIND_SEMICOLON:
                self.advance()
                continue
            saw_content = True
            statements.append(self.parse_statement(closer=expected))
        if opener.text in ("{", "@{"):
            return ScriptBlock(statements=statements, hashtable=opener.text == "@{")
        if not saw_content and opener.text in ("(", "$("):
            self.report("MissingExpression", opener,
                        "an expression was expected inside the parentheses")
        return Subexpression(opener=opener.text, statements=statements)

    def _parse_bracket_group(self, opener: Token) -> BracketGroup:
        group = BracketGroup()
        depth = 1
        while depth > 0:
            token = self.peek()
            if token.kind == KIND_END:
                self.report("UnbalancedDelimiter", opener, "missing closing ']'")
                break
            if token.kind == KIND_ERROR:
                self.report(token.value or "UnterminatedString", token,
                            "string literal is missing its closing quote")
                self.advance()
                continue
            self.advance()
            if token.kind == KIND_DELIMITER:
                if token.text == "[":
                    depth += 1
                elif token.text == "]":
                    depth -= 1
                    continue
            group.tokens.append(token)
        return group


def parse_ps(tokens: list[Token], source: str | None = None) -> tuple[Snippet | None, list[Diagnostic]]:
    """Parse a token stream. Returns (snippet, diagnostics); the snippet is
    None exactly when a ParseError is present."""
    if source is None:
        source = "".join(t.text for t in tokens)
    parser = _Parser(tokens, source)
    snippet = parser.parse_snippet()
    diagnostics = parser.diagnostics
    if any(d.severity == Severity.PARSE_ERROR for d in diagnostics):
        return None, diagnostics
    return snippet, diagnostics
