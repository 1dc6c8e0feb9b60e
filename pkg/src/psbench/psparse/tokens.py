"""Tokenizer for one-liner PowerShell snippets.

Argument-mode flavored: barewords swallow most characters (paths, globs,
base64 blobs), while quotes, pipes, semicolons, redirections, delimiters,
comments, variables, and ``<identifier>`` stub templates are split out.
Total on arbitrary input; an unterminated string yields a trailing error
token instead of an exception.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

KIND_COMMAND = "cmdlet-or-bareword"
KIND_PARAMETER = "parameter"
KIND_VARIABLE = "variable"
KIND_STRING = "string-literal"
KIND_NUMBER = "number"
KIND_OPERATOR = "operator"
KIND_PIPE = "pipe"
KIND_SEMICOLON = "semicolon"
KIND_REDIRECTION = "redirection"
KIND_DELIMITER = "brace/paren/bracket"
KIND_STUB = "stub-template"
KIND_COMMENT = "comment"
KIND_END = "end"
KIND_ERROR = "error"

# characters a bareword can never contain
_TERMINATORS = set("|;(){}[]<>\"'#$,&")

_STUB_RE = re.compile(r"<[A-Za-z_][A-Za-z0-9_-]*>")
_STREAM_REDIR_RE = re.compile(r"\d>>?(&\d)?")
_NUMBER_RE = re.compile(r"[+-]?\d+(\.\d+)?([kmgtp]b)?$", re.IGNORECASE)
_VARIABLE_CHARS = re.compile(r"[A-Za-z0-9_:]")
_SPECIAL_VARIABLES = "$?^_"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    start: int
    end: int
    # unescaped content for strings, error code for error tokens
    value: str | None = None

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


def _scan_single_quoted(source: str, start: int) -> Token:
    i = start + 1
    content: list[str] = []
    while i < len(source):
        ch = source[i]
        if ch == "'":
            if i + 1 < len(source) and source[i + 1] == "'":
                content.append("'")
                i += 2
                continue
            return Token(KIND_STRING, source[start:i + 1], start, i + 1, "".join(content))
        content.append(ch)
        i += 1
    return Token(KIND_ERROR, source[start:], start, len(source), "UnterminatedString")


def _scan_double_quoted(source: str, start: int) -> Token:
    i = start + 1
    content: list[str] = []
    while i < len(source):
        ch = source[i]
        if ch == "`" and i + 1 < len(source):
            content.append(source[i + 1])
            i += 2
            continue
        if ch == '"':
            if i + 1 < len(source) and source[i + 1] == '"':
                content.append('"')
                i += 2
                continue
            return Token(KIND_STRING, source[start:i + 1], start, i + 1, "".join(content))
        content.append(ch)
        i += 1
    return Token(KIND_ERROR, source[start:], start, len(source), "UnterminatedString")


def _scan_here_string(source: str, start: int) -> Token:
    quote = source[start + 1]
    closer = quote + "@"
    at = source.find(closer, start + 2)
    if at == -1:
        return Token(KIND_ERROR, source[start:], start, len(source), "UnterminatedString")
    end = at + 2
    return Token(KIND_STRING, source[start:end], start, end, source[start + 2:at])


def _scan_bareword(source: str, start: int) -> Token:
    i = start
    while i < len(source) and not source[i].isspace() and source[i] not in _TERMINATORS:
        i += 1
    text = source[start:i]
    kind = KIND_NUMBER if _NUMBER_RE.fullmatch(text) else KIND_COMMAND
    return Token(kind, text, start, i)


def _scan_parameter(source: str, start: int) -> Token:
    i = start + 1
    while i < len(source) and (source[i].isalnum() or source[i] in "_-"):
        i += 1
    if i < len(source) and source[i] == ":":
        i += 1
    return Token(KIND_PARAMETER, source[start:i], start, i)


def _scan_variable(source: str, start: int) -> Token:
    nxt = source[start + 1] if start + 1 < len(source) else ""
    if nxt == "{":
        close = source.find("}", start + 2)
        if close == -1:
            return Token(KIND_ERROR, source[start:], start, len(source), "UnbalancedDelimiter")
        return Token(KIND_VARIABLE, source[start:close + 1], start, close + 1)
    if nxt and nxt in _SPECIAL_VARIABLES:
        return Token(KIND_VARIABLE, source[start:start + 2], start, start + 2)
    i = start + 1
    while i < len(source) and _VARIABLE_CHARS.match(source[i]):
        i += 1
    if i == start + 1:
        return Token(KIND_OPERATOR, "$", start, start + 1)
    return Token(KIND_VARIABLE, source[start:i], start, i)


def _scan_redirection(source: str, start: int) -> Token:
    i = start
    if source[i] == ">":
        i += 1
        if i < len(source) and source[i] == ">":
            i += 1
        if i < len(source) and source[i] == "&" and i + 1 < len(source) and source[i + 1].isdigit():
            i += 2
    return Token(KIND_REDIRECTION, source[start:i], start, i)


def tokenize_ps(source: str) -> list[Token]:
    """Tokenize a snippet. The stream always ends with an end token; an
    unterminated string contributes an error token right before it."""
    tokens: list[Token] = []
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "#":
            end = source.find("\n", i)
            end = n if end == -1 else end
            tokens.append(Token(KIND_COMMENT, source[i:end], i, end))
            i = end
            continue
        if ch == "'":
            token = _scan_single_quoted(source, i)
        elif ch == '"':
            token = _scan_double_quoted(source, i)
        elif ch == "$":
            nxt = source[i + 1] if i + 1 < n else ""
            if nxt == "(":
                token = Token(KIND_DELIMITER, "$(", i, i + 2)
            else:
                token = _scan_variable(source, i)
        elif ch == "@":
            nxt = source[i + 1] if i + 1 < n else ""
            if nxt and nxt in "({":
                token = Token(KIND_DELIMITER, source[i:i + 2], i, i + 2)
            elif nxt and nxt in "\"'":
                token = _scan_here_string(source, i)
            elif nxt.isalpha() or nxt == "_":
                j = i + 1
                while j < n and (source[j].isalnum() or source[j] == "_"):
                    j += 1
                token = Token(KIND_VARIABLE, source[i:j], i, j)
            else:
                token = Token(KIND_OPERATOR, "@", i, i + 1)
        elif ch == "<":
            match = _STUB_RE.match(source, i)
            if match:
                token = Token(KIND_STUB, match.group(), i, match.end())
            else:
                token = Token(KIND_REDIRECTION, "<", i, i + 1)
        elif ch == ">":
            token = _scan_redirection(source, i)
        elif ch.isdigit():
            match = _STREAM_REDIR_RE.match(source, i)
            if match:
                token = Token(KIND_REDIRECTION, match.group(), i, match.end())
            else:
                token = _scan_bareword(source, i)
        elif ch == "-" and i + 1 < n and (source[i + 1].isalpha() or source[i + 1] == "_"):
            token = _scan_parameter(source, i)
        elif ch == "|":
            token = Token(KIND_PIPE, "|", i, i + 1)
        elif ch == ";":
            token = Token(KIND_SEMICOLON, ";", i, i + 1)
        elif ch in "(){}[]":
            token = Token(KIND_DELIMITER, ch, i, i + 1)
        elif ch in ",&":
            token = Token(KIND_OPERATOR, ch, i, i + 1)
        elif ch == "=":
            token = Token(KIND_OPERATOR, "=", i, i + 1)
        elif ch == "+" and i + 1 < n and source[i + 1] == "=":
            token = Token(KIND_OPERATOR, "+=", i, i + 2)
        else:
            token = _scan_bareword(source, i)
        tokens.append(token)
        if token.kind == KIND_ERROR:
            break
        i = token.end
    tokens.append(Token(KIND_END, "", n, n))
    return tokens
