"""Best-practice rule engine over parsed snippets.

The catalog lives in rule_catalog.json; every rule here must carry a code
from that file. Severities follow the catalog, not the call sites.
"""

from __future__ import annotations

import json
import re
from importlib import resources

from .diagnostics import Diagnostic, Severity
from .parser import Invocation, Parameter, ScriptBlock, Snippet, Subexpression
from .tokens import KIND_COMMAND, KIND_STRING, Token

ALIASES = {
    "iex": "Invoke-Expression", "icm": "Invoke-Command",
    "iwr": "Invoke-WebRequest", "curl": "Invoke-WebRequest", "wget": "Invoke-WebRequest",
    "irm": "Invoke-RestMethod",
    "gps": "Get-Process", "ps": "Get-Process",
    "gci": "Get-ChildItem", "ls": "Get-ChildItem", "dir": "Get-ChildItem",
    "gc": "Get-Content", "cat": "Get-Content", "type": "Get-Content",
    "gi": "Get-Item", "gp": "Get-ItemProperty", "sp": "Set-ItemProperty",
    "gm": "Get-Member", "gcm": "Get-Command", "gwmi": "Get-WmiObject",
    "gsv": "Get-Service", "gjb": "Get-Job", "gl": "Get-Location", "pwd": "Get-Location",
    "echo": "Write-Output", "write": "Write-Output",
    "select": "Select-Object", "sls": "Select-String",
    "where": "Where-Object", "?": "Where-Object",
    "foreach": "ForEach-Object", "%": "ForEach-Object",
    "sort": "Sort-Object", "measure": "Measure-Object", "group": "Group-Object",
    "ft": "Format-Table", "fl": "Format-List", "fw": "Format-Wide",
    "tee": "Tee-Object",
    "rm": "Remove-Item", "del": "Remove-Item", "erase": "Remove-Item",
    "rd": "Remove-Item", "ri": "Remove-Item", "rmdir": "Remove-Item",
    "cp": "Copy-Item", "copy": "Copy-Item", "cpi": "Copy-Item",
    "mv": "Move-Item", "move": "Move-Item", "mi": "Move-Item",
    "ni": "New-Item", "nal": "New-Alias", "ndr": "New-PSDrive",
    "cd": "Set-Location", "chdir": "Set-Location", "sl": "Set-Location",
    "pushd": "Push-Location", "popd": "Pop-Location",
    "cls": "Clear-Host", "clear": "Clear-Host", "clc": "Clear-Content",
    "start": "Start-Process", "saps": "Start-Process", "sajb": "Start-Job",
    "kill": "Stop-Process", "spps": "Stop-Process", "spsv": "Stop-Service",
    "sleep": "Start-Sleep", "sasv": "Start-Service",
    "ipmo": "Import-Module", "rmo": "Remove-Module", "gmo": "Get-Module",
    "epal": "Export-Alias", "ipal": "Import-Alias",
    "history": "Get-History", "h": "Get-History", "ghy": "Get-History",
    "compare": "Compare-Object", "diff": "Compare-Object",
    "oh": "Out-Host", "sc": "Set-Content",
}

APPROVED_VERBS = frozenset(verb.lower() for verb in (
    # common
    "Add", "Clear", "Close", "Copy", "Enter", "Exit", "Find", "Format", "Get",
    "Hide", "Join", "Lock", "Move", "New", "Open", "Optimize", "Pop", "Push",
    "Redo", "Remove", "Rename", "Reset", "Resize", "Search", "Select", "Set",
    "Show", "Skip", "Split", "Step", "Switch", "Undo", "Unlock", "Watch",
    # data
    "Backup", "Checkpoint", "Compare", "Compress", "Convert", "ConvertFrom",
    "ConvertTo", "Dismount", "Edit", "Expand", "Export", "Group", "Import",
    "Initialize", "Limit", "Merge", "Mount", "Out", "Publish", "Restore",
    "Save", "Sync", "Unpublish", "Update",
    # lifecycle
    "Approve", "Assert", "Build", "Complete", "Confirm", "Deny", "Deploy",
    "Disable", "Enable", "Install", "Invoke", "Register", "Request",
    "Restart", "Resume", "Start", "Stop", "Submit", "Suspend", "Uninstall",
    "Unregister", "Wait",
    # diagnostic
    "Debug", "Measure", "Ping", "Repair", "Resolve", "Test", "Trace",
    # communications
    "Connect", "Disconnect", "Read", "Receive", "Send", "Write",
    # security
    "Block", "Grant", "Protect", "Revoke", "Unblock", "Unprotect",
    # other
    "Use",
))

_VERB_NOUN = re.compile(r"([A-Za-z]+)-\w")
_TRAILING_WS = re.compile(r"[ \t]+(?=\r?\n|$)")
_SAFE_COMPUTER_NAMES = frozenset({"localhost", ".", "127.0.0.1", "::1"})


def load_catalog() -> dict:
    """The published rule catalog, parsed from the packaged JSON document."""
    text = resources.files("psbench.psparse").joinpath("rule_catalog.json").read_text("utf-8")
    return json.loads(text)


_CATALOG = load_catalog()
_SEVERITY_BY_CODE = {rule["code"]: Severity.from_label(rule["severity"])
                     for rule in _CATALOG["rules"]}
RULE_CODES = frozenset(_SEVERITY_BY_CODE)


def _hit(code: str, span: tuple[int, int], message: str) -> Diagnostic:
    return Diagnostic(code=code, severity=_SEVERITY_BY_CODE[code],
                      span=span, message=message)


def _walk_invocations(statements) -> list[Invocation]:
    found: list[Invocation] = []

    def visit_value(value) -> None:
        if isinstance(value, (ScriptBlock, Subexpression)):
            for statement in value.statements:
                visit_statement(statement)

    def visit_statement(statement) -> None:
        for invocation in statement.pipeline.invocations:
            found.append(invocation)
            for parameter in invocation.parameters:
                visit_value(parameter.argument)
            for positional in invocation.positional:
                visit_value(positional)

    for statement in statements:
        visit_statement(statement)
    return found


def _resolved_name(invocation: Invocation) -> str | None:
    if invocation.name is None:
        return None
    name = invocation.name.lower()
    return ALIASES.get(name, name).lower() if name in ALIASES else name


def _literal_argument(parameter: Parameter) -> Token | None:
    argument = parameter.argument
    if isinstance(argument, Token) and argument.kind in (KIND_COMMAND, KIND_STRING):
        return argument
    return None


def _check_invocation(invocation: Invocation, diagnostics: list[Diagnostic]) -> None:
    name = invocation.name
    token = invocation.name_token
    resolved = _resolved_name(invocation)
    if name and token is not None:
        lowered = name.lower()
        if lowered in ALIASES:
            diagnostics.append(_hit(
                "AvoidUsingCmdletAliases", token.span,
                f"'{name}' is an alias of {ALIASES[lowered]}"))
        if resolved == "invoke-expression":
            diagnostics.append(_hit(
                "AvoidUsingInvokeExpression", token.span,
                "Invoke-Expression executes its argument as code"))
        if resolved == "write-host":
            diagnostics.append(_hit(
                "AvoidUsingWriteHost", token.span,
                "Write-Host bypasses the output pipeline"))
        if lowered not in ALIASES and "\\" not in name and "/" not in name \
                and "." not in name:
            match = _VERB_NOUN.match(name)
            if match and match.group(1).lower() not in APPROVED_VERBS:
                diagnostics.append(_hit(
                    "UseApprovedVerbs", token.span,
                    f"'{match.group(1)}' is not an approved PowerShell verb"))

    has_as_plain_text = any(p.name.lower().rstrip(":") == "-asplaintext"
                            for p in invocation.parameters)
    if resolved == "convertto-securestring" and has_as_plain_text:
        diagnostics.append(_hit(
            "AvoidUsingPlainTextPassword",
            (token.span if token is not None else (0, 0)),
            "ConvertTo-SecureString -AsPlainText handles a plain text password"))

    for parameter in invocation.parameters:
        bare = parameter.name.lower().rstrip(":").lstrip("-")
        literal = _literal_argument(parameter)
        if "password" in bare and literal is not None:
            diagnostics.append(_hit(
                "AvoidUsingPlainTextPassword", literal.span,
                f"parameter {parameter.name} is bound to a plain text value"))
        if bare == "computername" and literal is not None \
                and literal.text.strip("'\"").lower() not in _SAFE_COMPUTER_NAMES:
            diagnostics.append(_hit(
                "AvoidHardcodedComputerName", literal.span,
                f"computer name {literal.text} is hardcoded"))

    # try { } catch { } parses as barewords with block arguments
    sequence = invocation.positional
    for index, item in enumerate(sequence[:-1]):
        if isinstance(item, Token) and item.kind == KIND_COMMAND \
                and item.text.lower() == "catch":
            block = sequence[index + 1]
            if isinstance(block, ScriptBlock) and not block.statements:
                diagnostics.append(_hit(
                    "AvoidUsingEmptyCatchBlock", item.span,
                    "catch block is empty"))


def lint(snippet: Snippet) -> list[Diagnostic]:
    """Apply the fixed rule catalog to a parsed snippet."""
    diagnostics: list[Diagnostic] = []
    for invocation in _walk_invocations(snippet.statements):
        _check_invocation(invocation, diagnostics)
    for match in _TRAILING_WS.finditer(snippet.source):
        diagnostics.append(_hit(
            "AvoidTrailingWhitespace", (match.start(), match.end()),
            "line has trailing whitespace"))
    diagnostics.sort(key=lambda d: (d.span, d.code))
    return diagnostics
