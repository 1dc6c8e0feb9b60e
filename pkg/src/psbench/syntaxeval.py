"""Static-analysis metrics over generated/reference diagnostic sets.

Single syntax accuracy is the share of generated commands with no parse
error, independent of the reference. Comparative accuracy first discards
parse-error codes the reference also exhibits, then discards the two
redirection codes whenever the reference contains a stub template, and
passes a sample whose effective set is empty.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .psparse import Diagnostic, Severity, analyze

# parse errors caused by <placeholder> templates in reference commands
STUB_FILTERED_CODES = frozenset({"RedirectionNotSupported", "MissingFileSpecification"})

SEVERITY_LABELS = ("ParseError", "Error", "Warning", "Information")


@dataclass(frozen=True)
class SyntaxVerdict:
    id: str
    gen_parse_errors: frozenset[str]
    ref_parse_errors: frozenset[str]
    gen_counts: tuple[tuple[str, int], ...]
    ref_counts: tuple[tuple[str, int], ...]
    ref_has_stub: bool
    single_ok: bool
    comparative_ok: bool


@dataclass
class SyntaxSummary:
    single_accuracy_pct: float
    comparative_accuracy_pct: float
    severity_pct: dict[str, dict[str, float]]
    warning_histogram: dict[str, int]
    ref_warning_histogram: dict[str, int] = field(default_factory=dict)
    sample_count: int = 0

    def to_json_dict(self) -> dict:
        return {
            "single_accuracy_pct": self.single_accuracy_pct,
            "comparative_accuracy_pct": self.comparative_accuracy_pct,
            "severity_pct": self.severity_pct,
            "warning_histogram": self.warning_histogram,
            "ref_warning_histogram": self.ref_warning_histogram,
            "sample_count": self.sample_count,
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "SyntaxSummary":
        return cls(
            single_accuracy_pct=payload["single_accuracy_pct"],
            comparative_accuracy_pct=payload["comparative_accuracy_pct"],
            severity_pct=payload["severity_pct"],
            warning_histogram=dict(payload.get("warning_histogram", {})),
            ref_warning_histogram=dict(payload.get("ref_warning_histogram", {})),
            sample_count=payload.get("sample_count", 0),
        )


def _severity_counts(diagnostics: list[Diagnostic]) -> tuple[tuple[str, int], ...]:
    counts = dict.fromkeys(SEVERITY_LABELS, 0)
    for diagnostic in diagnostics:
        counts[diagnostic.severity.label] += 1
    return tuple(counts.items())


def _parse_error_codes(diagnostics: list[Diagnostic]) -> frozenset[str]:
    return frozenset(d.code for d in diagnostics if d.severity == Severity.PARSE_ERROR)


def build_verdict(sample_id: str, gen_diags: list[Diagnostic],
                  ref_diags: list[Diagnostic], ref_has_stub: bool = False) -> SyntaxVerdict:
    gen_errors = _parse_error_codes(gen_diags)
    ref_errors = _parse_error_codes(ref_diags)
    effective = gen_errors - ref_errors
    if ref_has_stub:
        effective -= STUB_FILTERED_CODES
    return SyntaxVerdict(
        id=sample_id,
        gen_parse_errors=gen_errors,
        ref_parse_errors=ref_errors,
        gen_counts=_severity_counts(gen_diags),
        ref_counts=_severity_counts(ref_diags),
        ref_has_stub=ref_has_stub,
        single_ok=not gen_errors,
        comparative_ok=not effective,
    )


def single_accuracy(verdicts: list[SyntaxVerdict]) -> float:
    """Percentage of samples whose generated command has no parse error."""
    if not verdicts:
        raise ValueError("no verdicts to score")
    return 100.0 * sum(v.single_ok for v in verdicts) / len(verdicts)


def comparative_accuracy(verdicts: list[SyntaxVerdict]) -> float:
    """Percentage passing after common-error and stub-template exclusion."""
    if not verdicts:
        raise ValueError("no verdicts to score")
    return 100.0 * sum(v.comparative_ok for v in verdicts) / len(verdicts)


def _percent_with_severity(per_sample: list[list[Diagnostic]]) -> dict[str, float]:
    n = len(per_sample)
    result = {}
    for label in SEVERITY_LABELS:
        severity = Severity.from_label(label)
        hits = sum(1 for diags in per_sample if any(d.severity == severity for d in diags))
        result[label] = 100.0 * hits / n if n else 0.0
    return result


def _warning_histogram(per_sample: list[list[Diagnostic]]) -> dict[str, int]:
    histogram: dict[str, int] = {}
    for diags in per_sample:
        for diagnostic in diags:
            if diagnostic.severity == Severity.WARNING:
                histogram[diagnostic.code] = histogram.get(diagnostic.code, 0) + 1
    return dict(sorted(histogram.items()))


def severity_summary(gen_diags: list[list[Diagnostic]],
                     ref_diags: list[list[Diagnostic]],
                     ids: list[str] | None = None,
                     ref_has_stub: list[bool] | None = None) -> SyntaxSummary:
    """Full summary over aligned per-sample diagnostic lists."""
    if len(gen_diags) != len(ref_diags):
        raise ValueError(
            f"sample count mismatch: {len(gen_diags)} generated vs {len(ref_diags)} reference")
    if not gen_diags:
        raise ValueError("no samples to summarize")
    if ids is None:
        ids = [f"s{i:05d}" for i in range(1, len(gen_diags) + 1)]
    if ref_has_stub is None:
        ref_has_stub = [False] * len(gen_diags)
    verdicts = [build_verdict(i, g, r, stub)
                for i, g, r, stub in zip(ids, gen_diags, ref_diags, ref_has_stub)]
    return SyntaxSummary(
        single_accuracy_pct=single_accuracy(verdicts),
        comparative_accuracy_pct=comparative_accuracy(verdicts),
        severity_pct={
            "generated": _percent_with_severity(gen_diags),
            "ground_truth": _percent_with_severity(ref_diags),
        },
        warning_histogram=_warning_histogram(gen_diags),
        ref_warning_histogram=_warning_histogram(ref_diags),
        sample_count=len(gen_diags),
    )


# --- command-level entry point -------------------------------------------

def analyze_pairs(pairs: list[dict]) -> tuple[list[SyntaxVerdict], list[dict], list[dict]]:
    """Run the parser+linter over {id, candidate, reference} pairs.

    Returns verdicts plus per-sample diagnostic rows for both sides, ready
    for write_sample_diagnostics.
    """
    verdicts, gen_rows, ref_rows = [], [], []
    for pair in pairs:
        gen = analyze(pair["candidate"])
        ref = analyze(pair["reference"])
        verdicts.append(build_verdict(pair["id"], gen.diagnostics, ref.diagnostics,
                                      ref_has_stub=ref.has_stub_template))
        gen_rows.append({"id": pair["id"], "diagnostics": gen.diagnostics,
                         "has_stub_template": gen.has_stub_template})
        ref_rows.append({"id": pair["id"], "diagnostics": ref.diagnostics,
                         "has_stub_template": ref.has_stub_template})
    return verdicts, gen_rows, ref_rows


def summary_from_rows(gen_rows: list[dict], ref_rows: list[dict]) -> SyntaxSummary:
    return severity_summary(
        [row["diagnostics"] for row in gen_rows],
        [row["diagnostics"] for row in ref_rows],
        ids=[row["id"] for row in gen_rows],
        ref_has_stub=[row.get("has_stub_template", False) for row in ref_rows],
    )


# --- file formats ----------------------------------------------------------

def write_sample_diagnostics(path: str | Path, rows: list[dict]) -> None:
    """Grouped JSON lines: one record per sample, diagnostics nested."""
    with Path(path).open("w", encoding="utf-8") as fh:
        for row in rows:
            record = {
                "id": row["id"],
                "diagnostics": [d.to_json_dict() for d in row["diagnostics"]],
                "has_stub_template": bool(row.get("has_stub_template", False)),
            }
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def load_sample_diagnostics(path: str | Path) -> list[dict]:
    rows = []
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"line {lineno}: malformed JSON ({exc.msg})") from exc
            if "id" not in record:
                raise ValueError(f"line {lineno}: missing field id")
            rows.append({
                "id": record["id"],
                "diagnostics": [Diagnostic.from_json_dict(d)
                                for d in record.get("diagnostics", [])],
                "has_stub_template": bool(record.get("has_stub_template", False)),
            })
    return rows


def summary_markdown(summary: SyntaxSummary, label: str = "model") -> str:
    """Accuracy plus per-severity percentage table, two-decimal cells."""
    lines = [
        "| Test Set | Single Accuracy (%) | Comparative Accuracy (%) |",
        "| --- | --- | --- |",
        f"| {label} | {summary.single_accuracy_pct:.2f} | {summary.comparative_accuracy_pct:.2f} |",
        "",
        "| Test Set | ParseError (%) | Error (%) | Warning (%) |",
        "| --- | --- | --- | --- |",
    ]
    for side, name in (("generated", label), ("ground_truth", "Ground Truth")):
        pct = summary.severity_pct[side]
        lines.append(f"| {name} | {pct['ParseError']:.2f} | {pct['Error']:.2f} "
                     f"| {pct['Warning']:.2f} |")
    return "\n".join(lines) + "\n"


def histogram_csv(summary: SyntaxSummary) -> str:
    """Warning-type counts for the generated set and the ground truth."""
    codes = sorted(set(summary.warning_histogram) | set(summary.ref_warning_histogram))
    lines = ["rule,generated,ground_truth"]
    for code in codes:
        lines.append(f"{code},{summary.warning_histogram.get(code, 0)},"
                     f"{summary.ref_warning_histogram.get(code, 0)}")
    return "\n".join(lines) + "\n"
