"""Aggregate evaluation outputs into machine- and human-readable reports.

JSON is the canonical serialization; CSV and Markdown are derived views
with percentages formatted to two decimals. Rendering is deterministic:
the same bundle always produces identical bytes.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

from .execeval import ExecScore
from .simmetrics import METRIC_NAMES, SimilarityReport
from .syntaxeval import SyntaxSummary, histogram_csv, summary_markdown

FORMATS = ("json", "csv", "markdown")

METRIC_TITLES = {"bleu4": "BLEU-4", "ed": "ED", "meteor": "METEOR", "rouge_l": "ROUGE-L"}


@dataclass
class EvaluationBundle:
    label: str
    timestamp: str
    corpus_hash: str = ""
    seed: int | None = None
    similarity: SimilarityReport | None = None
    syntax: SyntaxSummary | None = None
    execution: ExecScore | None = None

    def __post_init__(self):
        if self.similarity is None and self.syntax is None and self.execution is None:
            raise ValueError("bundle must carry at least one evaluation section")

    def to_json_dict(self) -> dict:
        return {
            "metadata": {
                "label": self.label,
                "timestamp": self.timestamp,
                "corpus_hash": self.corpus_hash,
                "seed": self.seed,
            },
            "similarity": self.similarity.to_json_dict() if self.similarity else None,
            "syntax": self.syntax.to_json_dict() if self.syntax else None,
            "execution": self.execution.to_json_dict() if self.execution else None,
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "EvaluationBundle":
        metadata = payload.get("metadata", {})
        return cls(
            label=metadata.get("label", "model"),
            timestamp=metadata.get("timestamp", ""),
            corpus_hash=metadata.get("corpus_hash", ""),
            seed=metadata.get("seed"),
            similarity=(SimilarityReport.from_json_dict(payload["similarity"])
                        if payload.get("similarity") else None),
            syntax=(SyntaxSummary.from_json_dict(payload["syntax"])
                    if payload.get("syntax") else None),
            execution=(ExecScore.from_json_dict(payload["execution"])
                       if payload.get("execution") else None),
        )


def file_digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def load_bundle(path: str | Path) -> EvaluationBundle:
    with Path(path).open(encoding="utf-8") as fh:
        return EvaluationBundle.from_json_dict(json.load(fh))


def _check_f1_consistency(execution: ExecScore) -> None:
    denominator = execution.precision + execution.recall
    recomputed = 2 * execution.precision * execution.recall / denominator if denominator else 0.0
    if abs(100 * recomputed - 100 * execution.f1) > 0.01:
        raise ValueError(
            f"stored F1 {execution.f1} disagrees with precision/recall by more than 0.01")


def _similarity_markdown(bundle: EvaluationBundle) -> str:
    aggregate = bundle.similarity.aggregate
    header = " | ".join(METRIC_TITLES[name] + " (%)" for name in METRIC_NAMES)
    values = " | ".join(f"{aggregate[name]:.2f}" for name in METRIC_NAMES)
    return (f"| Model | {header} |\n"
            f"| --- | --- | --- | --- | --- |\n"
            f"| {bundle.label} | {values} |\n")


def _execution_markdown(bundle: EvaluationBundle) -> str:
    execution = bundle.execution
    return ("| Model | Precision (%) | Recall (%) | F1-Score (%) |\n"
            "| --- | --- | --- | --- |\n"
            f"| {bundle.label} | {100 * execution.precision:.2f} "
            f"| {100 * execution.recall:.2f} | {100 * execution.f1:.2f} |\n")


def render_markdown(bundle: EvaluationBundle) -> str:
    lines = [f"# Evaluation report: {bundle.label}", ""]
    lines.append(f"- timestamp: {bundle.timestamp}")
    lines.append(f"- corpus hash: {bundle.corpus_hash or 'n/a'}")
    lines.append(f"- seed: {bundle.seed if bundle.seed is not None else 'n/a'}")
    lines.append("")
    if bundle.similarity is not None:
        lines += ["## Output similarity", "", _similarity_markdown(bundle)]
    if bundle.syntax is not None:
        lines += ["## Static analysis", "", summary_markdown(bundle.syntax, bundle.label)]
    if bundle.execution is not None:
        _check_f1_consistency(bundle.execution)
        lines += ["## Execution analysis", "", _execution_markdown(bundle)]
    return "\n".join(lines)


def _similarity_csv(report: SimilarityReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["id", *METRIC_NAMES])
    for row in report.per_sample:
        writer.writerow([row["id"]] + [f"{row[name]:.6f}" for name in METRIC_NAMES])
    writer.writerow(["aggregate_pct"] + [f"{report.aggregate[name]:.2f}"
                                         for name in METRIC_NAMES])
    return buffer.getvalue()


def _syntax_csv(summary: SyntaxSummary, label: str) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["test_set", "single_accuracy_pct", "comparative_accuracy_pct",
                     "parse_error_pct", "error_pct", "warning_pct"])
    generated = summary.severity_pct["generated"]
    ground = summary.severity_pct["ground_truth"]
    writer.writerow([label, f"{summary.single_accuracy_pct:.2f}",
                     f"{summary.comparative_accuracy_pct:.2f}",
                     f"{generated['ParseError']:.2f}", f"{generated['Error']:.2f}",
                     f"{generated['Warning']:.2f}"])
    writer.writerow(["ground_truth", "", "",
                     f"{ground['ParseError']:.2f}", f"{ground['Error']:.2f}",
                     f"{ground['Warning']:.2f}"])
    return buffer.getvalue()


def _execution_csv(execution: ExecScore) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["id", "retrieved", "relevant", "relevant_retrieved",
                     "precision", "recall"])
    for row in execution.per_sample:
        writer.writerow([row["id"], row["retrieved"], row["relevant"],
                         row["relevant_retrieved"], f"{row['precision']:.6f}",
                         f"{row['recall']:.6f}"])
    writer.writerow(["macro", "", "", "", f"{execution.precision:.6f}",
                     f"{execution.recall:.6f}"])
    writer.writerow(["f1", "", "", "", f"{execution.f1:.6f}", ""])
    return buffer.getvalue()


def render(bundle: EvaluationBundle, formats: set[str], out_dir: str | Path) -> list[Path]:
    """Write the requested formats into out_dir and return the paths."""
    if not formats:
        raise ValueError("no output formats requested")
    unknown = set(formats) - set(FORMATS)
    if unknown:
        raise ValueError(f"unknown formats: {sorted(unknown)}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    if "json" in formats:
        path = out / "report.json"
        path.write_text(json.dumps(bundle.to_json_dict(), indent=2, sort_keys=True) + "\n",
                        encoding="utf-8")
        written.append(path)
    if "csv" in formats:
        if bundle.similarity is not None:
            path = out / "similarity.csv"
            path.write_text(_similarity_csv(bundle.similarity), encoding="utf-8")
            written.append(path)
        if bundle.syntax is not None:
            path = out / "syntax.csv"
            path.write_text(_syntax_csv(bundle.syntax, bundle.label), encoding="utf-8")
            written.append(path)
            path = out / "warning_histogram.csv"
            path.write_text(histogram_csv(bundle.syntax), encoding="utf-8")
            written.append(path)
        if bundle.execution is not None:
            path = out / "execution.csv"
            path.write_text(_execution_csv(bundle.execution), encoding="utf-8")
            written.append(path)
    if "markdown" in formats:
        path = out / "report.md"
        path.write_text(render_markdown(bundle), encoding="utf-8")
        written.append(path)
    return written


def _metric_columns(bundles: list[EvaluationBundle]) -> list[tuple[str, list[float | None]]]:
    """(row title, one value per bundle) for every metric any bundle has."""
    rows: list[tuple[str, list[float | None]]] = []

    def add(title, getter):
        values = [getter(b) for b in bundles]
        if any(v is not None for v in values):
            rows.append((title, values))

    for name in METRIC_NAMES:
        add(f"{METRIC_TITLES[name]} (%)",
            lambda b, n=name: b.similarity.aggregate[n] if b.similarity else None)
    add("Single Accuracy (%)",
        lambda b: b.syntax.single_accuracy_pct if b.syntax else None)
    add("Comparative Accuracy (%)",
        lambda b: b.syntax.comparative_accuracy_pct if b.syntax else None)
    add("Precision (%)",
        lambda b: 100 * b.execution.precision if b.execution else None)
    add("Recall (%)",
        lambda b: 100 * b.execution.recall if b.execution else None)
    add("F1-Score (%)",
        lambda b: 100 * b.execution.f1 if b.execution else None)
    return rows


def compare(bundles: list[EvaluationBundle]) -> str:
    """Side-by-side Markdown table; the best value per row is bolded."""
    if len(bundles) < 2:
        raise ValueError("comparison needs at least two bundles")
    labels = [b.label for b in bundles]
    if len(set(labels)) != len(labels):
        raise ValueError("bundle labels must be unique")
    lines = ["| Metric | " + " | ".join(labels) + " |",
             "| --- |" + " --- |" * len(labels)]
    for title, values in _metric_columns(bundles):
        present = [v for v in values if v is not None]
        best = max(present) if present else None
        cells = []
        for value in values:
            if value is None:
                cells.append("n/a")
            elif value == best:
                cells.append(f"**{value:.2f}**")
            else:
                cells.append(f"{value:.2f}")
        lines.append(f"| {title} | " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"
