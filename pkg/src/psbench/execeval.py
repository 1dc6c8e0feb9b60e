"""Behavioral comparison of execution event traces.

Traces come from repeated runs of one command on a monitored host. Records
are filtered to the command's process tree, canonicalized (volatile fields
dropped, pids replaced by lineage role), stabilized across runs by multiset
intersection, and scored as macro precision/recall/F1 of retrieved
(generated-command) events against relevant (ground-truth) events.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path

# fields that differ between runs of the very same command
VOLATILE_FIELDS = frozenset({
    "UtcTime", "ProcessGuid", "LogonGuid", "LogonId", "ProcessId",
    "ParentProcessId", "TerminalSessionId", "SequenceNumber",
})

# field values that are filesystem paths, compared case-insensitively
PATH_FIELDS = frozenset({
    "Image", "ParentImage", "TargetFilename", "CurrentDirectory",
    "ImageLoaded", "SourceImage", "TargetImage", "PipeName", "Device",
})

ROOT = "root"
DESCENDANT = "descendant"


@dataclass(frozen=True)
class EventRecord:
    event_type: str
    fields: tuple[tuple[str, str], ...] = ()
    process_id: int | None = None
    parent_process_id: int | None = None
    lineage_role: str | None = None

    @classmethod
    def from_json_dict(cls, payload: dict) -> "EventRecord":
        fields = tuple(sorted((str(k), str(v))
                              for k, v in (payload.get("fields") or {}).items()))
        return cls(
            event_type=payload["event_type"],
            fields=fields,
            process_id=payload.get("process_id"),
            parent_process_id=payload.get("parent_process_id"),
            lineage_role=payload.get("lineage_role"),
        )

    def to_json_dict(self) -> dict:
        record = {"event_type": self.event_type, "fields": dict(self.fields)}
        if self.process_id is not None:
            record["process_id"] = self.process_id
        if self.parent_process_id is not None:
            record["parent_process_id"] = self.parent_process_id
        if self.lineage_role is not None:
            record["lineage_role"] = self.lineage_role
        return record


@dataclass
class Trace:
    sample_id: str
    run_index: int
    records: list[EventRecord] = field(default_factory=list)
    root_pid: int | None = None


@dataclass
class RunSet:
    sample_id: str
    runs: list[Trace] = field(default_factory=list)

    def __post_init__(self):
        for trace in self.runs:
            if trace.sample_id != self.sample_id:
                raise ValueError(
                    f"trace for {trace.sample_id!r} mixed into run set {self.sample_id!r}")


@dataclass
class ExecScore:
    precision: float
    recall: float
    f1: float
    per_sample: list[dict] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {"precision": self.precision, "recall": self.recall,
                "f1": self.f1, "per_sample": self.per_sample}

    @classmethod
    def from_json_dict(cls, payload: dict) -> "ExecScore":
        return cls(precision=payload["precision"], recall=payload["recall"],
                   f1=payload["f1"], per_sample=list(payload.get("per_sample", [])))


def load_trace(path: str | Path) -> Trace:
    """Load one trace file (the capture agent's export schema)."""
    with Path(path).open(encoding="utf-8") as fh:
        payload = json.load(fh)
    for key in ("sample_id", "run_index", "records"):
        if key not in payload:
            raise ValueError(f"{path}: missing field {key}")
    records = []
    for index, record in enumerate(payload["records"], start=1):
        if not isinstance(record, dict) or not record.get("event_type"):
            raise ValueError(f"record {index}: missing event_type")
        records.append(EventRecord.from_json_dict(record))
    return Trace(
        sample_id=str(payload["sample_id"]),
        run_index=int(payload["run_index"]),
        records=records,
        root_pid=payload.get("root_pid"),
    )


def load_runset(paths: list[str | Path]) -> RunSet:
    traces = sorted((load_trace(p) for p in paths), key=lambda t: t.run_index)
    if not traces:
        raise ValueError("no trace files given")
    return RunSet(sample_id=traces[0].sample_id, runs=traces)


def filter_lineage(trace: Trace, root_pid: int | None = None) -> Trace:
    """Keep records whose pid is the root or one of its transitive
    children, discovered from ProcessCreate parent links in file order."""
    root = root_pid if root_pid is not None else trace.root_pid
    if root is None:
        raise ValueError(f"trace {trace.sample_id!r}: no root pid supplied or recorded")
    members = {root}
    for record in trace.records:
        if record.event_type == "ProcessCreate" \
                and record.parent_process_id in members \
                and record.process_id is not None:
            members.add(record.process_id)
    kept = [replace(record,
                    lineage_role=ROOT if record.process_id == root else DESCENDANT)
            for record in trace.records if record.process_id in members]
    return Trace(sample_id=trace.sample_id, run_index=trace.run_index,
                 records=kept, root_pid=root)


def canonicalize(record: EventRecord) -> EventRecord:
    """Drop volatile fields, lowercase path fields, and replace raw pids
    with the lineage role. Idempotent."""
    fields = tuple(sorted(
        (name, value.lower() if name in PATH_FIELDS else value)
        for name, value in record.fields if name not in VOLATILE_FIELDS))
    return EventRecord(
        event_type=record.event_type,
        fields=fields,
        process_id=None,
        parent_process_id=None,
        lineage_role=record.lineage_role,
    )


def to_multiset(records) -> Counter:
    return Counter(canonicalize(r) for r in records)


def stabilize(runset: RunSet) -> Counter:
    """Multiset intersection of canonical records across all runs; an
    event absent from any single run is treated as noise and dropped."""
    if len(runset.runs) < 2:
        raise ValueError(
            f"run set {runset.sample_id!r} has {len(runset.runs)} runs; need at least 2")
    result: Counter | None = None
    for trace in runset.runs:
        counts = to_multiset(trace.records)
        result = counts if result is None else result & counts
    return result


def _ratio(hit: int, total: int, other_total: int) -> float:
    if total == 0:
        return 1.0 if other_total == 0 else 0.0
    return hit / total


def score(samples: list[dict]) -> ExecScore:
    """Macro precision/recall over samples, F1 from the macro values.

    Each sample supplies `retrieved` (stabilized generated events) and
    `relevant` (stabilized ground-truth events) as multisets or record
    iterables. A sample with no retrieved events scores precision 1 when
    nothing was relevant either, otherwise 0; symmetrically for recall.
    """
    if not samples:
        raise ValueError("no samples to score")
    per_sample = []
    precision_sum = 0.0
    recall_sum = 0.0
    for sample in samples:
        retrieved = sample["retrieved"]
        relevant = sample["relevant"]
        if not isinstance(retrieved, Counter):
            retrieved = to_multiset(retrieved)
        if not isinstance(relevant, Counter):
            relevant = to_multiset(relevant)
        hit = sum((retrieved & relevant).values())
        n_retrieved = sum(retrieved.values())
        n_relevant = sum(relevant.values())
        precision = _ratio(hit, n_retrieved, n_relevant)
        recall = _ratio(hit, n_relevant, n_retrieved)
        precision_sum += precision
        recall_sum += recall
        per_sample.append({
            "id": sample["id"],
            "retrieved": n_retrieved,
            "relevant": n_relevant,
            "relevant_retrieved": hit,
            "precision": precision,
            "recall": recall,
        })
    n = len(samples)
    macro_precision = precision_sum / n
    macro_recall = recall_sum / n
    denominator = macro_precision + macro_recall
    f1 = 2 * macro_precision * macro_recall / denominator if denominator else 0.0
    return ExecScore(precision=macro_precision, recall=macro_recall,
                     f1=f1, per_sample=per_sample)


def discover_runsets(directory: str | Path) -> dict[str, list[Path]]:
    """Map sample id -> sorted run files, from <id>.run<k>.json names."""
    found: dict[str, list[Path]] = {}
    for path in sorted(Path(directory).glob("*.run*.json")):
        stem = path.name[:-len(".json")]
        sample_id, _, run = stem.rpartition(".run")
        if sample_id and run.isdigit():
            found.setdefault(sample_id, []).append(path)
    return found
