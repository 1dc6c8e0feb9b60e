"""Corpus loading, curation, splitting, and summary statistics.

Corpora live in JSON-lines files, one sample per line:
id (optional), intent (required for labeled corpora), command, source,
tactic (optional), repo (optional, consumed by curation).
"""

from __future__ import annotations

import json
import random
import re
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import simmetrics

KNOWN_SOURCES = ("atomic-red-team", "stockpile", "empire", "online", "other")

LABELED = "labeled"
UNLABELED = "unlabeled"

MAX_COMMAND_CHARS = 1024

# cmdlets whose snippets carry no behavior worth pre-training on
LOGGING_CMDLETS = frozenset({
    "write-host", "write-output", "write-verbose", "write-debug",
    "write-information", "echo",
})

_LEADING_CMDLET = re.compile(r"^\s*([A-Za-z][\w-]*)")


@dataclass(frozen=True)
class Sample:
    """One labeled or unlabeled PowerShell snippet."""

    id: str
    command: str
    intent: str | None = None
    source: str = "other"
    tactic: str | None = None
    repo: str | None = None


@dataclass(frozen=True)
class Corpus:
    samples: tuple[Sample, ...]
    kind: str = LABELED

    def __post_init__(self):
        ids = [s.id for s in self.samples]
        if len(set(ids)) != len(ids):
            dupe = next(i for i, n in Counter(ids).items() if n > 1)
            raise ValueError(f"duplicate sample id {dupe!r}")

    def __len__(self) -> int:
        return len(self.samples)

    def ids(self) -> set[str]:
        return {s.id for s in self.samples}


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.8
    valid_fraction: float = 0.1
    test_fraction: float = 0.1
    seed: int = 0

    def __post_init__(self):
        fractions = (self.train_fraction, self.valid_fraction, self.test_fraction)
        if not all(0 < f < 1 for f in fractions):
            raise ValueError("split fractions must lie in (0, 1)")
        if abs(sum(fractions) - 1.0) > 1e-9:
            raise ValueError("split fractions must sum to 1")


@dataclass(frozen=True)
class CorpusStats:
    size: int
    unique_intents: int
    unique_commands: int
    unique_intent_tokens: int
    unique_command_tokens: int
    avg_tokens_per_intent: float
    avg_tokens_per_command: float


def _parse_line(lineno: int, line: str, kind: str) -> dict:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ValueError(f"line {lineno}: malformed JSON ({exc.msg})") from exc
    if not isinstance(record, dict):
        raise ValueError(f"line {lineno}: expected an object")
    if "command" not in record:
        raise ValueError(f"line {lineno}: missing field command")
    if not isinstance(record["command"], str) or not record["command"]:
        raise ValueError(f"line {lineno}: command must be a non-empty string")
    if kind == LABELED:
        if "intent" not in record:
            raise ValueError(f"line {lineno}: missing field intent")
        if not isinstance(record["intent"], str) or not record["intent"].strip():
            raise ValueError(f"line {lineno}: intent must be non-empty")
    return record


def load_corpus(path: str | Path, kind: str = LABELED) -> Corpus:
    """Read a JSON-lines corpus, preserving file order.

    Lines without an explicit id get a sequential one derived from their
    line number. Malformed lines and duplicate explicit ids are errors
    that name the offending line.
    """
    if kind not in (LABELED, UNLABELED):
        raise ValueError(f"unknown corpus kind {kind!r}")
    samples: list[Sample] = []
    seen: dict[str, int] = {}
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            record = _parse_line(lineno, line, kind)
            sample_id = record.get("id") or f"s{lineno:05d}"
            if sample_id in seen:
                raise ValueError(
                    f"line {lineno}: duplicate id {sample_id!r} (first seen on line {seen[sample_id]})")
            seen[sample_id] = lineno
            samples.append(Sample(
                id=str(sample_id),
                command=record["command"],
                intent=record.get("intent"),
                source=record.get("source", "other"),
                tactic=record.get("tactic"),
                repo=record.get("repo"),
            ))
    return Corpus(samples=tuple(samples), kind=kind)


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for sample in corpus.samples:
            record = {"id": sample.id}
            if sample.intent is not None:
                record["intent"] = sample.intent
            record["command"] = sample.command
            record["source"] = sample.source
            if sample.tactic is not None:
                record["tactic"] = sample.tactic
            if sample.repo is not None:
                record["repo"] = sample.repo
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def leading_cmdlet(command: str) -> str | None:
    match = _LEADING_CMDLET.match(command)
    return match.group(1).lower() if match else None


def curate_unlabeled(raw: Corpus) -> Corpus:
    """Drop logging/echo-led snippets, oversized commands, and duplicate
    commands within the same repository. Order of survivors is preserved;
    curating twice is the identity."""
    if raw.kind != UNLABELED:
        raise ValueError("curation applies to unlabeled corpora")
    survivors: list[Sample] = []
    seen: set[tuple[str, str]] = set()
    for sample in raw.samples:
        if leading_cmdlet(sample.command) in LOGGING_CMDLETS:
            continue
        if len(sample.command) > MAX_COMMAND_CHARS:
            continue
        key = (sample.repo or "other", sample.command.rstrip())
        if key in seen:
            continue
        seen.add(key)
        survivors.append(sample)
    return Corpus(samples=tuple(survivors), kind=UNLABELED)


def split(corpus: Corpus, spec: SplitSpec) -> tuple[Corpus, Corpus, Corpus]:
    """Seeded shuffle split into train/valid/test.

    Sizes are floor(N * fraction) with the remainder assigned to train;
    within each split the original corpus order is kept.
    """
    n = len(corpus)
    if n == 0:
        raise ValueError("cannot split an empty corpus")
    n_train = int(n * spec.train_fraction)
    n_valid = int(n * spec.valid_fraction)
    n_test = int(n * spec.test_fraction)
    if min(n_train, n_valid, n_test) == 0:
        raise ValueError(
            f"corpus of {n} samples cannot fill every split at "
            f"{spec.train_fraction}/{spec.valid_fraction}/{spec.test_fraction}; "
            "use a larger corpus")
    n_train += n - (n_train + n_valid + n_test)

    order = list(range(n))
    random.Random(spec.seed).shuffle(order)
    buckets = (sorted(order[:n_train]),
               sorted(order[n_train:n_train + n_valid]),
               sorted(order[n_train + n_valid:]))
    return tuple(
        Corpus(samples=tuple(corpus.samples[i] for i in bucket), kind=corpus.kind)
        for bucket in buckets)


def write_splits(corpus: Corpus, spec: SplitSpec, path: str | Path) -> list[Path]:
    """Split and write three sibling files with .train/.valid/.test suffixes."""
    base = Path(path)
    stem = base.name[:-len(".jsonl")] if base.name.endswith(".jsonl") else base.name
    parts = split(corpus, spec)
    written = []
    for part, suffix in zip(parts, ("train", "valid", "test")):
        out = base.parent / f"{stem}.{suffix}.jsonl"
        save_corpus(part, out)
        written.append(out)
    return written


def stats(corpus: Corpus) -> CorpusStats:
    """Counts and averages computed with the metrics tokenizer."""
    intents = [s.intent for s in corpus.samples if s.intent is not None]
    intent_tokens = [simmetrics.tokenize(i) for i in intents]
    command_tokens = [simmetrics.tokenize(s.command) for s in corpus.samples]
    total_intent_tokens = sum(len(t) for t in intent_tokens)
    total_command_tokens = sum(len(t) for t in command_tokens)
    return CorpusStats(
        size=len(corpus),
        unique_intents=len(set(intents)),
        unique_commands=len({s.command for s in corpus.samples}),
        unique_intent_tokens=len({t for toks in intent_tokens for t in toks}),
        unique_command_tokens=len({t for toks in command_tokens for t in toks}),
        avg_tokens_per_intent=total_intent_tokens / len(intents) if intents else 0.0,
        avg_tokens_per_command=total_command_tokens / len(corpus) if len(corpus) else 0.0,
    )


def tactic_coverage(corpus: Corpus) -> dict[str, int]:
    """Histogram over tactic labels; untagged samples count as unmapped."""
    if corpus.kind != LABELED:
        raise ValueError("tactic coverage applies to labeled corpora")
    return dict(Counter(s.tactic if s.tactic else "unmapped" for s in corpus.samples))
