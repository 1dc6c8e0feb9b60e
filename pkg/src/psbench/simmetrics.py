"""Textual similarity between generated commands and references.

Four sentence-level metrics, all in [0, 1]: BLEU-4 over whitespace tokens,
character-level edit similarity, exact-match METEOR, and ROUGE-L. Code
operands get no stemming, no synonymy, and no casefolding anywhere.
"""

from __future__ import annotations

import csv
import json
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path

EPSILON = 1e-9

METRIC_NAMES = ("bleu4", "ed", "meteor", "rouge_l")

# list of whitespace-delimited tokens; only tokenize() should build one
TokenSeq = list


def tokenize(text: str) -> list[str]:
    """Split on runs of whitespace (newlines included), keeping every
    non-whitespace character verbatim."""
    return text.split()


def _ngram_counts(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def bleu4(candidate: list[str], reference: list[str]) -> float:
    """Sentence BLEU with uniform weights over n = 1..4.

    Orders the candidate is too short to populate are dropped and the
    weights renormalized, so bleu4(x, x) == 1 for any non-empty x. A zero
    matched count is smoothed by adding EPSILON. Brevity penalty is
    exp(1 - r/c) when the candidate is shorter than the reference.
    """
    if not candidate or not reference:
        return 0.0
    max_n = min(4, len(candidate))
    weight = 1.0 / max_n
    score = 1.0
    for n in range(1, max_n + 1):
        cand_counts = _ngram_counts(candidate, n)
        ref_counts = _ngram_counts(reference, n)
        matched = sum(min(count, ref_counts[gram]) for gram, count in cand_counts.items())
        total = len(candidate) - n + 1
        precision = (matched + (EPSILON if matched == 0 else 0)) / total
        score *= precision ** weight
    c, r = len(candidate), len(reference)
    brevity = 1.0 if c >= r else math.exp(1.0 - r / c)
    return brevity * score


def levenshtein(a: str, b: str) -> int:
    """Single-character edit distance, iterative two-row DP."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(min(previous[j] + 1,
                               current[j - 1] + 1,
                               previous[j - 1] + (ca != cb)))
        previous = current
    return previous[-1]


def edit_similarity(candidate: str, reference: str) -> float:
    """1 - Levenshtein / max length; 1.0 when both strings are empty."""
    if not candidate and not reference:
        return 1.0
    return 1.0 - levenshtein(candidate, reference) / max(len(candidate), len(reference))


def _forced_alignment_chunks(candidate: list[str], reference: list[str],
                             quota: dict[str, int]) -> int | None:
    """Chunk count when every matched token occurs exactly once per side,
    which pins the alignment. None when any ambiguity remains."""
    if any(candidate.count(t) != 1 or reference.count(t) != 1 for t in quota):
        return None
    ref_index = {t: j for j, t in enumerate(reference) if t in quota}
    pairs = [(i, ref_index[t]) for i, t in enumerate(candidate) if t in quota]
    chunks = 1
    for k in range(1, len(pairs)):
        if pairs[k][0] != pairs[k - 1][0] + 1 or pairs[k][1] != pairs[k - 1][1] + 1:
            chunks += 1
    return chunks


def _min_chunks(candidate: list[str], reference: list[str],
                quota: dict[str, int], m: int,
                node_budget: int = 200_000) -> int:
    """Minimum chunk count over maximal alignments, branch and bound.

    Chunk continuations are explored first and branches that already
    reached the incumbent are cut, so the identity alignment collapses
    immediately. The budget caps pathological duplicate-heavy inputs; on
    exhaustion the incumbent (a valid maximal alignment) is returned.
    """
    forced = _forced_alignment_chunks(candidate, reference, quota)
    if forced is not None:
        return forced

    ref_positions: dict[str, list[int]] = defaultdict(list)
    for j, token in enumerate(reference):
        if token in quota:
            ref_positions[token].append(j)

    # occurrences of each matched token at or after each candidate index
    suffix: list[dict[str, int]] = [dict.fromkeys(quota, 0) for _ in range(len(candidate) + 1)]
    for i in range(len(candidate) - 1, -1, -1):
        suffix[i] = dict(suffix[i + 1])
        if candidate[i] in quota:
            suffix[i][candidate[i]] += 1

    # greedy first-fit incumbent so the bound is tight from the start
    best = m
    nodes = 0

    def search(i: int, remaining: dict[str, int], used: set[int],
               matched: int, last: tuple[int, int] | None, chunks: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if chunks >= best or nodes > node_budget:
            return
        if matched == m:
            best = chunks
            return
        if i >= len(candidate):
            return
        token = candidate[i]
        if remaining.get(token, 0) > 0:
            continuation = None
            if last is not None and last[0] == i - 1:
                j = last[1] + 1
                if j < len(reference) and reference[j] == token and j not in used:
                    continuation = j
            if continuation is not None:
                remaining[token] -= 1
                used.add(continuation)
                search(i + 1, remaining, used, matched + 1, (i, continuation), chunks)
                used.discard(continuation)
                remaining[token] += 1
            for j in ref_positions[token]:
                if j in used or j == continuation:
                    continue
                remaining[token] -= 1
                used.add(j)
                search(i + 1, remaining, used, matched + 1, (i, j), chunks + 1)
                used.discard(j)
                remaining[token] += 1
        if all(suffix[i + 1].get(t, 0) >= need for t, need in remaining.items() if need > 0):
            search(i + 1, remaining, used, matched, last, chunks)

    search(0, dict(quota), set(), 0, None, 0)
    return best


def meteor(candidate: list[str], reference: list[str]) -> float:
    """Exact-match unigram METEOR.

    Alignment maximizes matches, then minimizes chunks. With m matches:
    P = m/|candidate|, R = m/|reference|, Fmean = 10PR/(R + 9P),
    penalty = 0.5 (chunks/m)^3, score = Fmean (1 - penalty).
    """
    quota = {t: min(candidate.count(t), reference.count(t))
             for t in set(candidate) & set(reference)}
    m = sum(quota.values())
    if m == 0:
        return 0.0
    chunks = _min_chunks(candidate, reference, quota, m)
    precision = m / len(candidate)
    recall = m / len(reference)
    fmean = 10 * precision * recall / (recall + 9 * precision)
    penalty = 0.5 * (chunks / m) ** 3
    return fmean * (1.0 - penalty)


def lcs_length(a: list[str], b: list[str]) -> int:
    """Longest common subsequence length, iterative single-row DP."""
    if not a or not b:
        return 0
    row = [0] * (len(b) + 1)
    for token in a:
        diagonal = 0
        for j, other in enumerate(b, start=1):
            previous = row[j]
            if token == other:
                row[j] = diagonal + 1
            elif row[j - 1] > row[j]:
                row[j] = row[j - 1]
            diagonal = previous
    return row[-1]


def rouge_l(candidate: list[str], reference: list[str]) -> float:
    """LCS-based F1 (beta = 1); 0 when either side is empty or LCS is 0."""
    if not candidate or not reference:
        return 0.0
    length = lcs_length(candidate, reference)
    if length == 0:
        return 0.0
    precision = length / len(candidate)
    recall = length / len(reference)
    return 2 * precision * recall / (precision + recall)


def score_pair(candidate: str, reference: str) -> dict[str, float]:
    cand_tokens = tokenize(candidate)
    ref_tokens = tokenize(reference)
    return {
        "bleu4": bleu4(cand_tokens, ref_tokens),
        "ed": edit_similarity(candidate, reference),
        "meteor": meteor(cand_tokens, ref_tokens),
        "rouge_l": rouge_l(cand_tokens, ref_tokens),
    }


@dataclass
class SimilarityReport:
    """Per-sample scores in [0, 1] plus aggregate means as percentages."""

    per_sample: list[dict] = field(default_factory=list)
    aggregate: dict[str, float] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {"per_sample": self.per_sample, "aggregate": self.aggregate}

    @classmethod
    def from_json_dict(cls, payload: dict) -> "SimilarityReport":
        return cls(per_sample=list(payload["per_sample"]),
                   aggregate=dict(payload["aggregate"]))


def evaluate_pairs(pairs: list[dict]) -> SimilarityReport:
    """Score a list of {id, candidate, reference} records.

    Aggregates are arithmetic means of the per-sample scores, reported
    as percentages.
    """
    if not pairs:
        raise ValueError("no pairs to score")
    per_sample = []
    for pair in pairs:
        scores = score_pair(pair["candidate"], pair["reference"])
        per_sample.append({"id": pair["id"], **scores})
    aggregate = {name: 100.0 * sum(row[name] for row in per_sample) / len(per_sample)
                 for name in METRIC_NAMES}
    return SimilarityReport(per_sample=per_sample, aggregate=aggregate)


def load_pairs(path: str | Path) -> list[dict]:
    """Read a JSON-lines pairs file with id, candidate, reference fields."""
    pairs = []
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
            for key in ("id", "candidate", "reference"):
                if key not in record:
                    raise ValueError(f"line {lineno}: missing field {key}")
            pairs.append({"id": record["id"],
                          "candidate": record["candidate"],
                          "reference": record["reference"]})
    return pairs


def write_report(report: SimilarityReport, json_path: str | Path, csv_path: str | Path) -> None:
    """Persist a report as canonical JSON plus a one-row-per-sample CSV."""
    Path(json_path).write_text(
        json.dumps(report.to_json_dict(), indent=2, sort_keys=True) + "\n",
        encoding="utf-8")
    with Path(csv_path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", *METRIC_NAMES])
        for row in report.per_sample:
            writer.writerow([row["id"]] + [f"{row[name]:.6f}" for name in METRIC_NAMES])
