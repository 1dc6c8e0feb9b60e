#!/usr/bin/env python3
"""Regenerate the synthetic diagnostics fixtures.

Three scenarios engineered to known arithmetic, used to validate the
syntax-metric formulas (not any model):

  syntax_t5_gen/ref.jsonl       113 samples, 10 with parse errors, one of
                                which is a stub-template redirection whose
                                reference carries the template
                                -> single 91.15, comparative 92.04
  syntax_gpt_gen/ref.jsonl      113 samples, 2 with parse errors
                                -> single 98.23, comparative 98.23
  syntax_groundtruth.jsonl      110 samples, 43 with at least one warning,
                                zero errors -> Warning 39.09, Error 0.00

Writes tests/fixtures/syntax/*.jsonl deterministically (seeded RNG).
"""

from __future__ import annotations

import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from psbench.psparse import Diagnostic, Severity  # noqa: E402
from psbench.syntaxeval import write_sample_diagnostics  # noqa: E402

WARNING_CODES = [
    "AvoidUsingCmdletAliases", "AvoidUsingInvokeExpression",
    "AvoidUsingWriteHost", "UseApprovedVerbs", "AvoidUsingEmptyCatchBlock",
]
PARSE_ERROR_CODES = [
    "MissingExpression", "UnterminatedString", "UnbalancedDelimiter",
    "MissingFileSpecification",
]


def diag(code: str, severity: Severity, position: int = 0) -> Diagnostic:
    return Diagnostic(code=code, severity=severity, span=(position, position + 8),
                      message=f"synthetic {code}")


def model_rows(prefix: str, n: int, parse_error_rows: int, stub_rows: int,
               warning_rows: int, error_rows: int, rng: random.Random):
    """Generated-side rows plus matching reference rows.

    The first `stub_rows` failing samples get a RedirectionNotSupported
    parse error on the generated side and a stub-template marker on the
    reference side, so comparative accuracy filters them back to passing.
    """
    gen_rows, ref_rows = [], []
    for i in range(1, n + 1):
        sample_id = f"{prefix}{i:04d}"
        gen_diags, ref_diags = [], []
        ref_stub = False
        if i <= stub_rows:
            gen_diags.append(diag("RedirectionNotSupported", Severity.PARSE_ERROR))
            ref_stub = True
        elif i <= parse_error_rows:
            gen_diags.append(diag(rng.choice(PARSE_ERROR_CODES), Severity.PARSE_ERROR))
        else:
            if i <= parse_error_rows + warning_rows:
                for _ in range(rng.choice((1, 1, 2))):
                    gen_diags.append(diag(rng.choice(WARNING_CODES), Severity.WARNING,
                                          rng.randrange(40)))
            if i <= parse_error_rows + error_rows:
                gen_diags.append(diag("AvoidUsingPlainTextPassword", Severity.ERROR))
        if rng.random() < 0.3:
            ref_diags.append(diag(rng.choice(WARNING_CODES), Severity.WARNING,
                                  rng.randrange(40)))
        gen_rows.append({"id": sample_id, "diagnostics": gen_diags,
                         "has_stub_template": False})
        ref_rows.append({"id": sample_id, "diagnostics": ref_diags,
                         "has_stub_template": ref_stub})
    return gen_rows, ref_rows


def ground_truth_rows(n: int, warning_rows: int, rng: random.Random):
    rows = []
    for i in range(1, n + 1):
        sample_id = f"gt{i:04d}"
        diags = []
        if i <= warning_rows:
            for _ in range(rng.choice((1, 1, 1, 2))):
                diags.append(diag(rng.choice(WARNING_CODES), Severity.WARNING,
                                  rng.randrange(40)))
        rows.append({"id": sample_id, "diagnostics": diags,
                     "has_stub_template": False})
    return rows


def main() -> None:
    out_dir = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "syntax"
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20240403)

    # 103/113 clean -> 91.15; one stub row filtered -> 104/113 = 92.04
    t5_gen, t5_ref = model_rows("t5", 113, parse_error_rows=10, stub_rows=1,
                                warning_rows=40, error_rows=2, rng=rng)
    write_sample_diagnostics(out_dir / "syntax_t5_gen.jsonl", t5_gen)
    write_sample_diagnostics(out_dir / "syntax_t5_ref.jsonl", t5_ref)

    # 111/113 clean -> 98.23 on both metrics
    gpt_gen, gpt_ref = model_rows("gpt", 113, parse_error_rows=2, stub_rows=0,
                                  warning_rows=33, error_rows=3, rng=rng)
    write_sample_diagnostics(out_dir / "syntax_gpt_gen.jsonl", gpt_gen)
    write_sample_diagnostics(out_dir / "syntax_gpt_ref.jsonl", gpt_ref)

    # 43/110 with warnings -> 39.09; no errors anywhere
    gt = ground_truth_rows(110, warning_rows=43, rng=rng)
    write_sample_diagnostics(out_dir / "syntax_groundtruth.jsonl", gt)

    print(f"wrote syntax fixtures -> {out_dir}")


if __name__ == "__main__":
    main()
