"""Acceptance criteria, one test per criterion, tolerances pinned.

Run with `pytest tests/test_acceptance.py -v`; the conftest hook prints a
PASS/FAIL line per criterion.
"""

import json
import random
import string
import time
from pathlib import Path

import pytest

from psbench import cli, execeval, psparse, syntaxeval
from psbench import corpus as corpus_mod
from psbench import simmetrics as sm
from psbench.psparse import Severity
from stubserver import StubEndpoint

FIXTURES = Path(__file__).parent / "fixtures"


def load_jsonl(path):
    with path.open(encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def test_metric_oracle_suite():
    rows = load_jsonl(FIXTURES / "metric_oracle.jsonl")
    assert len(rows) == 20
    started = time.perf_counter()
    for row in rows:
        scores = sm.score_pair(row["candidate"], row["reference"])
        assert abs(scores["bleu4"] - row["bleu4"]) < 1e-4, row["id"]
        assert abs(scores["meteor"] - row["meteor"]) < 1e-4, row["id"]
        assert abs(scores["rouge_l"] - row["rouge_l"]) < 1e-4, row["id"]
        assert scores["ed"] == row["ed"], row["id"]
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0, f"oracle suite took {elapsed:.2f}s"


def _fuzz_string(rng):
    alphabet = string.ascii_letters + string.digits + "-_$.\\/:;|<>'\"(){}[]#@&,=+*? "
    tokens = [
        "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 8))).strip() or "x"
        for _ in range(rng.randint(1, 10))
    ]
    return " ".join(tokens)


def test_metric_identities():
    rng = random.Random(20240404)
    strings = [_fuzz_string(rng) for _ in range(1000)]
    started = time.perf_counter()
    for index, text in enumerate(strings):
        other = strings[(index + 1) % len(strings)]
        scores = sm.score_pair(text, other)
        for name, value in scores.items():
            assert 0.0 <= value <= 1.0, (name, text, other)
        tokens = sm.tokenize(text)
        assert sm.bleu4(tokens, tokens) == 1.0
        assert sm.rouge_l(tokens, tokens) == 1.0
        assert sm.edit_similarity(text, text) == 1.0
        expected_meteor = 1.0 - 0.5 / len(tokens) ** 3
        assert sm.meteor(tokens, tokens) == pytest.approx(expected_meteor, abs=1e-12)
        assert sm.edit_similarity(text, other) == pytest.approx(
            sm.edit_similarity(other, text), abs=1e-12)
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0, f"identity fuzz took {elapsed:.2f}s"


def test_parser_corpus_and_fuzz():
    rows = load_jsonl(FIXTURES / "parser_corpus.jsonl")
    assert len(rows) >= 200
    started = time.perf_counter()
    stub_rows = 0
    for row in rows:
        analysis = psparse.analyze(row["command"])
        if analysis.has_stub_template:
            stub_rows += 1
        else:
            assert not analysis.parse_errors, (row["id"], analysis.diagnostics)
    assert 0 < stub_rows < len(rows) // 10

    rng = random.Random(1337)
    for _ in range(100_000):
        blob = rng.randbytes(rng.randrange(65)).decode("latin-1")
        tokens = psparse.tokenize_ps(blob)
        snippet, diagnostics = psparse.parse_ps(tokens, blob)
        has_parse_error = any(d.severity == Severity.PARSE_ERROR for d in diagnostics)
        assert (snippet is None) == has_parse_error
    elapsed = time.perf_counter() - started
    assert elapsed < 60.0, f"corpus+fuzz took {elapsed:.2f}s"


def test_syntax_metric_arithmetic():
    def rows(name):
        return syntaxeval.load_sample_diagnostics(FIXTURES / "syntax" / name)

    t5 = syntaxeval.summary_from_rows(rows("syntax_t5_gen.jsonl"),
                                      rows("syntax_t5_ref.jsonl"))
    assert round(t5.single_accuracy_pct, 2) == 91.15
    gpt = syntaxeval.summary_from_rows(rows("syntax_gpt_gen.jsonl"),
                                       rows("syntax_gpt_ref.jsonl"))
    assert round(gpt.single_accuracy_pct, 2) == 98.23
    ground = rows("syntax_groundtruth.jsonl")
    ground_summary = syntaxeval.severity_summary(
        [r["diagnostics"] for r in ground], [r["diagnostics"] for r in ground])
    assert round(ground_summary.severity_pct["generated"]["Warning"], 2) == 39.09


def test_comparative_exclusion_property():
    codes = ["MissingExpression", "UnterminatedString", "UnbalancedDelimiter",
             "RedirectionNotSupported", "MissingFileSpecification"]

    def diag(code):
        return psparse.Diagnostic(code=code, severity=Severity.PARSE_ERROR,
                                  span=(0, 1), message=code)

    rng = random.Random(7)
    for _ in range(300):
        verdicts = []
        for index in range(rng.randint(1, 50)):
            gen = [diag(rng.choice(codes)) for _ in range(rng.randint(0, 2))]
            ref = [diag(rng.choice(codes)) for _ in range(rng.randint(0, 2))]
            verdicts.append(syntaxeval.build_verdict(
                str(index), gen, ref, ref_has_stub=rng.random() < 0.3))
        assert syntaxeval.comparative_accuracy(verdicts) >= \
            syntaxeval.single_accuracy(verdicts)

    # the stub-template scenario: a reference placeholder turns the
    # generated redirection failure into a comparative pass
    verdicts, _, _ = syntaxeval.analyze_pairs([
        {"id": "stub", "candidate": "echo <code>", "reference": "run <code>"}])
    assert not verdicts[0].single_ok
    assert verdicts[0].comparative_ok


def test_execution_scoring():
    started = time.perf_counter()

    def event(name):
        return execeval.canonicalize(execeval.EventRecord(
            event_type="FileCreate", fields=(("TargetFilename", name),)))

    def multiset(*names):
        from collections import Counter
        return Counter(event(n) for n in names)

    worked = execeval.score([
        {"id": "s1", "retrieved": multiset("a", "b", "c", "d"),
         "relevant": multiset("a", "b", "c", "d", "e")},
        {"id": "s2", "retrieved": multiset("x", "y"),
         "relevant": multiset("x", "z")},
    ])
    assert worked.precision == 0.75
    assert worked.recall == pytest.approx(0.65, abs=1e-12)
    assert abs(worked.f1 - 0.6964) < 1e-4

    # printed Table row: percentages recompute to the printed F1
    p, r = 97.26, 80.94
    assert abs(2 * p * r / (p + r) - 88.35) < 0.01

    def stabilized(side, sample):
        paths = sorted((FIXTURES / "traces" / side).glob(f"{sample}.run*.json"))
        runset = execeval.load_runset(paths)
        filtered = execeval.RunSet(
            sample_id=runset.sample_id,
            runs=[execeval.filter_lineage(t) for t in runset.runs])
        return execeval.stabilize(filtered)

    retrieved = stabilized("gen", "demo001")
    relevant = stabilized("ref", "demo001")
    identical = execeval.score([
        {"id": "demo001", "retrieved": retrieved, "relevant": relevant}])
    assert (identical.precision, identical.recall, identical.f1) == (1.0, 1.0, 1.0)

    # stabilize discards events missing from any single run
    flaky = execeval.EventRecord(event_type="FileCreate",
                                 fields=(("TargetFilename", "flaky"),))
    stable = execeval.EventRecord(event_type="FileCreate",
                                  fields=(("TargetFilename", "stable"),))
    runs = [
        execeval.Trace(sample_id="s", run_index=1, records=[stable, flaky]),
        execeval.Trace(sample_id="s", run_index=2, records=[stable]),
        execeval.Trace(sample_id="s", run_index=3, records=[stable, flaky]),
    ]
    kept = execeval.stabilize(execeval.RunSet(sample_id="s", runs=runs))
    assert kept == {execeval.canonicalize(stable): 1}

    elapsed = time.perf_counter() - started
    assert elapsed < 1.0, f"execution scoring took {elapsed:.2f}s"


def _run_pipeline(work: Path, stub_url: str) -> Path:
    corpus_path = FIXTURES / "parser_corpus.jsonl"
    assert cli.main(["split", "--in", str(corpus_path), "--seed", "42",
                     "--ratio", "80/10/10", "--out-dir", str(work)]) == 0
    test_split = work / "parser_corpus.test.jsonl"
    preds = work / "preds.jsonl"
    assert cli.main(["generate", "--tasks", str(test_split), "--out", str(preds),
                     "--base-url", stub_url, "--model", "stub-model",
                     "--token-env", "PSBENCH_ACCEPT_TOKEN",
                     "--backoff", "0.01", "--concurrency", "4"]) == 0
    assert cli.main(["eval-sim", "--pred", str(preds), "--ref", str(test_split),
                     "--out-dir", str(work / "sim")]) == 0
    assert cli.main(["eval-syntax", "--pred", str(preds), "--ref", str(test_split),
                     "--label", "stub-model", "--out-dir", str(work / "syn")]) == 0
    assert cli.main(["eval-exec", "--gen-dir", str(FIXTURES / "traces" / "gen"),
                     "--ref-dir", str(FIXTURES / "traces" / "ref"),
                     "--runs", "3", "--out-dir", str(work / "exe")]) == 0
    report_dir = work / "report"
    assert cli.main(["report",
                     "--similarity", str(work / "sim" / "similarity.json"),
                     "--syntax", str(work / "syn" / "syntax.json"),
                     "--execution", str(work / "exe" / "execution.json"),
                     "--corpus", str(test_split), "--label", "stub-model",
                     "--seed", "42", "--timestamp", "2024-04-03T00:00:00Z",
                     "--out-dir", str(report_dir)]) == 0
    return report_dir


def test_pipeline_determinism(tmp_path, monkeypatch):
    monkeypatch.setenv("PSBENCH_ACCEPT_TOKEN", "accept-token")
    with StubEndpoint() as stub:
        first = _run_pipeline(tmp_path / "run_a", stub.base_url)
        second = _run_pipeline(tmp_path / "run_b", stub.base_url)
    names = sorted(p.name for p in first.iterdir())
    assert names == sorted(p.name for p in second.iterdir())
    assert "report.json" in names and "report.md" in names
    for name in names:
        assert (first / name).read_bytes() == (second / name).read_bytes(), name
    # intermediate stage outputs are byte-identical too
    for relative in ("preds.jsonl", "sim/similarity.json", "sim/similarity.csv",
                     "syn/syntax.json", "exe/execution.json",
                     "parser_corpus.test.jsonl"):
        a = (tmp_path / "run_a" / relative).read_bytes()
        b = (tmp_path / "run_b" / relative).read_bytes()
        assert a == b, relative


def test_split_determinism_and_sizes():
    samples = tuple(
        corpus_mod.Sample(id=f"s{i}", command=f"Get-Item {i}", intent=f"item {i}")
        for i in range(1127))
    corpus = corpus_mod.Corpus(samples=samples, kind=corpus_mod.LABELED)
    spec = corpus_mod.SplitSpec(train_fraction=0.8, valid_fraction=0.1,
                                test_fraction=0.1, seed=42)
    train, valid, test = corpus_mod.split(corpus, spec)
    assert (len(train), len(valid), len(test)) == (903, 112, 112)

    again = corpus_mod.split(corpus, spec)
    assert tuple(s.id for s in again[2].samples) == tuple(s.id for s in test.samples)
    assert tuple(s.id for s in again[0].samples) == tuple(s.id for s in train.samples)

    ids = train.ids() | valid.ids() | test.ids()
    assert ids == corpus.ids()
    assert not (train.ids() & valid.ids())
    assert not (train.ids() & test.ids())
    assert not (valid.ids() & test.ids())
