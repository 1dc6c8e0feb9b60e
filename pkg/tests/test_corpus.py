import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psbench import corpus as cp


def write_jsonl(path, records):
    with path.open("w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record) + "\n")
    return path


def make_corpus(n, kind=cp.LABELED, **overrides):
    samples = tuple(
        cp.Sample(id=f"s{i}", command=f"Get-Item c:\\f{i}",
                  intent=f"get file {i}" if kind == cp.LABELED else None,
                  **overrides)
        for i in range(n))
    return cp.Corpus(samples=samples, kind=kind)


def test_load_preserves_order_and_ids(tmp_path):
    path = write_jsonl(tmp_path / "c.jsonl", [
        {"id": "a", "intent": "one", "command": "Get-Process"},
        {"id": "b", "intent": "two", "command": "Get-Service"},
        {"id": "c", "intent": "three", "command": "Get-Date"},
    ])
    corpus = cp.load_corpus(path, cp.LABELED)
    assert [s.id for s in corpus.samples] == ["a", "b", "c"]
    assert corpus.samples[1].command == "Get-Service"


def test_load_assigns_sequential_ids(tmp_path):
    path = write_jsonl(tmp_path / "c.jsonl", [
        {"command": "Get-Process", "repo": "r1"},
        {"command": "Get-Service", "repo": "r1"},
    ])
    corpus = cp.load_corpus(path, cp.UNLABELED)
    assert [s.id for s in corpus.samples] == ["s00001", "s00002"]


def test_load_missing_command_names_line(tmp_path):
    path = write_jsonl(tmp_path / "c.jsonl", [
        {"id": "a", "intent": "one", "command": "Get-Process"},
        {"id": "b", "intent": "two"},
    ])
    with pytest.raises(ValueError, match="line 2: missing field command"):
        cp.load_corpus(path, cp.LABELED)


def test_load_empty_intent_names_line(tmp_path):
    records = [{"id": f"s{i}", "intent": "ok", "command": "Get-Date"} for i in range(4)]
    records.append({"id": "s4", "intent": "", "command": "Get-Date"})
    path = write_jsonl(tmp_path / "c.jsonl", records)
    with pytest.raises(ValueError, match="line 5"):
        cp.load_corpus(path, cp.LABELED)


def test_load_duplicate_id_rejected(tmp_path):
    path = write_jsonl(tmp_path / "c.jsonl", [
        {"id": "a", "intent": "one", "command": "Get-Process"},
        {"id": "a", "intent": "two", "command": "Get-Service"},
    ])
    with pytest.raises(ValueError, match="duplicate id"):
        cp.load_corpus(path, cp.LABELED)


def test_load_malformed_line(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text('{"id": "a", "command": "x"}\n{oops\n', encoding="utf-8")
    with pytest.raises(ValueError, match="line 2"):
        cp.load_corpus(path, cp.UNLABELED)


def unlabeled(*commands, repo="repoA"):
    samples = tuple(cp.Sample(id=f"u{i}", command=c, repo=repo)
                    for i, c in enumerate(commands))
    return cp.Corpus(samples=samples, kind=cp.UNLABELED)


def test_curate_dedups_within_repo():
    raw = unlabeled("Get-Process", "Get-Process")
    assert len(cp.curate_unlabeled(raw)) == 1


def test_curate_keeps_duplicates_across_repos():
    samples = (cp.Sample(id="a", command="Get-Process", repo="repoA"),
               cp.Sample(id="b", command="Get-Process", repo="repoB"))
    raw = cp.Corpus(samples=samples, kind=cp.UNLABELED)
    assert len(cp.curate_unlabeled(raw)) == 2


def test_curate_length_cap_boundary():
    keep = "a" * 1024
    drop = "a" * 1025
    raw = unlabeled(keep, drop)
    survivors = [s.command for s in cp.curate_unlabeled(raw).samples]
    assert survivors == [keep]


def test_curate_logging_rule_keys_on_leading_cmdlet():
    raw = unlabeled('Write-Host "hi"', "Get-Process | Write-Host", "echo hello")
    survivors = [s.command for s in cp.curate_unlabeled(raw).samples]
    assert survivors == ["Get-Process | Write-Host"]


def test_curate_is_idempotent():
    raw = unlabeled("Get-Process", "Get-Process", 'Write-Output 1', "b" * 2000)
    once = cp.curate_unlabeled(raw)
    twice = cp.curate_unlabeled(once)
    assert once.samples == twice.samples


def test_curate_rejects_labeled():
    with pytest.raises(ValueError):
        cp.curate_unlabeled(make_corpus(2))


def test_split_1127_sample_sizes():
    corpus = make_corpus(1127)
    train, valid, test = cp.split(corpus, cp.SplitSpec(seed=42))
    assert (len(train), len(valid), len(test)) == (903, 112, 112)


def test_split_exact_fractions():
    corpus = make_corpus(10)
    train, valid, test = cp.split(corpus, cp.SplitSpec(seed=1))
    assert (len(train), len(valid), len(test)) == (8, 1, 1)


def test_split_deterministic():
    corpus = make_corpus(53)
    spec = cp.SplitSpec(seed=7)
    first = cp.split(corpus, spec)
    second = cp.split(corpus, spec)
    for a, b in zip(first, second):
        assert a.samples == b.samples


def test_split_too_small_errors():
    with pytest.raises(ValueError, match="larger corpus"):
        cp.split(make_corpus(5), cp.SplitSpec(seed=0))


def test_split_spec_validation():
    with pytest.raises(ValueError):
        cp.SplitSpec(train_fraction=0.5, valid_fraction=0.2, test_fraction=0.2)
    with pytest.raises(ValueError):
        cp.SplitSpec(train_fraction=1.0, valid_fraction=0.0, test_fraction=0.0)


@given(st.integers(min_value=10, max_value=400), st.integers(min_value=0, max_value=2**31))
@settings(max_examples=50, deadline=None)
def test_split_partitions(n, seed):
    corpus = make_corpus(n)
    train, valid, test = cp.split(corpus, cp.SplitSpec(seed=seed))
    ids = [train.ids(), valid.ids(), test.ids()]
    assert ids[0] | ids[1] | ids[2] == corpus.ids()
    assert not ids[0] & ids[1] and not ids[0] & ids[2] and not ids[1] & ids[2]
    assert len(train) + len(valid) + len(test) == n


def test_write_splits_sibling_files(tmp_path):
    corpus = make_corpus(20)
    paths = cp.write_splits(corpus, cp.SplitSpec(seed=3), tmp_path / "corpus.jsonl")
    assert [p.name for p in paths] == ["corpus.train.jsonl", "corpus.valid.jsonl", "corpus.test.jsonl"]
    reloaded = cp.load_corpus(paths[0], cp.LABELED)
    assert len(reloaded) == 16


def test_stats_single_sample():
    corpus = cp.Corpus(samples=(
        cp.Sample(id="a", intent="list processes", command="Get-Process"),), kind=cp.LABELED)
    s = cp.stats(corpus)
    assert s.size == 1
    assert s.unique_intents == 1
    assert s.avg_tokens_per_intent == 2
    assert s.avg_tokens_per_command == 1


def test_stats_duplicate_commands():
    corpus = cp.Corpus(samples=(
        cp.Sample(id="a", intent="x", command="Get-Process"),
        cp.Sample(id="b", intent="y", command="Get-Process")), kind=cp.LABELED)
    s = cp.stats(corpus)
    assert s.size == 2
    assert s.unique_commands == 1
    assert s.unique_command_tokens == 1


def test_stats_token_counts_bounded():
    corpus = make_corpus(30)
    s = cp.stats(corpus)
    total_occurrences = sum(len(sample.command.split()) for sample in corpus.samples)
    assert s.unique_command_tokens <= total_occurrences
    assert s.unique_commands <= s.size


def test_tactic_coverage():
    samples = tuple(
        cp.Sample(id=f"s{i}", intent="x", command="Get-Date", tactic=t)
        for i, t in enumerate(["Discovery", "Discovery", "Discovery", "Execution"]))
    corpus = cp.Corpus(samples=samples, kind=cp.LABELED)
    assert cp.tactic_coverage(corpus) == {"Discovery": 3, "Execution": 1}


def test_tactic_coverage_unmapped_and_total():
    corpus = make_corpus(7)
    coverage = cp.tactic_coverage(corpus)
    assert coverage == {"unmapped": 7}
    assert sum(coverage.values()) == len(corpus)
