import json
from pathlib import Path

import pytest

from psbench import cli
from psbench.corpus import LABELED, load_corpus
from stubserver import StubEndpoint

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS = FIXTURES / "parser_corpus.jsonl"


def run(*argv):
    return cli.main([str(a) for a in argv])


class TestSplit:
    def test_writes_three_sibling_files(self, tmp_path):
        code = run("split", "--in", CORPUS, "--seed", 42,
                   "--ratio", "80/10/10", "--out-dir", tmp_path)
        assert code == 0
        names = sorted(p.name for p in tmp_path.glob("*.jsonl"))
        assert names == ["parser_corpus.test.jsonl", "parser_corpus.train.jsonl",
                         "parser_corpus.valid.jsonl"]
        sizes = [len(load_corpus(tmp_path / n, LABELED)) for n in names]
        assert sum(sizes) == 226
        assert sizes[1] == 182  # floor(226*0.8) + remainder 2

    def test_deterministic_bytes(self, tmp_path):
        for sub in ("a", "b"):
            run("split", "--in", CORPUS, "--seed", 7, "--out-dir", tmp_path / sub)
        for name in ("parser_corpus.train.jsonl", "parser_corpus.valid.jsonl",
                     "parser_corpus.test.jsonl"):
            assert (tmp_path / "a" / name).read_bytes() == \
                (tmp_path / "b" / name).read_bytes()

    def test_missing_input_exit_3(self, tmp_path, capsys):
        code = run("split", "--in", tmp_path / "nope.jsonl", "--out-dir", tmp_path)
        assert code == 3
        assert "nope.jsonl" in capsys.readouterr().err

    def test_unknown_flag_exit_2(self):
        with pytest.raises(SystemExit) as excinfo:
            run("split", "--in", CORPUS, "--frobnicate")
        assert excinfo.value.code == 2


class TestStats:
    def test_prints_summary_json(self, capsys):
        assert run("stats", "--in", CORPUS) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["size"] == 226
        assert len(payload["tactic_coverage"]) == 12

    def test_writes_file(self, tmp_path):
        out = tmp_path / "stats.json"
        assert run("stats", "--in", CORPUS, "--out", out) == 0
        assert json.loads(out.read_text())["size"] == 226


class TestCurate:
    def test_curates_unlabeled(self, tmp_path):
        raw = tmp_path / "raw.jsonl"
        rows = [
            {"command": "Get-Process", "repo": "r1"},
            {"command": "Get-Process", "repo": "r1"},
            {"command": 'Write-Host "hi"', "repo": "r1"},
            {"command": "x" * 2000, "repo": "r1"},
        ]
        raw.write_text("".join(json.dumps(r) + "\n" for r in rows))
        out = tmp_path / "curated.jsonl"
        assert run("curate", "--in", raw, "--out", out) == 0
        assert len(out.read_text().splitlines()) == 1


class TestGenerateAndSim:
    def test_generate_then_eval_sim(self, tmp_path, monkeypatch):
        monkeypatch.setenv("TOKEN_VAR", "tok-123")
        test_split = tmp_path / "test.jsonl"
        rows = [
            {"id": "a", "intent": "alpha", "command": 'Write-Output "alpha"'},
            {"id": "b", "intent": "beta", "command": "Get-Process"},
        ]
        test_split.write_text("".join(json.dumps(r) + "\n" for r in rows))
        preds = tmp_path / "preds.jsonl"
        with StubEndpoint() as stub:
            code = run("generate", "--tasks", test_split, "--out", preds,
                       "--base-url", stub.base_url, "--model", "stub",
                       "--token-env", "TOKEN_VAR", "--backoff", "0.01")
        assert code == 0
        assert len(preds.read_text().splitlines()) == 2

        out_dir = tmp_path / "sim"
        assert run("eval-sim", "--pred", preds, "--ref", test_split,
                   "--out-dir", out_dir) == 0
        payload = json.loads((out_dir / "similarity.json").read_text())
        by_id = {row["id"]: row for row in payload["per_sample"]}
        assert by_id["a"]["ed"] == 1.0  # stub echoed the reference exactly
        assert (out_dir / "similarity.csv").exists()

    def test_eval_sim_pairs_file(self, tmp_path):
        pairs = tmp_path / "pairs.jsonl"
        pairs.write_text(json.dumps(
            {"id": "x", "candidate": "Get-Process", "reference": "Get-Process"}) + "\n")
        assert run("eval-sim", "--pairs", pairs, "--out-dir", tmp_path / "out") == 0
        payload = json.loads((tmp_path / "out" / "similarity.json").read_text())
        assert payload["aggregate"]["bleu4"] == 100.0

    def test_missing_prediction_fails(self, tmp_path, capsys):
        test_split = tmp_path / "test.jsonl"
        test_split.write_text(json.dumps(
            {"id": "a", "intent": "alpha", "command": "Get-Process"}) + "\n")
        preds = tmp_path / "preds.jsonl"
        preds.write_text(json.dumps(
            {"sample_id": "other", "candidate": "x", "attempts": 1, "status": "ok"}) + "\n")
        code = run("eval-sim", "--pred", preds, "--ref", test_split,
                   "--out-dir", tmp_path / "out")
        assert code == 1
        assert "no prediction" in capsys.readouterr().err


class TestEvalSyntax:
    def test_command_path(self, tmp_path):
        pairs = tmp_path / "pairs.jsonl"
        rows = [
            {"id": "a", "candidate": "Get-Process", "reference": "Get-Process"},
            {"id": "b", "candidate": "echo <code>", "reference": "run <code>"},
        ]
        pairs.write_text("".join(json.dumps(r) + "\n" for r in rows))
        out_dir = tmp_path / "syntax"
        assert run("eval-syntax", "--pairs", pairs, "--out-dir", out_dir) == 0
        summary = json.loads((out_dir / "syntax.json").read_text())
        assert summary["single_accuracy_pct"] == 50.0
        assert summary["comparative_accuracy_pct"] == 100.0
        assert (out_dir / "gen_diagnostics.jsonl").exists()
        assert (out_dir / "warning_histogram.csv").exists()

    def test_precomputed_diagnostics_path(self, tmp_path):
        out_dir = tmp_path / "syntax"
        code = run("eval-syntax",
                   "--gen-diags", FIXTURES / "syntax" / "syntax_t5_gen.jsonl",
                   "--ref-diags", FIXTURES / "syntax" / "syntax_t5_ref.jsonl",
                   "--label", "CodeT5+", "--out-dir", out_dir)
        assert code == 0
        summary = json.loads((out_dir / "syntax.json").read_text())
        assert round(summary["single_accuracy_pct"], 2) == 91.15
        assert "| CodeT5+ | 91.15 | 92.04 |" in (out_dir / "syntax.md").read_text()


class TestEvalExec:
    def test_fixture_traces(self, tmp_path):
        out_dir = tmp_path / "exec"
        code = run("eval-exec", "--gen-dir", FIXTURES / "traces" / "gen",
                   "--ref-dir", FIXTURES / "traces" / "ref",
                   "--runs", 3, "--out-dir", out_dir)
        assert code == 0
        payload = json.loads((out_dir / "execution.json").read_text())
        assert payload["precision"] == 1.0
        assert payload["recall"] == pytest.approx(0.9)

    def test_single_run_rejected(self, capsys):
        code = run("eval-exec", "--gen-dir", FIXTURES / "traces" / "gen",
                   "--ref-dir", FIXTURES / "traces" / "ref",
                   "--runs", 1, "--out-dir", "unused")
        assert code != 0
        assert "at least 2" in capsys.readouterr().err


class TestReport:
    def make_sections(self, tmp_path):
        pairs = tmp_path / "pairs.jsonl"
        pairs.write_text(json.dumps(
            {"id": "x", "candidate": "Get-Process", "reference": "Get-Process"}) + "\n")
        run("eval-sim", "--pairs", pairs, "--out-dir", tmp_path / "sim")
        run("eval-syntax", "--pairs", pairs, "--out-dir", tmp_path / "syn")
        run("eval-exec", "--gen-dir", FIXTURES / "traces" / "gen",
            "--ref-dir", FIXTURES / "traces" / "ref",
            "--runs", 3, "--out-dir", tmp_path / "exe")

    def test_composes_existing_sections(self, tmp_path):
        self.make_sections(tmp_path)
        out_dir = tmp_path / "report"
        code = run("report", "--similarity", tmp_path / "sim" / "similarity.json",
                   "--syntax", tmp_path / "syn" / "syntax.json",
                   "--execution", tmp_path / "exe" / "execution.json",
                   "--corpus", CORPUS, "--label", "StubModel", "--seed", 42,
                   "--timestamp", "2024-04-03T00:00:00Z", "--out-dir", out_dir)
        assert code == 0
        report = json.loads((out_dir / "report.json").read_text())
        assert report["metadata"]["label"] == "StubModel"
        assert len(report["metadata"]["corpus_hash"]) == 64
        assert (out_dir / "report.md").exists()
        assert (out_dir / "execution.csv").exists()

    def test_similarity_only_report(self, tmp_path):
        self.make_sections(tmp_path)
        out_dir = tmp_path / "report"
        code = run("report", "--similarity", tmp_path / "sim" / "similarity.json",
                   "--timestamp", "t", "--out-dir", out_dir)
        assert code == 0
        files = {p.name for p in out_dir.iterdir()}
        assert files == {"report.json", "similarity.csv", "report.md"}

    def test_compare(self, tmp_path):
        self.make_sections(tmp_path)
        for label in ("ModelA", "ModelB"):
            run("report", "--similarity", tmp_path / "sim" / "similarity.json",
                "--label", label, "--timestamp", "t",
                "--out-dir", tmp_path / label)
        out_dir = tmp_path / "cmp"
        code = run("report", "--compare", tmp_path / "ModelA" / "report.json",
                   tmp_path / "ModelB" / "report.json", "--out-dir", out_dir)
        assert code == 0
        table = (out_dir / "comparison.md").read_text()
        assert "| Metric | ModelA | ModelB |" in table

    def test_report_without_sections_fails(self, tmp_path, capsys):
        code = run("report", "--timestamp", "t", "--out-dir", tmp_path)
        assert code == 1
        assert "nothing to report" in capsys.readouterr().err


class TestConfigPrecedence:
    def test_flag_beats_config_beats_env(self, tmp_path, monkeypatch):
        config = tmp_path / "cfg"
        config.write_text("seed = 5\n# comment\nratio = 70/20/10\n")
        monkeypatch.setenv("PSBENCH_SEED", "9")

        out_flag = tmp_path / "flag"
        run("split", "--in", CORPUS, "--config", config, "--seed", 1,
            "--out-dir", out_flag)
        out_cfg = tmp_path / "cfg_out"
        run("split", "--in", CORPUS, "--config", config, "--out-dir", out_cfg)
        out_env = tmp_path / "env_out"
        run("split", "--in", CORPUS, "--out-dir", out_env)

        # config ratio 70/20/10 applies whenever no --ratio flag is given
        assert len(load_corpus(out_cfg / "parser_corpus.valid.jsonl", LABELED)) == 45
        assert len(load_corpus(out_flag / "parser_corpus.valid.jsonl", LABELED)) == 45
        # but the --seed flag beats the config seed: partitions differ
        flag_train = (out_flag / "parser_corpus.train.jsonl").read_bytes()
        cfg_train = (out_cfg / "parser_corpus.train.jsonl").read_bytes()
        assert flag_train != cfg_train
        # without a config file the env seed and default ratio apply
        assert len(load_corpus(out_env / "parser_corpus.valid.jsonl", LABELED)) == 22
        env_train = (out_env / "parser_corpus.train.jsonl").read_bytes()
        assert env_train != cfg_train
