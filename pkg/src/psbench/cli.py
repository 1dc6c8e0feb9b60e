"""Command-line entry point orchestrating the pipeline stages.

Stages communicate only through declared files, so any stage can be re-run
or fed fixtures. Exit codes: 0 success, 2 usage, 3 missing input file,
1 any other stage failure. Configuration precedence: flags, then the
--config key=value file, then PSBENCH_* environment variables.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import corpus as corpus_mod
from . import execeval, genclient, report as report_mod, simmetrics, syntaxeval

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_MISSING_INPUT = 3

ENV_PREFIX = "PSBENCH_"


class StageError(Exception):
    def __init__(self, message: str, exit_code: int = EXIT_FAILURE):
        super().__init__(message)
        self.exit_code = exit_code


def parse_config_file(path: Path) -> dict[str, str]:
    """key = value lines; # starts a comment; blank lines ignored."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise StageError(f"{path}:{lineno}: expected key = value")
        key, _, value = line.partition("=")
        values[key.strip().lower()] = value.strip()
    return values


class Settings:
    """Flag > config file > environment resolution for one invocation."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.file_values: dict[str, str] = {}
        config_path = getattr(args, "config", None)
        if config_path:
            path = Path(config_path)
            if not path.exists():
                raise StageError(f"{config_path}: no such file", EXIT_MISSING_INPUT)
            self.file_values = parse_config_file(path)

    def get(self, key: str, default=None, cast=str):
        flag = getattr(self.args, key, None)
        if flag is not None:
            return flag
        if key in self.file_values:
            return cast(self.file_values[key])
        env = os.environ.get(ENV_PREFIX + key.upper())
        if env is not None:
            return cast(env)
        return default


def require_inputs(*paths: str | Path) -> None:
    for path in paths:
        if path is not None and not Path(path).exists():
            raise StageError(f"{path}: no such file", EXIT_MISSING_INPUT)


def write_json(path: Path, payload: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                    encoding="utf-8")


# --- stage implementations ---------------------------------------------------

def cmd_curate(args: argparse.Namespace, settings: Settings) -> int:
    require_inputs(args.in_path)
    raw = corpus_mod.load_corpus(args.in_path, corpus_mod.UNLABELED)
    curated = corpus_mod.curate_unlabeled(raw)
    corpus_mod.save_corpus(curated, args.out)
    print(f"curate: {len(raw)} -> {len(curated)} samples ({args.out})")
    return EXIT_OK


def _parse_ratio(text: str) -> tuple[float, float, float]:
    parts = text.split("/")
    if len(parts) != 3:
        raise StageError(f"ratio {text!r} must look like 80/10/10")
    try:
        numbers = [float(p) for p in parts]
    except ValueError:
        raise StageError(f"ratio {text!r} must be numeric") from None
    total = sum(numbers)
    if total <= 0:
        raise StageError(f"ratio {text!r} must be positive")
    train, valid, test = (n / total for n in numbers)
    return train, valid, test


def cmd_split(args: argparse.Namespace, settings: Settings) -> int:
    require_inputs(args.in_path)
    seed = settings.get("seed", default=0, cast=int)
    ratio = settings.get("ratio", default="80/10/10")
    train, valid, test = _parse_ratio(ratio)
    spec = corpus_mod.SplitSpec(train_fraction=train, valid_fraction=valid,
                                test_fraction=test, seed=seed)
    loaded = corpus_mod.load_corpus(args.in_path, args.kind)
    base = Path(args.out_dir) / Path(args.in_path).name if args.out_dir else Path(args.in_path)
    if args.out_dir:
        Path(args.out_dir).mkdir(parents=True, exist_ok=True)
    written = corpus_mod.write_splits(loaded, spec, base)
    sizes = "/".join(str(len(corpus_mod.load_corpus(p, args.kind))) for p in written)
    print(f"split: {len(loaded)} samples -> {sizes} (seed {seed})")
    return EXIT_OK


def cmd_stats(args: argparse.Namespace, settings: Settings) -> int:
    require_inputs(args.in_path)
    loaded = corpus_mod.load_corpus(args.in_path, args.kind)
    stats = corpus_mod.stats(loaded)
    payload = {
        "size": stats.size,
        "unique_intents": stats.unique_intents,
        "unique_commands": stats.unique_commands,
        "unique_intent_tokens": stats.unique_intent_tokens,
        "unique_command_tokens": stats.unique_command_tokens,
        "avg_tokens_per_intent": stats.avg_tokens_per_intent,
        "avg_tokens_per_command": stats.avg_tokens_per_command,
    }
    if args.kind == corpus_mod.LABELED:
        payload["tactic_coverage"] = dict(sorted(
            corpus_mod.tactic_coverage(loaded).items()))
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return EXIT_OK


def cmd_generate(args: argparse.Namespace, settings: Settings) -> int:
    require_inputs(args.tasks)
    config = genclient.EndpointConfig(
        base_url=settings.get("base_url"),
        model=settings.get("model", default="default-model"),
        token_env=settings.get("token_env", default="PSBENCH_API_TOKEN"),
        timeout_s=settings.get("timeout", default=30.0, cast=float),
        max_retries=settings.get("retries", default=3, cast=int),
        concurrency=settings.get("concurrency", default=4, cast=int),
        backoff_base_s=settings.get("backoff", default=0.5, cast=float),
    )
    if not config.base_url:
        raise StageError("no endpoint base url configured (--base-url)")
    loaded = corpus_mod.load_corpus(args.tasks, corpus_mod.LABELED)
    tasks = [genclient.GenTask(sample_id=s.id, intent=s.intent) for s in loaded.samples]
    results = genclient.generate_batch(tasks, config)
    genclient.write_results(args.out, results)
    failed = sum(1 for r in results if r.status != genclient.OK)
    print(f"generate: {len(results)} results, {failed} failed ({args.out})")
    return EXIT_OK


def _load_pairs(args: argparse.Namespace) -> list[dict]:
    if args.pairs:
        require_inputs(args.pairs)
        return simmetrics.load_pairs(args.pairs)
    require_inputs(args.pred, args.ref)
    predictions = {r.sample_id: r for r in genclient.load_results(args.pred)}
    reference = corpus_mod.load_corpus(args.ref, corpus_mod.LABELED)
    pairs = []
    for sample in reference.samples:
        if sample.id not in predictions:
            raise StageError(f"no prediction for sample {sample.id!r} in {args.pred}")
        pairs.append({"id": sample.id,
                      "candidate": predictions[sample.id].candidate,
                      "reference": sample.command})
    return pairs


def cmd_eval_sim(args: argparse.Namespace, settings: Settings) -> int:
    pairs = _load_pairs(args)
    evaluation = simmetrics.evaluate_pairs(pairs)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    simmetrics.write_report(evaluation, out_dir / "similarity.json",
                            out_dir / "similarity.csv")
    aggregate = " ".join(f"{name}={evaluation.aggregate[name]:.2f}"
                         for name in simmetrics.METRIC_NAMES)
    print(f"eval-sim: {len(pairs)} pairs, {aggregate}")
    return EXIT_OK


def cmd_eval_syntax(args: argparse.Namespace, settings: Settings) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.gen_diags or args.ref_diags:
        require_inputs(args.gen_diags, args.ref_diags)
        gen_rows = syntaxeval.load_sample_diagnostics(args.gen_diags)
        ref_rows = syntaxeval.load_sample_diagnostics(args.ref_diags)
    else:
        pairs = _load_pairs(args)
        _, gen_rows, ref_rows = syntaxeval.analyze_pairs(pairs)
        syntaxeval.write_sample_diagnostics(out_dir / "gen_diagnostics.jsonl", gen_rows)
        syntaxeval.write_sample_diagnostics(out_dir / "ref_diagnostics.jsonl", ref_rows)
    summary = syntaxeval.summary_from_rows(gen_rows, ref_rows)
    write_json(out_dir / "syntax.json", summary.to_json_dict())
    label = settings.get("label", default="model")
    (out_dir / "syntax.md").write_text(syntaxeval.summary_markdown(summary, label),
                                       encoding="utf-8")
    (out_dir / "warning_histogram.csv").write_text(syntaxeval.histogram_csv(summary),
                                                   encoding="utf-8")
    print(f"eval-syntax: single={summary.single_accuracy_pct:.2f} "
          f"comparative={summary.comparative_accuracy_pct:.2f}")
    return EXIT_OK


def cmd_eval_exec(args: argparse.Namespace, settings: Settings) -> int:
    runs = settings.get("runs", default=3, cast=int)
    if runs < 2:
        raise StageError(f"--runs {runs}: at least 2 repeated runs are required")
    require_inputs(args.gen_dir, args.ref_dir)
    gen_sets = execeval.discover_runsets(args.gen_dir)
    ref_sets = execeval.discover_runsets(args.ref_dir)
    if not ref_sets:
        raise StageError(f"no trace files found in {args.ref_dir}")
    samples = []
    for sample_id in sorted(ref_sets):
        if sample_id not in gen_sets:
            raise StageError(f"no generated traces for sample {sample_id!r}")
        sides = {}
        for side, paths in (("retrieved", gen_sets[sample_id]),
                            ("relevant", ref_sets[sample_id])):
            if len(paths) < runs:
                raise StageError(
                    f"sample {sample_id!r}: {len(paths)} runs on disk, need {runs}")
            runset = execeval.load_runset(paths[:runs])
            filtered = execeval.RunSet(
                sample_id=runset.sample_id,
                runs=[execeval.filter_lineage(t) for t in runset.runs])
            sides[side] = execeval.stabilize(filtered)
        samples.append({"id": sample_id, **sides})
    result = execeval.score(samples)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_json(out_dir / "execution.json", result.to_json_dict())
    print(f"eval-exec: {len(samples)} samples, P={result.precision:.4f} "
          f"R={result.recall:.4f} F1={result.f1:.4f}")
    return EXIT_OK


def cmd_report(args: argparse.Namespace, settings: Settings) -> int:
    out_dir = Path(args.out_dir)
    if args.compare:
        require_inputs(*args.compare)
        bundles = [report_mod.load_bundle(p) for p in args.compare]
        table = report_mod.compare(bundles)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "comparison.md").write_text(table, encoding="utf-8")
        print(f"report: compared {len(bundles)} bundles ({out_dir / 'comparison.md'})")
        return EXIT_OK

    require_inputs(args.similarity, args.syntax, args.execution)
    sections = {}
    if args.similarity:
        with open(args.similarity, encoding="utf-8") as fh:
            sections["similarity"] = simmetrics.SimilarityReport.from_json_dict(json.load(fh))
    if args.syntax:
        with open(args.syntax, encoding="utf-8") as fh:
            sections["syntax"] = syntaxeval.SyntaxSummary.from_json_dict(json.load(fh))
    if args.execution:
        with open(args.execution, encoding="utf-8") as fh:
            sections["execution"] = execeval.ExecScore.from_json_dict(json.load(fh))
    if not sections:
        raise StageError("nothing to report: give --similarity/--syntax/--execution")

    corpus_hash = ""
    if args.corpus:
        require_inputs(args.corpus)
        corpus_hash = report_mod.file_digest(args.corpus)
    timestamp = settings.get("timestamp")
    if timestamp is None:
        timestamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    bundle = report_mod.EvaluationBundle(
        label=settings.get("label", default="model"),
        timestamp=timestamp,
        corpus_hash=corpus_hash,
        seed=settings.get("seed", cast=int),
        **sections)
    formats = set((settings.get("formats", default="json,csv,markdown")).split(","))
    written = report_mod.render(bundle, formats, out_dir)
    print(f"report: wrote {len(written)} files to {out_dir}")
    return EXIT_OK


# --- argument wiring ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psbench",
        description="Benchmarking harness for NL-to-PowerShell code generators")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value configuration file")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curate", parents=[common],
                       help="dedup/filter an unlabeled corpus")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_curate)

    p = sub.add_parser("split", parents=[common],
                       help="write train/valid/test sibling files")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--ratio", help="e.g. 80/10/10")
    p.add_argument("--kind", choices=[corpus_mod.LABELED, corpus_mod.UNLABELED],
                   default=corpus_mod.LABELED)
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("stats", parents=[common], help="corpus summary statistics")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--kind", choices=[corpus_mod.LABELED, corpus_mod.UNLABELED],
                   default=corpus_mod.LABELED)
    p.add_argument("--out")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("generate", parents=[common],
                       help="fetch candidate commands from the endpoint")
    p.add_argument("--tasks", required=True, help="labeled corpus with intents")
    p.add_argument("--out", required=True)
    p.add_argument("--base-url", dest="base_url")
    p.add_argument("--model")
    p.add_argument("--token-env", dest="token_env")
    p.add_argument("--timeout", type=float)
    p.add_argument("--retries", type=int)
    p.add_argument("--concurrency", type=int)
    p.add_argument("--backoff", type=float)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("eval-sim", parents=[common], help="similarity metrics")
    p.add_argument("--pred", help="generation results jsonl")
    p.add_argument("--ref", help="labeled reference corpus jsonl")
    p.add_argument("--pairs", help="prejoined pairs jsonl (id/candidate/reference)")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_eval_sim)

    p = sub.add_parser("eval-syntax", parents=[common], help="static analysis metrics")
    p.add_argument("--pred")
    p.add_argument("--ref")
    p.add_argument("--pairs")
    p.add_argument("--gen-diags", dest="gen_diags",
                   help="precomputed per-sample diagnostics jsonl (generated)")
    p.add_argument("--ref-diags", dest="ref_diags",
                   help="precomputed per-sample diagnostics jsonl (reference)")
    p.add_argument("--label")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_eval_syntax)

    p = sub.add_parser("eval-exec", parents=[common], help="execution trace metrics")
    p.add_argument("--gen-dir", required=True)
    p.add_argument("--ref-dir", required=True)
    p.add_argument("--runs", type=int)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_eval_exec)

    p = sub.add_parser("report", parents=[common],
                       help="compose stage outputs into a report")
    p.add_argument("--similarity")
    p.add_argument("--syntax")
    p.add_argument("--execution")
    p.add_argument("--corpus", help="test split file, hashed into the metadata")
    p.add_argument("--label")
    p.add_argument("--seed", type=int)
    p.add_argument("--timestamp")
    p.add_argument("--formats", help="comma list of json,csv,markdown")
    p.add_argument("--compare", nargs="+", help="two or more report.json files")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = Settings(args)
        return args.func(args, settings)
    except StageError as exc:
        print(f"error: {args.command}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, OSError, genclient.GenerationAuthError) as exc:
        print(f"error: {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
