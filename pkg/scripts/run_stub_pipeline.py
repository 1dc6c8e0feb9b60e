#!/usr/bin/env python3
"""Run the whole pipeline against a local deterministic stub endpoint.

No network, no GPUs, no Windows host: the stub answers every generation
request with `Write-Output "<intent>"`, the execution stage consumes the
committed trace fixtures, and everything lands under --work (default
work/demo). Handy for demos and for eyeballing report formatting.

    python scripts/run_stub_pipeline.py [--seed 42] [--work work/demo]
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from psbench import cli  # noqa: E402

FIXTURES = ROOT / "tests" / "fixtures"
TOKEN_ENV = "PSBENCH_DEMO_TOKEN"


class StubHandler(BaseHTTPRequestHandler):
    def log_message(self, *args):
        pass

    def do_POST(self):
        length = int(self.headers.get("Content-Length", "0"))
        payload = json.loads(self.rfile.read(length) or b"{}")
        content = payload.get("messages", [{}])[0].get("content", "")
        intent = content.split("\n\n", 1)[-1]
        body = json.dumps({
            "choices": [{"message": {"content": f'Write-Output "{intent}"'}}],
        }).encode("utf-8")
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


def run_stage(argv: list[str]) -> None:
    code = cli.main([str(a) for a in argv])
    if code != 0:
        raise SystemExit(f"stage failed ({code}): {' '.join(map(str, argv))}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--work", default="work/demo")
    args = parser.parse_args()

    work = Path(args.work)
    work.mkdir(parents=True, exist_ok=True)
    os.environ.setdefault(TOKEN_ENV, "demo-token")

    server = ThreadingHTTPServer(("127.0.0.1", 0), StubHandler)
    threading.Thread(target=server.serve_forever, daemon=True).start()
    base_url = f"http://127.0.0.1:{server.server_address[1]}"
    print(f"stub endpoint at {base_url}")

    try:
        run_stage(["split", "--in", FIXTURES / "parser_corpus.jsonl",
                   "--seed", args.seed, "--ratio", "80/10/10", "--out-dir", work])
        test_split = work / "parser_corpus.test.jsonl"
        run_stage(["stats", "--in", test_split, "--out", work / "stats.json"])
        run_stage(["generate", "--tasks", test_split, "--out", work / "preds.jsonl",
                   "--base-url", base_url, "--model", "stub-model",
                   "--token-env", TOKEN_ENV, "--backoff", "0.01"])
        run_stage(["eval-sim", "--pred", work / "preds.jsonl", "--ref", test_split,
                   "--out-dir", work / "sim"])
        run_stage(["eval-syntax", "--pred", work / "preds.jsonl", "--ref", test_split,
                   "--label", "stub-model", "--out-dir", work / "syn"])
        run_stage(["eval-exec", "--gen-dir", FIXTURES / "traces" / "gen",
                   "--ref-dir", FIXTURES / "traces" / "ref",
                   "--runs", 3, "--out-dir", work / "exe"])
        run_stage(["report", "--similarity", work / "sim" / "similarity.json",
                   "--syntax", work / "syn" / "syntax.json",
                   "--execution", work / "exe" / "execution.json",
                   "--corpus", test_split, "--label", "stub-model",
                   "--seed", args.seed, "--timestamp", "2024-04-03T00:00:00Z",
                   "--out-dir", work / "report"])
    finally:
        server.shutdown()
        server.server_close()

    print(f"\ndone; see {work / 'report' / 'report.md'}")


if __name__ == "__main__":
    main()
