import sys
from pathlib import Path

# stubserver.py lives next to the tests
sys.path.insert(0, str(Path(__file__).parent))

CRITERIA = {
    "test_metric_oracle_suite": "metric oracle suite (20 pairs, 1e-4 / exact ED, <1s)",
    "test_metric_identities": "metric identities over 1000 fuzzed strings (<10s)",
    "test_parser_corpus_and_fuzz": "parser corpus clean + 1e5-string fuzz (<60s)",
    "test_syntax_metric_arithmetic": "syntax arithmetic 91.15 / 98.23 / 39.09",
    "test_comparative_exclusion_property": "comparative >= single, stub flip",
    "test_execution_scoring": "execution scoring worked examples (<1s)",
    "test_pipeline_determinism": "pipeline determinism with stub endpoint",
    "test_split_determinism_and_sizes": "split 1127 -> 903/112/112, seeded",
}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    label = CRITERIA.get(name)
    if label is None:
        return
    status = "PASS" if report.passed else "FAIL"
    print(f"\n[ACCEPTANCE] {label}: {status}", flush=True)
