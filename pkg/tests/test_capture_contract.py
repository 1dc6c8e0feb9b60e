"""Schema contract between the capture agent's exports and execeval.

The agent runs only on a Sysmon-equipped Windows host, so its committed
example exports stand in here: every file must load, stabilize to a
non-empty multiset, and two independent captures of the same benign
command must score P = R = F1 = 1 against each other.
"""

from pathlib import Path

from psbench import execeval as ee

EXAMPLES = Path(__file__).parent.parent / "capture-agent" / "examples"


def stabilized(capture: str):
    paths = sorted((EXAMPLES / capture).glob("filewrite.run*.json"))
    assert len(paths) == 3
    runset = ee.load_runset(paths)
    filtered = ee.RunSet(sample_id=runset.sample_id,
                         runs=[ee.filter_lineage(t) for t in runset.runs])
    return ee.stabilize(filtered)


def test_every_export_loads():
    for path in EXAMPLES.glob("*/*.json"):
        trace = ee.load_trace(path)
        assert trace.sample_id == "filewrite"
        assert trace.root_pid is not None
        assert trace.records, path


def test_exports_stabilize_non_empty():
    counts = stabilized("first")
    assert sum(counts.values()) == 3  # ProcessCreate, FileCreate, ProcessTerminate
    types = {event.event_type for event in counts}
    assert types == {"ProcessCreate", "FileCreate", "ProcessTerminate"}


def test_two_captures_of_same_command_score_perfectly():
    result = ee.score([{
        "id": "filewrite",
        "retrieved": stabilized("second"),
        "relevant": stabilized("first"),
    }])
    assert (result.precision, result.recall, result.f1) == (1.0, 1.0, 1.0)
