#!/usr/bin/env python3
"""Regenerate the execution-trace fixtures.

Two samples, three runs per side, in the capture agent's export schema.
Volatile fields (UtcTime, ProcessGuid, pids, ...) differ across runs and
between the generated and ground-truth sides; the behavioral content is
identical for demo001 and overlaps partially for demo002. Each run also
carries one unrelated-pid record (lineage noise) and run 2 of demo001
carries a one-off event that stabilization must discard.

Writes tests/fixtures/traces/{gen,ref}/<sample>.run<k>.json.
"""

from __future__ import annotations

import json
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "traces"


def guid(seed: int) -> str:
    return f"{{9a3c1e00-0000-0000-0000-{seed:012d}}}"


def process_create(pid, ppid, image, command, parent_image, seed, case_variant=False):
    if case_variant:
        image = image.upper()
    return {
        "event_type": "ProcessCreate",
        "process_id": pid,
        "parent_process_id": ppid,
        "fields": {
            "UtcTime": f"2024-04-03 10:{seed % 60:02d}:{(seed * 7) % 60:02d}.123",
            "ProcessGuid": guid(seed),
            "ProcessId": str(pid),
            "ParentProcessId": str(ppid),
            "Image": image,
            "CommandLine": command,
            "CurrentDirectory": "C:\\Users\\operator\\",
            "User": "LAB\\operator",
            "IntegrityLevel": "Medium",
            "ParentImage": parent_image,
            "LogonId": f"0x{seed:x}",
            "TerminalSessionId": "1",
        },
    }


def file_create(pid, image, target, seed):
    return {
        "event_type": "FileCreate",
        "process_id": pid,
        "parent_process_id": None,
        "fields": {
            "UtcTime": f"2024-04-03 10:{seed % 60:02d}:{(seed * 11) % 60:02d}.456",
            "ProcessGuid": guid(seed),
            "ProcessId": str(pid),
            "Image": image,
            "TargetFilename": target,
        },
    }


def registry_set(pid, image, key, value, seed):
    return {
        "event_type": "RegistryEvent",
        "process_id": pid,
        "parent_process_id": None,
        "fields": {
            "UtcTime": f"2024-04-03 10:{seed % 60:02d}:{(seed * 13) % 60:02d}.789",
            "ProcessGuid": guid(seed),
            "ProcessId": str(pid),
            "EventType": "SetValue",
            "Image": image,
            "TargetObject": key,
            "Details": value,
        },
    }


def network_connect(pid, image, ip, port, seed):
    return {
        "event_type": "NetworkConnect",
        "process_id": pid,
        "parent_process_id": None,
        "fields": {
            "UtcTime": f"2024-04-03 10:{seed % 60:02d}:{(seed * 17) % 60:02d}.012",
            "ProcessGuid": guid(seed),
            "ProcessId": str(pid),
            "Image": image,
            "DestinationIp": ip,
            "DestinationPort": str(port),
            "Protocol": "tcp",
        },
    }


PS = "C:\\Windows\\System32\\WindowsPowerShell\\v1.0\\powershell.exe"
CMD = "C:\\Windows\\System32\\cmd.exe"
EXPLORER = "C:\\Windows\\explorer.exe"
SVCHOST = "C:\\Windows\\System32\\svchost.exe"


def demo001(side: str, run: int) -> dict:
    # same behavior every run and on both sides; pids/guids/times vary
    base = {"gen": 4000, "ref": 6000}[side] + run * 10
    root = base + 1
    child = base + 2
    seed = base
    records = [
        process_create(root, 900 + run, PS,
                       'powershell.exe -Command "Set-ItemProperty -Path HKCU:\\\\Software\\\\Demo -Name Flag -Value 1 ; cmd.exe /c echo ok > C:\\\\temp\\\\demo.txt"',
                       EXPLORER, seed + 1, case_variant=side == "ref"),
        registry_set(root, PS, "HKCU\\Software\\Demo\\Flag", "DWORD (0x00000001)", seed + 2),
        process_create(child, root, CMD, "cmd.exe /c echo ok > C:\\temp\\demo.txt",
                       PS, seed + 3),
        file_create(child, CMD, "C:\\temp\\demo.txt", seed + 4),
        network_connect(root, PS, "127.0.0.1", 8080, seed + 5),
        # unrelated process: lineage filtering must drop it
        file_create(999, SVCHOST, "C:\\Windows\\Prefetch\\SVCHOST.pf", seed + 6),
    ]
    if run == 2:
        # sporadic event present in a single run only
        records.append(file_create(root, PS, "C:\\temp\\onceonly.tmp", seed + 7))
    return {"sample_id": "demo001", "run_index": run, "root_pid": root,
            "records": records}


def demo002(side: str, run: int) -> dict:
    # ref side exhibits one extra behavioral event (a network beacon)
    base = {"gen": 5000, "ref": 7000}[side] + run * 10
    root = base + 1
    seed = base
    records = [
        process_create(root, 900 + run, PS,
                       "powershell.exe -File C:\\temp\\stage.ps1", EXPLORER, seed + 1),
        file_create(root, PS, "C:\\temp\\stage\\report.docx", seed + 2),
        file_create(root, PS, "C:\\temp\\stage\\notes.txt", seed + 3),
        registry_set(root, PS, "HKCU\\Software\\Demo\\Staged", "1", seed + 4),
        file_create(999, SVCHOST, "C:\\Windows\\Prefetch\\SVCHOST.pf", seed + 5),
    ]
    if side == "ref":
        records.append(network_connect(root, PS, "127.0.0.1", 4444, seed + 6))
    return {"sample_id": "demo002", "run_index": run, "root_pid": root,
            "records": records}


def main() -> None:
    for side in ("gen", "ref"):
        directory = OUT / side
        directory.mkdir(parents=True, exist_ok=True)
        for build in (demo001, demo002):
            for run in (1, 2, 3):
                payload = build(side, run)
                path = directory / f"{payload['sample_id']}.run{run}.json"
                path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    print(f"wrote trace fixtures -> {OUT}")


if __name__ == "__main__":
    main()
