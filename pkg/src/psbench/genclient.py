"""Client for a chat-completions-style text generation endpoint.

One candidate command per natural-language intent. Requests run through a
bounded thread pool with exponential backoff on transient failures; the
bearer token is read from an environment variable at call time and never
stored on the config or written to logs, results, or error messages.
"""

from __future__ import annotations

import json
import logging
import os
import re
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import requests

log = logging.getLogger(__name__)

PROMPT_INSTRUCTION = (
    "I want you to act as a code generator. Given a natural language "
    "description of a PowerShell command, generate the corresponding "
    "PowerShell code"
)

_FENCE_RE = re.compile(r"```[A-Za-z0-9_+-]*\r?\n(.*?)```", re.DOTALL)

_RETRYABLE_STATUS = frozenset({408, 429, 500, 502, 503, 504})
_AUTH_STATUS = frozenset({401, 403})

OK = "ok"
FAILED = "failed"


class GenerationAuthError(RuntimeError):
    """Authentication rejected or token unavailable; the batch is aborted."""


@dataclass(frozen=True)
class EndpointConfig:
    base_url: str
    model: str
    token_env: str = "PSBENCH_API_TOKEN"
    timeout_s: float = 30.0
    max_retries: int = 3
    concurrency: int = 4
    backoff_base_s: float = 0.5

    def __post_init__(self):
        if self.timeout_s <= 0:
            raise ValueError("timeout must be positive")
        if self.max_retries < 0:
            raise ValueError("max retries must be non-negative")
        if self.concurrency < 1:
            raise ValueError("concurrency must be at least 1")

    @property
    def completions_url(self) -> str:
        return self.base_url.rstrip("/") + "/v1/chat/completions"


@dataclass(frozen=True)
class GenTask:
    sample_id: str
    intent: str


@dataclass
class GenResult:
    sample_id: str
    candidate: str
    attempts: int
    status: str
    error: str | None = None


def build_prompt(intent: str) -> str:
    """The fixed instruction followed by the trimmed intent. Deterministic."""
    trimmed = intent.strip()
    if not trimmed:
        raise ValueError("intent is empty")
    return f"{PROMPT_INSTRUCTION}\n\n{trimmed}"


def extract_candidate(message: str) -> str:
    """First fenced code block when present, else the whole message, with
    leading and trailing blank lines removed."""
    match = _FENCE_RE.search(message)
    text = match.group(1) if match else message
    lines = text.splitlines()
    while lines and not lines[0].strip():
        lines.pop(0)
    while lines and not lines[-1].strip():
        lines.pop()
    return "\n".join(lines)


def _scrub(text: str, token: str) -> str:
    return text.replace(token, "***") if token else text


def _generate_one(task: GenTask, config: EndpointConfig, token: str) -> GenResult:
    payload = {
        "model": config.model,
        "messages": [{"role": "user", "content": build_prompt(task.intent)}],
    }
    headers = {"Authorization": f"Bearer {token}"}
    last_error = "no attempts made"
    attempts = 0
    for attempt in range(config.max_retries + 1):
        attempts = attempt + 1
        if attempt:
            time.sleep(config.backoff_base_s * 2 ** (attempt - 1))
        try:
            response = requests.post(config.completions_url, json=payload,
                                     headers=headers, timeout=config.timeout_s)
        except requests.RequestException as exc:
            last_error = _scrub(f"{type(exc).__name__}: {exc}", token)
            log.debug("sample %s attempt %d transport error: %s",
                      task.sample_id, attempts, last_error)
            continue
        if response.status_code in _AUTH_STATUS:
            raise GenerationAuthError(
                f"endpoint rejected credentials with HTTP {response.status_code}")
        if response.status_code in _RETRYABLE_STATUS:
            last_error = f"HTTP {response.status_code}"
            log.debug("sample %s attempt %d got %s", task.sample_id, attempts, last_error)
            continue
        if response.status_code != 200:
            last_error = f"HTTP {response.status_code}"
            break
        try:
            message = response.json()["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            last_error = _scrub(f"malformed response: {type(exc).__name__}", token)
            break
        candidate = extract_candidate(message)
        if not candidate:
            last_error = "empty candidate after post-processing"
            break
        return GenResult(sample_id=task.sample_id, candidate=candidate,
                         attempts=attempts, status=OK)
    return GenResult(sample_id=task.sample_id, candidate="",
                     attempts=attempts, status=FAILED, error=last_error)


def generate_batch(tasks: list[GenTask], config: EndpointConfig) -> list[GenResult]:
    """One result per task, index-aligned with the input order.

    Transient failures (timeouts, 429, 5xx) are retried with exponential
    backoff up to the configured limit; exhausted retries produce a failed
    result. An authentication failure aborts the whole batch.
    """
    token = os.environ.get(config.token_env)
    if not token:
        raise GenerationAuthError(
            f"environment variable {config.token_env} is not set")
    if not tasks:
        return []
    with ThreadPoolExecutor(max_workers=config.concurrency) as pool:
        futures = [pool.submit(_generate_one, task, config, token) for task in tasks]
        return [future.result() for future in futures]


def write_results(path: str | Path, results: list[GenResult]) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for result in results:
            record = {"sample_id": result.sample_id, "candidate": result.candidate,
                      "attempts": result.attempts, "status": result.status}
            if result.error is not None:
                record["error"] = result.error
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def load_results(path: str | Path) -> list[GenResult]:
    results = []
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"line {lineno}: malformed JSON ({exc.msg})") from exc
            results.append(GenResult(
                sample_id=record["sample_id"], candidate=record.get("candidate", ""),
                attempts=record.get("attempts", 1), status=record.get("status", OK),
                error=record.get("error")))
    return results
