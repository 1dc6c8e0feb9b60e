"""Local chat-completions stub used by client and pipeline tests."""

from __future__ import annotations

import json
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer


def default_reply(intent: str) -> str:
    return f'Write-Output "{intent}"'


class StubEndpoint:
    """Scripted stand-in for a hosted generation endpoint.

    `script` maps an intent to a list of HTTP statuses to emit before
    succeeding; unknown intents succeed immediately. `reply` maps an
    intent to the message content of a successful response.
    """

    def __init__(self, reply=None, script=None, delay: float = 0.0):
        self.reply = reply or default_reply
        self.script = {key: list(value) for key, value in (script or {}).items()}
        self.delay = delay
        self.lock = threading.Lock()
        self.active = 0
        self.peak_active = 0
        self.intents_seen: list[str] = []
        self.server = ThreadingHTTPServer(("127.0.0.1", 0), self._handler_class())
        self.thread = threading.Thread(target=self.server.serve_forever, daemon=True)

    @property
    def base_url(self) -> str:
        return f"http://127.0.0.1:{self.server.server_address[1]}"

    def __enter__(self) -> "StubEndpoint":
        self.thread.start()
        return self

    def __exit__(self, *exc_info) -> None:
        self.server.shutdown()
        self.server.server_close()

    def _handler_class(self):
        stub = self

        class Handler(BaseHTTPRequestHandler):
            def log_message(self, *args):
                pass

            def do_POST(self):
                if self.path != "/v1/chat/completions":
                    self.send_response(404)
                    self.end_headers()
                    return
                length = int(self.headers.get("Content-Length", "0"))
                payload = json.loads(self.rfile.read(length) or b"{}")
                content = payload.get("messages", [{}])[0].get("content", "")
                intent = content.split("\n\n", 1)[-1]
                with stub.lock:
                    stub.active += 1
                    stub.peak_active = max(stub.peak_active, stub.active)
                    stub.intents_seen.append(intent)
                    scripted = stub.script.get(intent)
                    status = scripted.pop(0) if scripted else 200
                try:
                    if stub.delay:
                        time.sleep(stub.delay)
                    if status != 200:
                        self.send_response(status)
                        self.end_headers()
                        return
                    body = json.dumps({
                        "choices": [{"message": {"content": stub.reply(intent)}}],
                    }).encode("utf-8")
                    self.send_response(200)
                    self.send_header("Content-Type", "application/json")
                    self.send_header("Content-Length", str(len(body)))
                    self.end_headers()
                    self.wfile.write(body)
                finally:
                    with stub.lock:
                        stub.active -= 1

        return Handler
