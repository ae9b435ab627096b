"""In-process HTTP sampler service for exercising :class:`~qeigen.samplers.RemoteSampler`.

>>> with LoopbackServer() as server:
...     sampler = RemoteSampler(server.endpoint)
"""

from __future__ import annotations

import json
import threading
from dataclasses import replace
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Callable

from .ising import IsingProblem
from .samplers import SamplerConfig, simulated_anneal


class LoopbackServer:
    """Serve ``POST /sample`` on ``127.0.0.1`` backed by :func:`simulated_anneal`.

    ``num_reads`` and ``seed`` come from each request; the rest of the
    schedule comes from ``config``. ``tamper`` may rewrite the response dict
    before it is sent, which is how tests fake a misbehaving service.
    """

    def __init__(self, config: SamplerConfig | None = None,
                 tamper: Callable[[dict], dict] | None = None):
        self.config = config or SamplerConfig()
        self.tamper = tamper
        self._httpd = ThreadingHTTPServer(("127.0.0.1", 0), self._handler())
        self._thread = None

    @property
    def endpoint(self) -> str:
        host, port = self._httpd.server_address[:2]
        return f"http://{host}:{port}"

    def _handler(self):
        server = self

        class Handler(BaseHTTPRequestHandler):
            def do_POST(self):
                if self.path.rstrip("/") != "/sample":
                    self.send_error(404)
                    return
                length = int(self.headers.get("Content-Length", 0))
                try:
                    request = json.loads(self.rfile.read(length).decode("utf-8"))
                    problem = IsingProblem.from_dict(request)
                    cfg = replace(server.config, num_reads=int(request["num_reads"]),
                                  seed=int(request["seed"]))
                except (KeyError, TypeError, ValueError) as exc:
                    self.send_error(400, str(exc))
                    return
                result = simulated_anneal(problem, cfg).to_dict()
                if server.tamper is not None:
                    result = server.tamper(result)
                body = json.dumps(result).encode("utf-8")
                self.send_response(200)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)

            def log_message(self, *args):
                pass

        return Handler

    def start(self) -> "LoopbackServer":
        self._thread = threading.Thread(target=self._httpd.serve_forever, daemon=True)
        self._thread.start()
        return self

    def stop(self):
        # shutdown() blocks forever unless serve_forever() is running.
        if self._thread is not None:
            self._httpd.shutdown()
            self._thread.join()
            self._thread = None
        self._httpd.server_close()

    def __enter__(self):
        return self.start()

    def __exit__(self, *exc):
        self.stop()
