"""Stateless HTTP service exposing refinement to interactive clients.

One request carries a whole polygon plus scheme settings and gets back the
refined vertices and diagnostics; nothing is retained between requests, so
identical requests produce identical responses and instances can be
duplicated freely.

Endpoints:

* ``GET /health``        - liveness probe.
* ``GET /capabilities``  - supported schemes and parameter ranges.
* ``POST /refine``       - refine a polygon (JSON body, see handle_refine).
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import _kernels
from .errors import CurveError, PolygonParseError
from .geometry import WEIGHT_MAX, WEIGHT_MIN
from .polyio import polygon_from_jsonable, polygon_to_jsonable
from .subdivision import LEVEL_CAP, SCHEMES, SchemeConfig, refine

SERVICE_M_MAX = 16

CAPABILITIES = {
    "schemes": list(SCHEMES),
    "m_min": 1,
    "m_max": SERVICE_M_MAX,
    "level_cap": LEVEL_CAP,
    "weight_domain": [WEIGHT_MIN, WEIGHT_MAX],
}


def handle_refine(request: dict) -> dict:
    """Refine the polygon described by a request document.

    Request fields: ``scheme`` (mlr|m4pt|llr|l4pt), ``levels`` (int),
    ``m`` (int, refine-and-smooth degree, default 1), ``closed`` (bool),
    ``points`` (records with ``p`` and optional ``n`` — normals absent in
    the request are filled by the naive initialization and echoed back),
    ``include_levels`` (bool, default false).
    """
    if not isinstance(request, dict):
        raise PolygonParseError("request body must be a JSON object")
    scheme = request.get("scheme", "mlr")
    levels = request.get("levels", 1)
    m = request.get("m", 1)
    include_levels = bool(request.get("include_levels", False))
    if not isinstance(scheme, str) or scheme not in SCHEMES:
        raise PolygonParseError(f"unknown scheme {scheme!r}")
    if not isinstance(levels, int) or isinstance(levels, bool):
        raise PolygonParseError("'levels' must be an integer")
    if not isinstance(m, int) or isinstance(m, bool):
        raise PolygonParseError("'m' must be an integer")
    if not 1 <= m <= SERVICE_M_MAX:
        raise PolygonParseError(f"'m' must be in [1, {SERVICE_M_MAX}]")

    polygon = polygon_from_jsonable(
        {"closed": request.get("closed", False), "points": request.get("points")}
    )
    try:
        config = SchemeConfig(scheme, levels, m)
    except ValueError as exc:
        raise PolygonParseError(str(exc)) from exc

    level_polys, diagnostics = refine(polygon, config)
    response = {
        "config": {
            "scheme": scheme,
            "m": m,
            "levels": levels,
            "closed": polygon.closed,
        },
        "initial": polygon_to_jsonable(polygon),
        "result": polygon_to_jsonable(level_polys[-1]),
        "diagnostics": diagnostics.as_dict(),
    }
    if include_levels:
        response["levels"] = [polygon_to_jsonable(p) for p in level_polys]
    return response


def handle_capabilities() -> dict:
    return dict(CAPABILITIES)


def _error_body(exc: CurveError) -> dict:
    return {
        "error": {
            "code": exc.code,
            "message": str(exc),
            "index": exc.index,
        }
    }


class RefineHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    def _send_json(self, status: int, payload: dict) -> None:
        body = json.dumps(payload, separators=(",", ":")).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        if self.path == "/health":
            self._send_json(200, {"status": "ok"})
        elif self.path == "/capabilities":
            self._send_json(200, handle_capabilities())
        else:
            self._send_json(404, {"error": {"code": "NotFound", "message": self.path}})

    def do_POST(self):
        if self.path != "/refine":
            self._send_json(404, {"error": {"code": "NotFound", "message": self.path}})
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            raw = self.rfile.read(length)
            request = json.loads(raw.decode("utf-8"))
        except (ValueError, UnicodeDecodeError) as exc:
            self._send_json(
                400, {"error": {"code": "Parse", "message": f"bad body: {exc}", "index": None}}
            )
            return
        try:
            self._send_json(200, handle_refine(request))
        except PolygonParseError as exc:
            self._send_json(400, _error_body(exc))
        except CurveError as exc:
            self._send_json(422, _error_body(exc))


def make_server(bind: str = "127.0.0.1:8075") -> ThreadingHTTPServer:
    host, _, port = bind.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"bind address must be host:port, got {bind!r}")
    _kernels.warmup()
    return ThreadingHTTPServer((host, int(port)), RefineHandler)


def serve(bind: str = "127.0.0.1:8075") -> None:
    """Host the service until interrupted."""
    server = make_server(bind)
    host, port = server.server_address[:2]
    print(f"circleavg refine service on http://{host}:{port} "
          f"(backend: {_kernels.backend_name()})")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()


def serve_in_thread(bind: str = "127.0.0.1:0"):
    """Start the service on a background thread; returns (server, thread)."""
    server = make_server(bind)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return server, thread
