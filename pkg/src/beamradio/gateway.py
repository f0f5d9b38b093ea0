"""The gateway service: boot sequence, HTTP control plane, display, playback.

Boot order: sweep the antennas for the strongest RSSI on the configured
SSID, commit the winner, then bring up the web radio.  The HTTP server answers the station command grammar at the root,
a JSON status API under /api, and optionally serves the dashboard under
/ui.  One stream session at a time feeds the audio sink; the control
plane shares state with it only through a small lock.
"""

from __future__ import annotations

import json
import logging
import mimetypes
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from . import presets as pr
from .client import StreamSession, play
from .config import GatewayConfig
from .display import DisplayModel, display_tick, render, set_line
from .icy import EndOfStream, TitleChange, TransportError
from .rfmodel import ScanContext, scan
from .selector import SelectionFailedError, SelectorConfig, run_selection
from .sinks import FileSink, NullSink

logger = logging.getLogger(__name__)

ANTENNA_COLORS = ("red", "green", "blue")

PHASE_SELECTING = "selecting"
PHASE_PLAYING = "playing"
PHASE_IDLE = "idle"
PHASE_ERROR = "error"

STATUS_FIELDS = ("phase", "ant_rssi", "best_antenna", "antenna_color",
                 "current_slot", "station_url", "stream_title", "ip_address",
                 "display")


def antenna_indicator(best_antenna: int) -> str:
    """RGB indicator color for the selected antenna (0 red, 1 green, 2 blue)."""
    if not 0 <= best_antenna < len(ANTENNA_COLORS):
        raise IndexError(f"antenna {best_antenna} has no indicator color")
    return ANTENNA_COLORS[best_antenna]


class Gateway:
    """One radio gateway instance; construct, boot(), then shutdown()."""

    def __init__(self, config: GatewayConfig):
        self.config = config
        self._state_lock = threading.Lock()
        self._session_lock = threading.Lock()
        self._scan_ctx = ScanContext(config.environment)
        self._phase = PHASE_SELECTING
        self._ant_rssi: tuple[int | None, ...] = (None,) * config.num_antennas
        self._best: int | None = None
        self._store = pr.PresetStore.empty()
        self._title: str | None = None
        self._display = DisplayModel(width=config.display_width)
        self._session: StreamSession | None = None
        self._sink = None
        self._server: _GatewayServer | None = None
        self._server_thread: threading.Thread | None = None
        self._ticker_stop = threading.Event()
        self._ticker: threading.Thread | None = None
        self._ip_address = config.listen_address

    # -- boot / shutdown -------------------------------------------------

    def boot(self) -> "Gateway":
        self._run_selection_pass()
        self._load_presets()
        self._start_server()
        with self._state_lock:
            self._set_display_ip()
        if self._phase != PHASE_ERROR:
            url = self._current_url()
            if url:
                self._restart_session(url)
            else:
                with self._state_lock:
                    self._phase = PHASE_IDLE
                    self._refresh_display()
        self._ticker = threading.Thread(target=self._tick_loop, daemon=True,
                                        name="display-ticker")
        self._ticker.start()
        return self

    def shutdown(self) -> None:
        self._ticker_stop.set()
        if self._ticker is not None:
            self._ticker.join(timeout=5)
        with self._session_lock:
            self._stop_session_locked()
        if self._server is not None:
            self._server.shutdown()
            self._server.server_close()
            if self._server_thread is not None:
                self._server_thread.join(timeout=5)
            self._server = None

    @property
    def base_url(self) -> str:
        return f"http://{self._ip_address}"

    # -- selection ---------------------------------------------------------

    def _scanner(self, antenna: int):
        return scan(self.config.environment, self.config.patterns[antenna],
                    self._scan_ctx)

    def _run_selection_pass(self) -> None:
        with self._state_lock:
            self._phase = PHASE_SELECTING
            self._refresh_display()
        sel_config = SelectorConfig(
            target_ssid=self.config.target_ssid,
            num_antennas=self.config.num_antennas,
            retries_per_antenna=self.config.retries_per_antenna,
        )
        try:
            result = run_selection(self._scanner, sel_config)
        except SelectionFailedError as e:
            logger.warning("antenna selection failed; entering error phase")
            with self._state_lock:
                self._ant_rssi = e.ant_rssi
                self._best = None
                self._phase = PHASE_ERROR
                self._refresh_display()
            return
        with self._state_lock:
            self._ant_rssi = result.ant_rssi
            self._best = result.best_antenna
            self._refresh_display()

    def rescan(self) -> dict:
        """Re-run antenna selection; playback pauses during the sweep."""
        with self._session_lock:
            self._stop_session_locked()
            self._run_selection_pass()
            if self._phase != PHASE_ERROR:
                url = self._current_url()
                if url:
                    self._start_session_locked(url)
                else:
                    with self._state_lock:
                        self._phase = PHASE_IDLE
                        self._refresh_display()
        return self.status()

    # -- presets / playback -------------------------------------------------

    def _load_presets(self) -> None:
        path = self.config.presets_file
        if path.exists():
            store = pr.load_store(path.read_bytes())
        else:
            store = pr.PresetStore.empty()
        with self._state_lock:
            self._store = store

    def _persist_presets(self) -> None:
        data = pr.save_store(self._store)
        self.config.presets_file.parent.mkdir(parents=True, exist_ok=True)
        self.config.presets_file.write_bytes(data)

    def _current_url(self) -> str | None:
        with self._state_lock:
            return self._store.slots[self._store.current]

    def _make_sink(self):
        if self.config.audio_sink == "null":
            return NullSink()
        kind, path = self.config.audio_sink
        assert kind == "file"
        return FileSink(path)

    def _stop_session_locked(self) -> None:
        session, self._session = self._session, None
        if session is not None:
            session.stop()
        if self._sink is not None:
            self._sink.close()
            self._sink = None

    def _start_session_locked(self, url: str) -> None:
        sink = self._make_sink()
        self._sink = sink
        with self._state_lock:
            self._title = None
            self._phase = PHASE_PLAYING
            self._refresh_display()
        self._session = play(url, sink, self._on_stream_event,
                             backoff_initial=self.config.backoff_initial)

    def _restart_session(self, url: str | None) -> None:
        with self._session_lock:
            self._stop_session_locked()
            if url:
                self._start_session_locked(url)
            else:
                with self._state_lock:
                    self._phase = PHASE_IDLE
                    self._title = None
                    self._refresh_display()

    def _on_stream_event(self, event) -> None:
        if isinstance(event, TitleChange):
            with self._state_lock:
                self._title = event.title
                self._refresh_display()
        elif isinstance(event, TransportError):
            logger.warning("stream transport error: %s", event.reason)
        elif isinstance(event, EndOfStream):
            logger.info("stream ended")

    # -- display -----------------------------------------------------------

    def _refresh_display(self) -> None:
        # caller holds _state_lock
        if self._phase == PHASE_SELECTING:
            line0 = "selecting antenna"
        elif self._phase == PHASE_ERROR:
            line0 = "no signal"
        elif self._title:
            line0 = self._title
        elif self._best is not None:
            rssi = self._ant_rssi[self._best]
            line0 = f"ant {self._best + 1}: {rssi} dBm"
        else:
            line0 = self._phase
        url = self._store.slots[self._store.current]
        self._display = set_line(self._display, 0, line0)
        self._display = set_line(self._display, 1, url or "")

    def _set_display_ip(self) -> None:
        self._display = set_line(self._display, 2, self._ip_address)

    def _tick_loop(self) -> None:
        while not self._ticker_stop.wait(self.config.tick_interval):
            with self._state_lock:
                self._display = display_tick(self._display)

    # -- control plane -------------------------------------------------------

    def status(self) -> dict:
        with self._state_lock:
            best = self._best
            current = self._store.current
            url = self._store.slots[current]
            color = None
            if best is not None and best < len(ANTENNA_COLORS):
                color = ANTENNA_COLORS[best]
            return {
                "phase": self._phase,
                "ant_rssi": list(self._ant_rssi),
                "best_antenna": best,
                "antenna_color": color,
                "current_slot": current if url is not None else None,
                "station_url": url,
                "stream_title": self._title,
                "ip_address": self._ip_address,
                "display": render(self._display),
            }

    def handle_command(self, raw_path: str) -> tuple[int, str]:
        """Run one grammar command; returns (http status, text body)."""
        try:
            cmd = pr.parse_command(raw_path)
        except pr.CommandError as e:
            return 400, f"error: {e}\n"
        with self._state_lock:
            try:
                new_store, response = pr.apply_command(self._store, cmd)
            except (pr.EmptySlotError, pr.NoStationsError) as e:
                return 404, f"error: {e}\n"
            mutated = new_store != self._store
            self._store = new_store
            if mutated:
                self._persist_presets()
            effect = response.effect
        if effect is not None:
            with self._state_lock:
                url = self._store.slots[effect.slot]
            self._restart_session(url)
        body = response.body + ("\n" if response.body else "")
        return 200, body

    # -- http server -----------------------------------------------------------

    def _start_server(self) -> None:
        self._server = _GatewayServer((self.config.host, self.config.port),
                                      _GatewayHandler, gateway=self)
        host, port = self._server.server_address[:2]
        self._ip_address = f"{host}:{port}"
        self._server_thread = threading.Thread(
            target=self._server.serve_forever, daemon=True, name="gateway-http")
        self._server_thread.start()
        logger.info("gateway listening on %s", self._ip_address)


class _GatewayServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, addr, handler, gateway: Gateway):
        self.gateway = gateway
        super().__init__(addr, handler)


class _GatewayHandler(BaseHTTPRequestHandler):
    server: _GatewayServer

    def log_message(self, fmt, *args):
        logger.debug("http: " + fmt, *args)

    def _send(self, code: int, body: bytes, content_type: str) -> None:
        self.send_response(code)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Cache-Control", "no-store")
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, code: int, payload: dict) -> None:
        self._send(code, json.dumps(payload).encode("utf-8"),
                   "application/json; charset=utf-8")

    def _send_text(self, code: int, text: str) -> None:
        self._send(code, text.encode("utf-8"), "text/plain; charset=utf-8")

    def do_GET(self):
        gateway = self.server.gateway
        path = self.path
        try:
            if path == "/api/status":
                self._send_json(200, gateway.status())
            elif path == "/api/rescan":
                self._send_text(405, "error: rescan requires POST\n")
            elif path.startswith("/api/"):
                self._send_text(404, "error: unknown API path\n")
            elif path == "/ui" or path.startswith("/ui/"):
                self._serve_static(path)
            else:
                code, body = gateway.handle_command(path)
                self._send_text(code, body)
        except (BrokenPipeError, ConnectionResetError):
            pass
        except Exception:
            logger.exception("request handler failed for %s", path)
            self._send_text(500, "error: internal\n")

    def do_POST(self):
        gateway = self.server.gateway
        try:
            if self.path == "/api/rescan":
                self._send_json(200, gateway.rescan())
            else:
                self._send_text(404, "error: unknown API path\n")
        except (BrokenPipeError, ConnectionResetError):
            pass
        except Exception:
            logger.exception("request handler failed for %s", self.path)
            self._send_text(500, "error: internal\n")

    def _serve_static(self, path: str) -> None:
        ui_dir = self.server.gateway.config.ui_dir
        if ui_dir is None:
            self._send_text(404, "error: no UI configured\n")
            return
        rel = path[len("/ui"):].lstrip("/")
        if not rel:
            rel = "index.html"
        target = (Path(ui_dir) / rel).resolve()
        root = Path(ui_dir).resolve()
        if root not in target.parents and target != root:
            self._send_text(404, "error: not found\n")
            return
        if not target.is_file():
            self._send_text(404, "error: not found\n")
            return
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        self._send(200, target.read_bytes(), ctype)


def boot(config: GatewayConfig) -> Gateway:
    """Construct and boot a gateway from a config."""
    return Gateway(config).boot()
