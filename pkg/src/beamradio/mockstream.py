"""Local ICY stream server used by tests and demos.

Serves a fixed audio payload with correct metaint interleaving, injecting
StreamTitle blocks at scheduled byte offsets.  Knobs for redirects,
throttling, randomized write sizes and deliberate mid-metadata truncation
make the failure paths reproducible.
"""

from __future__ import annotations

import logging
import math
import random
import socket
import threading
import time
from pathlib import Path
from typing import Sequence

logger = logging.getLogger(__name__)

TitleSchedule = Sequence[tuple[int, str]]


def encode_title_block(title: str) -> bytes:
    """One metadata block: length byte, then StreamTitle zero-padded to 16*L."""
    payload = f"StreamTitle='{title}';".encode("utf-8")
    length = math.ceil(len(payload) / 16)
    if length > 255:
        raise ValueError("title too long for a metadata block")
    return bytes([length]) + payload.ljust(length * 16, b"\x00")


def build_icy_body(audio: bytes, metaint: int | None, titles: TitleSchedule = (),
                   truncate_mid_metadata: bool = False) -> bytes:
    """Interleave audio with metadata slots after every complete interval.

    A trailing partial interval gets no slot (the peer could not tell it
    from more audio).  At each slot the latest scheduled title whose offset
    has been reached is sent once; otherwise the slot is a single zero.
    """
    if metaint is None:
        return audio
    if metaint < 1:
        raise ValueError(f"metaint must be positive, got {metaint}")
    schedule = sorted(titles)
    parts = []
    pos = 0
    last_sent = None
    while len(audio) - pos >= metaint:
        parts.append(audio[pos:pos + metaint])
        pos += metaint
        due = None
        for offset, title in schedule:
            if offset <= pos:
                due = title
        if due is not None and due != last_sent:
            block = encode_title_block(due)
            if truncate_mid_metadata:
                parts.append(block[:1 + len(block) // 2])
                return b"".join(parts)
            parts.append(block)
            last_sent = due
        else:
            parts.append(b"\x00")
    if truncate_mid_metadata:
        raise ValueError("no titled slot to truncate at")
    if pos < len(audio):
        parts.append(audio[pos:])
    return b"".join(parts)


class MockIcyServer:
    """Threaded single-purpose ICY server bound to an ephemeral port."""

    def __init__(self, audio: bytes | str | Path, metaint: int | None,
                 titles: TitleSchedule = (), *,
                 station_name: str = "Mock FM",
                 content_type: str = "audio/mpeg",
                 icy_status: bool = False,
                 chunk_jitter_seed: int | None = None,
                 throttle: float = 0.0,
                 truncate_first: int = 0,
                 redirects: dict[str, str] | None = None):
        if isinstance(audio, (str, Path)):
            audio = Path(audio).read_bytes()
        self.audio = audio
        self.metaint = metaint
        self.titles = list(titles)
        self.station_name = station_name
        self.content_type = content_type
        self.icy_status = icy_status
        self.chunk_jitter_seed = chunk_jitter_seed
        self.throttle = throttle
        self.truncate_first = truncate_first
        self.redirects = dict(redirects or {})
        # Validates metaint and the schedule up front: bad config fails at
        # startup, not mid-request.
        self._body = build_icy_body(self.audio, self.metaint, self.titles)
        if self.truncate_first:
            build_icy_body(self.audio, self.metaint, self.titles,
                           truncate_mid_metadata=True)
        self.stream_requests = 0
        self._lock = threading.Lock()
        self._listener: socket.socket | None = None
        self._thread: threading.Thread | None = None
        self._stopped = threading.Event()
        self.port: int | None = None

    # -- lifecycle -----------------------------------------------------

    def start(self) -> "MockIcyServer":
        self._listener = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        self._listener.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        self._listener.bind(("127.0.0.1", 0))
        self._listener.listen(8)
        # closing the socket does not wake a blocked accept(); poll instead
        self._listener.settimeout(0.1)
        self.port = self._listener.getsockname()[1]
        self._thread = threading.Thread(target=self._accept_loop,
                                        name="mock-icy-server", daemon=True)
        self._thread.start()
        return self

    def stop(self) -> None:
        self._stopped.set()
        if self._listener is not None:
            try:
                self._listener.close()
            except OSError:
                pass
        if self._thread is not None:
            self._thread.join(timeout=5)

    def __enter__(self) -> "MockIcyServer":
        return self.start()

    def __exit__(self, *exc) -> None:
        self.stop()

    @property
    def url(self) -> str:
        return f"http://127.0.0.1:{self.port}/stream"

    def url_for(self, path: str) -> str:
        return f"http://127.0.0.1:{self.port}{path}"

    # -- request handling ----------------------------------------------

    def _accept_loop(self) -> None:
        while not self._stopped.is_set():
            try:
                conn, _ = self._listener.accept()
            except socket.timeout:
                continue
            except OSError:
                return
            conn.settimeout(None)
            threading.Thread(target=self._handle, args=(conn,), daemon=True).start()

    def _read_request_path(self, conn: socket.socket) -> str | None:
        buf = bytearray()
        conn.settimeout(10)
        while b"\r\n\r\n" not in buf and len(buf) < 65536:
            try:
                data = conn.recv(4096)
            except OSError:
                return None
            if not data:
                return None
            buf += data
        try:
            request_line = bytes(buf).split(b"\r\n", 1)[0].decode("latin-1")
            method, path, _ = request_line.split(None, 2)
        except ValueError:
            return None
        if method != "GET":
            return None
        return path

    def _handle(self, conn: socket.socket) -> None:
        try:
            path = self._read_request_path(conn)
            if path is None:
                return
            if path in self.redirects:
                target = self.redirects[path]
                conn.sendall(f"HTTP/1.0 302 Found\r\nLocation: {target}\r\n\r\n"
                             .encode("latin-1"))
                return
            if path != "/stream":
                conn.sendall(b"HTTP/1.0 404 Not Found\r\n\r\n")
                return
            with self._lock:
                self.stream_requests += 1
                nth = self.stream_requests
            truncate = nth <= self.truncate_first
            self._serve_stream(conn, truncate)
        except OSError:
            pass
        finally:
            try:
                conn.close()
            except OSError:
                pass

    def _serve_stream(self, conn: socket.socket, truncate: bool) -> None:
        status = "ICY 200 OK" if self.icy_status else "HTTP/1.0 200 OK"
        headers = [status,
                   f"content-type: {self.content_type}",
                   f"icy-name: {self.station_name}"]
        if self.metaint is not None:
            headers.append(f"icy-metaint: {self.metaint}")
        conn.sendall(("\r\n".join(headers) + "\r\n\r\n").encode("latin-1"))
        body = (build_icy_body(self.audio, self.metaint, self.titles,
                               truncate_mid_metadata=True)
                if truncate else self._body)
        rng = (random.Random(self.chunk_jitter_seed)
               if self.chunk_jitter_seed is not None else None)
        pos = 0
        while pos < len(body) and not self._stopped.is_set():
            size = rng.randint(1, 8192) if rng else 8192
            conn.sendall(body[pos:pos + size])
            pos += size
            if self.throttle:
                time.sleep(self.throttle)


def serve_mock_stream(audio: bytes | str | Path, metaint: int | None,
                      titles: TitleSchedule = (), **kwargs) -> MockIcyServer:
    """Start a local ICY server for ``audio``; caller must stop() it."""
    return MockIcyServer(audio, metaint, titles, **kwargs).start()
