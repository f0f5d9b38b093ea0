"""HTTP/ICY stream client: fetch a station URL and run the demux loop.

Plain http.client chokes on the legacy ``ICY 200 OK`` status line some
SHOUTcast servers still emit, so the request is written over a raw socket
(HTTP/1.0, so no chunked transfer coding can appear).  The session runs on
its own thread, delivers audio to a sink and non-audio events to a
callback, survives transport hiccups with capped exponential backoff, and
ends when the server closes cleanly or stop() is called.
"""

from __future__ import annotations

import logging
import socket
import ssl
import threading
import urllib.parse
from typing import Callable, Optional

from .icy import (AudioChunk, EndOfStream, IcyDemuxer, IcyHeaders,
                  IcyProtocolError, TransportError, parse_icy_headers)
from .sinks import AudioSink

logger = logging.getLogger(__name__)

USER_AGENT = "beamradio/0.1"
MAX_REDIRECTS = 5
RECV_SIZE = 16384
_MAX_HEADER = 65536

EventCallback = Callable[[object], None]


class TransportFailure(Exception):
    """Internal: connection-level failure, converted to a TransportError event."""


def _connect(url: str, timeout: float) -> tuple[socket.socket, str, str]:
    split = urllib.parse.urlsplit(url)
    if split.scheme not in ("http", "https"):
        raise TransportFailure(f"connect: unsupported scheme {split.scheme!r}")
    host = split.hostname
    if not host:
        raise TransportFailure(f"connect: no host in {url!r}")
    port = split.port or (443 if split.scheme == "https" else 80)
    try:
        sock = socket.create_connection((host, port), timeout=timeout)
    except OSError as e:
        raise TransportFailure(f"connect: {e}") from None
    if split.scheme == "https":
        try:
            sock = ssl.create_default_context().wrap_socket(sock, server_hostname=host)
        except (OSError, ssl.SSLError) as e:
            sock.close()
            raise TransportFailure(f"connect: tls: {e}") from None
    path = split.path or "/"
    if split.query:
        path += "?" + split.query
    return sock, host, path


def _read_response_head(sock: socket.socket) -> tuple[bytes, bytes]:
    """Read up to the blank line; returns (head, leftover body bytes)."""
    buf = bytearray()
    while b"\r\n\r\n" not in buf:
        if len(buf) > _MAX_HEADER:
            raise TransportFailure("response header too large")
        try:
            data = sock.recv(RECV_SIZE)
        except OSError as e:
            raise TransportFailure(f"read: {e}") from None
        if not data:
            raise TransportFailure("connection closed before response headers")
        buf += data
    head, _, leftover = bytes(buf).partition(b"\r\n\r\n")
    return head, leftover


def open_stream(url: str, timeout: float = 10.0,
                max_redirects: int = MAX_REDIRECTS) -> tuple[socket.socket, bytes, IcyHeaders]:
    """GET the stream with ``Icy-MetaData: 1``, following redirects.

    Accepts both ``HTTP/1.x 200`` and the legacy ``ICY 200 OK`` status
    line.  Returns the open socket, any body bytes already read, and the
    parsed ICY headers.
    """
    current = url
    for _ in range(max_redirects + 1):
        sock, host, path = _connect(current, timeout)
        request = (f"GET {path} HTTP/1.0\r\n"
                   f"Host: {host}\r\n"
                   f"Icy-MetaData: 1\r\n"
                   f"User-Agent: {USER_AGENT}\r\n"
                   f"Accept: */*\r\n"
                   f"Connection: close\r\n\r\n")
        try:
            sock.sendall(request.encode("ascii"))
            head, leftover = _read_response_head(sock)
        except TransportFailure:
            sock.close()
            raise
        except OSError as e:
            sock.close()
            raise TransportFailure(f"send: {e}") from None
        lines = head.decode("latin-1").split("\r\n")
        status_parts = lines[0].split(None, 2)
        if len(status_parts) < 2 or not (status_parts[0].startswith("HTTP/")
                                         or status_parts[0].upper() == "ICY"):
            sock.close()
            raise TransportFailure(f"bad status line {lines[0]!r}")
        try:
            code = int(status_parts[1])
        except ValueError:
            sock.close()
            raise TransportFailure(f"bad status line {lines[0]!r}") from None
        if 200 <= code < 300:
            try:
                headers = parse_icy_headers(lines[1:])
            except IcyProtocolError as e:
                sock.close()
                raise TransportFailure(f"protocol: {e}") from None
            return sock, leftover, headers
        sock.close()
        if code in (301, 302, 303, 307, 308):
            location = None
            for line in lines[1:]:
                key, sep, value = line.partition(":")
                if sep and key.strip().lower() == "location":
                    location = value.strip()
                    break
            if not location:
                raise TransportFailure(f"redirect {code} without Location")
            current = urllib.parse.urljoin(current, location)
            continue
        raise TransportFailure(f"status {code}")
    raise TransportFailure("redirect loop")


class StreamSession:
    """One playback session: connect, demux, feed the sink, emit events.

    ``on_event`` receives TitleChange, TransportError and EndOfStream (audio
    goes to the sink only).  Transport errors trigger reconnects with
    backoff doubling from ``backoff_initial`` up to ``backoff_max`` until
    stop() is called; a clean end of stream finishes the session.  stop()
    is idempotent and may be called from any thread; it returns once the
    session has ceased writing to the sink.
    """

    def __init__(self, url: str, sink: AudioSink,
                 on_event: Optional[EventCallback] = None, *,
                 reconnect: bool = True,
                 timeout: float = 10.0,
                 backoff_initial: float = 1.0,
                 backoff_max: float = 30.0):
        self.url = url
        self.sink = sink
        self.on_event = on_event
        self.reconnect = reconnect
        self.timeout = timeout
        self.backoff_initial = backoff_initial
        self.backoff_max = backoff_max
        self.headers: IcyHeaders | None = None
        self._stop = threading.Event()
        self._sock: socket.socket | None = None
        self._sock_lock = threading.Lock()
        self._thread = threading.Thread(target=self._run, name="stream-session",
                                        daemon=True)

    def start(self) -> "StreamSession":
        self._thread.start()
        return self

    def stop(self) -> None:
        self._stop.set()
        with self._sock_lock:
            if self._sock is not None:
                try:
                    self._sock.shutdown(socket.SHUT_RDWR)
                except OSError:
                    pass
                try:
                    self._sock.close()
                except OSError:
                    pass
                self._sock = None
        if self._thread.is_alive() and threading.current_thread() is not self._thread:
            self._thread.join()

    def join(self, timeout: float | None = None) -> None:
        self._thread.join(timeout)

    @property
    def running(self) -> bool:
        return self._thread.is_alive()

    def _emit(self, event) -> None:
        if self.on_event is not None:
            try:
                self.on_event(event)
            except Exception:
                logger.exception("stream event callback failed")

    def _dispatch(self, events) -> bool:
        """Deliver demuxer events; returns False when the session must end."""
        for event in events:
            if isinstance(event, AudioChunk):
                self.sink.write(event.data)
            else:
                self._emit(event)
                if isinstance(event, (EndOfStream, TransportError)):
                    return False
        return True

    def _run(self) -> None:
        delay = self.backoff_initial
        while not self._stop.is_set():
            try:
                sock, leftover, headers = open_stream(self.url, timeout=self.timeout)
            except TransportFailure as e:
                self._emit(TransportError(str(e)))
                if not self.reconnect or self._stop.wait(delay):
                    return
                delay = min(delay * 2, self.backoff_max)
                continue
            with self._sock_lock:
                if self._stop.is_set():
                    sock.close()
                    return
                self._sock = sock
            self.headers = headers
            delay = self.backoff_initial
            demux = IcyDemuxer(headers.metaint)
            clean_end = False
            failed = False
            try:
                if leftover and not self._dispatch(demux.feed(leftover)):
                    failed = True
                while not failed and not self._stop.is_set():
                    try:
                        data = sock.recv(RECV_SIZE)
                    except OSError:
                        if self._stop.is_set():
                            return
                        self._emit(TransportError("read: connection lost"))
                        failed = True
                        break
                    if not data:
                        events = demux.finish()
                        ended_clean = any(isinstance(e, EndOfStream) for e in events)
                        self._dispatch(events)
                        if ended_clean:
                            clean_end = True
                        else:
                            failed = True
                        break
                    if not self._dispatch(demux.feed(data)):
                        failed = True
                        break
            finally:
                with self._sock_lock:
                    if self._sock is sock:
                        self._sock = None
                sock.close()
            if clean_end or self._stop.is_set():
                return
            if not failed:
                # dispatch returned False on a demux-level transport error
                failed = True
            if not self.reconnect or self._stop.wait(delay):
                return
            delay = min(delay * 2, self.backoff_max)


def play(url: str, sink: AudioSink, on_event: Optional[EventCallback] = None,
         **kwargs) -> StreamSession:
    """Start streaming ``url`` into ``sink``; returns the running session."""
    return StreamSession(url, sink, on_event, **kwargs).start()
