"""Audio sinks: ordered byte consumers on the far side of the demuxer.

No decoding happens here; a sink just receives the stream's audio bytes in
order.  Backpressure is exerted by blocking in write().
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Protocol


class AudioSink(Protocol):
    def write(self, chunk: bytes) -> None: ...
    def close(self) -> None: ...


class NullSink:
    """Discards audio, keeping only a byte count."""

    def __init__(self):
        self.bytes_written = 0

    def write(self, chunk: bytes) -> None:
        self.bytes_written += len(chunk)

    def close(self) -> None:
        pass


class BufferSink:
    """Collects audio in memory; handy for tests and demos."""

    def __init__(self):
        self._buf = bytearray()

    @property
    def bytes_written(self) -> int:
        return len(self._buf)

    def getvalue(self) -> bytes:
        return bytes(self._buf)

    def write(self, chunk: bytes) -> None:
        self._buf += chunk

    def close(self) -> None:
        pass


class FileSink:
    """Writes the received audio byte stream to a file (truncates on open)."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._fh = open(self.path, "wb")
        self._lock = threading.Lock()
        self.bytes_written = 0

    def write(self, chunk: bytes) -> None:
        with self._lock:
            self._fh.write(chunk)
            self._fh.flush()
            self.bytes_written += len(chunk)

    def close(self) -> None:
        with self._lock:
            if not self._fh.closed:
                self._fh.close()
