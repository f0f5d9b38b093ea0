"""ICY (SHOUTcast) stream demuxing: audio bytes in, titles out.

An ICY body repeats ``[metaint audio bytes][1 length byte L][16*L metadata
bytes]``.  The demuxer keeps exact byte accounting across arbitrary chunk
boundaries, forwards audio untouched and raises title-change events parsed
from ``StreamTitle='...'`` blocks.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

import numpy as np

logger = logging.getLogger(__name__)

# icy-metaint beyond this is treated as a protocol error rather than a
# buffering hazard; real stations sit around 16000.
MAX_METAINT = 1 << 24


class IcyProtocolError(ValueError):
    pass


@dataclass(frozen=True)
class IcyHeaders:
    metaint: int | None
    station_name: str | None
    content_type: str


@dataclass(frozen=True)
class AudioChunk:
    data: bytes


@dataclass(frozen=True)
class TitleChange:
    title: str


@dataclass(frozen=True)
class EndOfStream:
    pass


@dataclass(frozen=True)
class TransportError:
    reason: str


IcyStreamEvent = Union[AudioChunk, TitleChange, EndOfStream, TransportError]


def parse_icy_headers(header_lines: Iterable[str]) -> IcyHeaders:
    """Pick the ICY fields out of ``name: value`` response header lines.

    Header names are case-insensitive.  A missing icy-metaint means the
    stream carries no in-band metadata; a non-numeric or non-positive one
    is a protocol error.
    """
    metaint = None
    name = None
    content_type = ""
    for line in header_lines:
        key, sep, value = line.partition(":")
        if not sep:
            continue
        key = key.strip().lower()
        value = value.strip()
        if key == "icy-metaint":
            try:
                metaint = int(value)
            except ValueError:
                raise IcyProtocolError(f"non-numeric icy-metaint {value!r}") from None
            if metaint < 1:
                raise IcyProtocolError(f"icy-metaint must be positive, got {metaint}")
            if metaint > MAX_METAINT:
                raise IcyProtocolError(f"icy-metaint {metaint} unreasonably large")
        elif key == "icy-name":
            name = value
        elif key == "content-type":
            content_type = value
    return IcyHeaders(metaint=metaint, station_name=name, content_type=content_type)


def parse_stream_title(block: bytes) -> str | None:
    """Extract the StreamTitle value from a raw metadata block.

    Trailing zero padding is stripped; other keys are ignored.  A block
    without the key, or one too mangled to parse, yields None.
    """
    text = block.rstrip(b"\x00").decode("utf-8", errors="replace")
    if not text:
        return None
    start = text.find("StreamTitle='")
    if start < 0:
        logger.debug("metadata block without StreamTitle: %r", text)
        return None
    start += len("StreamTitle='")
    end = text.find("';", start)
    if end < 0:
        if text.endswith("'"):
            end = len(text) - 1
        else:
            logger.debug("unterminated StreamTitle in %r", text)
            return None
    return text[start:end]


_AUDIO, _LENGTH, _META = range(3)


class IcyDemuxer:
    """Incremental demuxer; feed() bytes in any chunking, then finish().

    With ``metaint=None`` everything is audio.  Title events are
    deduplicated: a block repeating the current title emits nothing.
    """

    def __init__(self, metaint: int | None):
        if metaint is not None and metaint < 1:
            raise IcyProtocolError(f"metaint must be positive, got {metaint}")
        self.metaint = metaint
        self._state = _AUDIO
        self._audio_left = metaint if metaint is not None else 0
        self._meta_left = 0
        self._meta_buf = bytearray()
        self._last_title: str | None = None

    def feed(self, data: bytes) -> list[IcyStreamEvent]:
        events: list[IcyStreamEvent] = []
        pos = 0
        n = len(data)
        if self.metaint is None:
            if n:
                events.append(AudioChunk(bytes(data)))
            return events
        while pos < n:
            if self._state == _AUDIO:
                take = min(self._audio_left, n - pos)
                if take:
                    events.append(AudioChunk(bytes(data[pos:pos + take])))
                    pos += take
                    self._audio_left -= take
                if self._audio_left == 0:
                    self._state = _LENGTH
            elif self._state == _LENGTH:
                length = data[pos] * 16
                pos += 1
                if length == 0:
                    self._state = _AUDIO
                    self._audio_left = self.metaint
                else:
                    self._state = _META
                    self._meta_left = length
                    self._meta_buf.clear()
            else:
                take = min(self._meta_left, n - pos)
                self._meta_buf += data[pos:pos + take]
                pos += take
                self._meta_left -= take
                if self._meta_left == 0:
                    title = parse_stream_title(bytes(self._meta_buf))
                    if title is not None and title != self._last_title:
                        self._last_title = title
                        events.append(TitleChange(title))
                    self._state = _AUDIO
                    self._audio_left = self.metaint
        return events

    def finish(self) -> list[IcyStreamEvent]:
        """Close the stream: clean end, or a truncated-metadata error."""
        if self._state == _META:
            return [TransportError("truncated metadata")]
        return [EndOfStream()]


def demux_icy(chunks: Iterable[bytes], metaint: int | None) -> Iterator[IcyStreamEvent]:
    """Demux an iterable of byte chunks into stream events."""
    demux = IcyDemuxer(metaint)
    for chunk in chunks:
        yield from demux.feed(chunk)
    yield from demux.finish()


def find_mp3_frame_syncs(data: bytes) -> list[int]:
    """Byte offsets of MP3 frame sync words (0xFF followed by top 3 bits set)."""
    if len(data) < 2:
        return []
    arr = np.frombuffer(data, dtype=np.uint8)
    mask = (arr[:-1] == 0xFF) & ((arr[1:] & 0xE0) == 0xE0)
    return [int(i) for i in np.nonzero(mask)[0]]
