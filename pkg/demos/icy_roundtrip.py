"""Serve a synthetic ICY stream, demux it back, and verify byte accounting.

A local mock station interleaves metadata blocks into a pseudo-MP3
payload; the stream client strips them back out.  What reaches the sink
must equal the original audio bytes exactly, with the scheduled titles
surfacing as events.
"""

import random
import time

from beamradio import (BufferSink, EndOfStream, TitleChange,
                       find_mp3_frame_syncs, play, serve_mock_stream)

rng = random.Random(2024)

# pseudo audio with a sprinkling of MP3 frame syncs
audio = bytearray(rng.randbytes(160_000))
for off in range(0, len(audio) - 1, 20_000):
    audio[off], audio[off + 1] = 0xFF, 0xFB
audio = bytes(audio)

titles = [(0, "First Song"), (80_000, "Second Song")]

server = serve_mock_stream(audio, metaint=16000, titles=titles,
                           chunk_jitter_seed=7)
print(f"mock station at {server.url} (metaint 16000)")

events = []
sink = BufferSink()
session = play(server.url, sink, events.append, reconnect=False)
while not any(isinstance(e, EndOfStream) for e in events):
    time.sleep(0.05)
session.stop()
server.stop()

received = sink.getvalue()
print(f"received {len(received)} audio bytes; "
      f"byte-identical to source: {received == audio}")
print("titles observed:", [e.title for e in events if isinstance(e, TitleChange)])

syncs = find_mp3_frame_syncs(received)
print(f"MP3 frame syncs found: {len(syncs)} (first few at {syncs[:4]})")
