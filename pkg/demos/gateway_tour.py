"""Boot the full gateway against a mock station and drive it over HTTP.

Shows the whole loop: antenna selection, stream start, the status API,
the emulated scrolling display, and a preset change restarting the
stream session.
"""

import json
import tempfile
import time
import urllib.request
from pathlib import Path

from beamradio import (Gateway, PresetStore, load_config, save_store,
                       serve_mock_stream)

audio = bytes((i * 31 + 5) % 256 for i in range(640_000))
server = serve_mock_stream(audio, 16000, [(0, "Gateway Groove")], throttle=0.02)

workdir = Path(tempfile.mkdtemp(prefix="beamradio-demo-"))
config_path = workdir / "gateway.json"
config_path.write_text(json.dumps({
    "target_ssid": "mynet",
    "listen_address": "127.0.0.1:0",
    "presets_file": "presets.tsv",
    "audio_sink": {"file": "received.mp3"},
    "tick_interval": 0.2,
    "environment": {
        "access_points": [
            {"ssid": "mynet", "bssid": "aa:bb:cc:dd:ee:ff",
             "position": [0.0, 10.0], "tx_power": 20.0},
            {"ssid": "neighbor", "bssid": "11:22:33:44:55:66",
             "position": [-25.0, 5.0], "tx_power": 15.0},
        ],
        "seed": 42,
    },
}))
store = PresetStore(slots=(server.url,) + (None,) * 9, current=0)
(workdir / "presets.tsv").write_bytes(save_store(store))

gateway = Gateway(load_config(config_path)).boot()
base = gateway.base_url
print(f"gateway at {base}\n")


def get(path):
    with urllib.request.urlopen(base + path, timeout=5) as resp:
        return resp.read().decode()


time.sleep(1.0)
status = json.loads(get("/api/status"))
print(f"phase {status['phase']!r}, best antenna index {status['best_antenna']} "
      f"({status['antenna_color']}), table {status['ant_rssi']}")
print(f"now playing: {status['stream_title']!r} from {status['station_url']}")

print("\nthe 3-line display (status / station URL / own address):")
for _ in range(4):
    for line in json.loads(get("/api/status"))["display"]:
        print(f"  [{line}]")
    print()
    time.sleep(0.5)

print("adding a second preset and switching to it:")
print(get("/3+http://beatles.purestream.net/beatles.mp3"))
print(get("/"))

gateway.shutdown()
server.stop()
sink_file = workdir / "received.mp3"
print(f"audio captured to {sink_file} ({sink_file.stat().st_size} bytes)")
