import json
import time
import urllib.error
import urllib.request

import pytest

from beamradio.config import load_config


def wait_until(predicate, timeout=10.0, interval=0.02, message="condition"):
    deadline = time.monotonic() + timeout
    while time.monotonic() < deadline:
        result = predicate()
        if result:
            return result
        time.sleep(interval)
    raise AssertionError(f"timed out waiting for {message}")


def http_get(url, timeout=5.0):
    """GET returning (status, body text); 4xx/5xx do not raise."""
    try:
        with urllib.request.urlopen(url, timeout=timeout) as resp:
            return resp.status, resp.read().decode("utf-8")
    except urllib.error.HTTPError as e:
        return e.code, e.read().decode("utf-8")


def http_post(url, timeout=5.0):
    request = urllib.request.Request(url, method="POST", data=b"")
    try:
        with urllib.request.urlopen(request, timeout=timeout) as resp:
            return resp.status, resp.read().decode("utf-8")
    except urllib.error.HTTPError as e:
        return e.code, e.read().decode("utf-8")


@pytest.fixture
def gateway_config_factory(tmp_path):
    """Writes a gateway config JSON and loads it; AP sits at bearing 90."""

    def factory(**overrides):
        config = {
            "target_ssid": "mynet",
            "listen_address": "127.0.0.1:0",
            "num_antennas": 3,
            "retries_per_antenna": 3,
            "presets_file": "presets.tsv",
            "audio_sink": "null",
            "display_width": 16,
            "tick_interval": 0.05,
            "backoff_initial": 0.05,
            "environment": {
                "access_points": [
                    {"ssid": "mynet", "bssid": "aa:bb:cc:dd:ee:ff",
                     "position": [0.0, 10.0], "tx_power": 20.0},
                ],
                "device_position": [0.0, 0.0],
                "device_orientation": 0.0,
                "path_loss_exponent": 2.0,
                "reference_loss": 40.2,
                "seed": 1,
            },
        }
        config.update(overrides)
        path = tmp_path / "gateway.json"
        path.write_text(json.dumps(config))
        return load_config(path)

    return factory
