"""Gateway configuration: one JSON file describing radio, environment and server.

The simulated environment is either inline (access points, pose,
propagation constants) with the built-in antenna patterns, or the patterns
come from CSV files referenced relative to the config file.  The access
point password is kept as a plain field for configuration parity; no real
association happens in simulation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .rfmodel import (AccessPoint, AntennaPattern, RfEnvironment,
                      default_patterns, load_pattern_csv, parse_bssid)


class ConfigError(ValueError):
    pass


@dataclass
class GatewayConfig:
    target_ssid: str
    environment: RfEnvironment
    patterns: list[AntennaPattern]
    listen_address: str = "127.0.0.1:8080"
    password: str = ""
    num_antennas: int = 3
    retries_per_antenna: int = 3
    presets_file: Path = Path("presets.tsv")
    audio_sink: str | tuple[str, Path] = "null"
    display_width: int = 16
    ui_dir: Path | None = None
    tick_interval: float = 0.25
    backoff_initial: float = 1.0

    def __post_init__(self):
        self.host, self.port = _split_listen_address(self.listen_address)
        if self.num_antennas != len(self.patterns):
            raise ConfigError(f"num_antennas is {self.num_antennas} but "
                              f"{len(self.patterns)} patterns are configured")
        if self.retries_per_antenna < 1:
            raise ConfigError("retries_per_antenna must be >= 1")
        if self.display_width < 1:
            raise ConfigError("display_width must be >= 1")


def _split_listen_address(address: str) -> tuple[str, int]:
    host, sep, port = address.rpartition(":")
    if not sep or not host:
        raise ConfigError(f"listen_address must be host:port, got {address!r}")
    try:
        port_num = int(port)
    except ValueError:
        raise ConfigError(f"bad port in listen_address {address!r}") from None
    if not 0 <= port_num <= 65535:
        raise ConfigError(f"port out of range in {address!r}")
    return host, port_num


def parse_environment(obj: dict) -> RfEnvironment:
    """Build an RfEnvironment from its JSON description."""
    try:
        aps = []
        for ap in obj.get("access_points", []):
            aps.append(AccessPoint(
                ssid=ap["ssid"],
                bssid=parse_bssid(ap["bssid"]),
                position=(float(ap["position"][0]), float(ap["position"][1])),
                tx_power=float(ap.get("tx_power", 20.0)),
            ))
        pos = obj.get("device_position", [0.0, 0.0])
        return RfEnvironment(
            access_points=tuple(aps),
            device_position=(float(pos[0]), float(pos[1])),
            device_orientation=float(obj.get("device_orientation", 0.0)),
            path_loss_exponent=float(obj.get("path_loss_exponent", 2.0)),
            reference_loss=float(obj.get("reference_loss", 40.2)),
            shadowing_sigma=float(obj.get("shadowing_sigma", 0.0)),
            scan_noise_sigma=float(obj.get("scan_noise_sigma", 0.0)),
            seed=int(obj.get("seed", 0)),
            sensitivity_floor=float(obj.get("sensitivity_floor", -100.0)),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"bad environment: {e}") from None


def _parse_sink(obj) -> str | tuple[str, Path]:
    if obj in (None, "null"):
        return "null"
    if isinstance(obj, dict) and "file" in obj:
        return ("file", Path(obj["file"]))
    raise ConfigError(f"audio_sink must be \"null\" or {{\"file\": path}}, got {obj!r}")


def load_config(path: str | Path) -> GatewayConfig:
    path = Path(path)
    try:
        raw = json.loads(path.read_text("utf-8"))
    except OSError as e:
        raise ConfigError(f"cannot read config: {e}") from None
    except json.JSONDecodeError as e:
        raise ConfigError(f"config is not valid JSON: {e}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    base = path.parent
    try:
        target_ssid = raw["target_ssid"]
    except KeyError:
        raise ConfigError("target_ssid is required") from None
    environment = parse_environment(raw.get("environment", {}))
    num_antennas = int(raw.get("num_antennas", 3))
    csvs = raw.get("pattern_csv")
    if csvs:
        patterns = []
        for idx, rel in enumerate(csvs):
            csv_path = base / rel
            try:
                patterns.append(load_pattern_csv(csv_path.read_text("utf-8"), antenna_id=idx))
            except OSError as e:
                raise ConfigError(f"cannot read pattern csv {rel!r}: {e}") from None
            except ValueError as e:
                raise ConfigError(f"pattern csv {rel!r}: {e}") from None
    else:
        patterns = default_patterns()[:num_antennas]
    presets = raw.get("presets_file", "presets.tsv")
    presets_path = Path(presets)
    if not presets_path.is_absolute():
        presets_path = base / presets_path
    ui_dir = raw.get("ui_dir")
    ui_path = None
    if ui_dir:
        ui_path = Path(ui_dir)
        if not ui_path.is_absolute():
            ui_path = base / ui_path
    sink = _parse_sink(raw.get("audio_sink"))
    if isinstance(sink, tuple) and not sink[1].is_absolute():
        sink = (sink[0], base / sink[1])
    try:
        return GatewayConfig(
            target_ssid=target_ssid,
            environment=environment,
            patterns=patterns,
            listen_address=raw.get("listen_address", "127.0.0.1:8080"),
            password=raw.get("password", ""),
            num_antennas=num_antennas,
            retries_per_antenna=int(raw.get("retries_per_antenna", 3)),
            presets_file=presets_path,
            audio_sink=sink,
            display_width=int(raw.get("display_width", 16)),
            ui_dir=ui_path,
            tick_interval=float(raw.get("tick_interval", 0.25)),
            backoff_initial=float(raw.get("backoff_initial", 1.0)),
        )
    except ValueError as e:
        raise ConfigError(str(e)) from None
