"""Switchable-antenna RF front end and Wi-Fi environment simulation.

Models a device with a handful of fixed directional antennas sitting in a
2-D plane of access points.  Received power follows a log-distance path
loss model plus the per-antenna azimuthal gain, optional log-normal
shadowing frozen per link, and optional per-measurement scan noise.  Every
random quantity is derived by hashing the environment seed, so identical
inputs reproduce identical scans on any platform.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from statistics import NormalDist
from typing import Iterable

import numpy as np

PEAK_GAIN_DBI = 2.0
# abs(cos) is clamped at 1e-2 before the log, i.e. the pattern floor sits
# 40 dB below the peak.
PATTERN_FLOOR = 1e-2
DEFAULT_BORESIGHTS = (0.0, 180.0, 90.0)

RSSI_MIN = -127
RSSI_MAX = 0

_U64 = 0xFFFFFFFFFFFFFFFF


class PatternCsvError(ValueError):
    """Malformed pattern CSV row; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class GeometryError(ValueError):
    """Device and access point closer than the model resolves (1 cm)."""


@dataclass(frozen=True)
class AntennaPattern:
    """Azimuthal gain table of one antenna, one dBi value per integer degree."""

    antenna_id: int
    gains: tuple[float, ...]

    def __post_init__(self):
        if len(self.gains) != 360:
            raise ValueError(f"pattern needs 360 gain entries, got {len(self.gains)}")
        if not all(math.isfinite(g) for g in self.gains):
            raise ValueError("pattern gains must all be finite")
        if max(self.gains) - min(self.gains) > 60.0:
            raise ValueError("pattern dynamic range exceeds 60 dB")

    def gain(self, theta: float) -> float:
        return pattern_gain(self, theta)


@dataclass(frozen=True)
class AccessPoint:
    """One Wi-Fi access point: identity, position and transmit power."""

    ssid: str
    bssid: bytes
    position: tuple[float, float]
    tx_power: float

    def __post_init__(self):
        if len(self.ssid.encode("utf-8")) > 32:
            raise ValueError("ssid longer than 32 bytes")
        if len(self.bssid) != 6:
            raise ValueError("bssid must be 6 bytes")
        if not -20.0 <= self.tx_power <= 30.0:
            raise ValueError("tx_power outside [-20, +30] dBm")


@dataclass(frozen=True)
class RfEnvironment:
    """Access points plus device pose and propagation constants.

    ``reference_loss`` is the path loss at 1 m (40.2 dB is free space at
    2.44 GHz) and ``path_loss_exponent`` the log-distance slope.  The two
    sigmas switch on per-link shadowing and per-measurement scan noise;
    both default to 0 for fully repeatable scans.
    """

    access_points: tuple[AccessPoint, ...]
    device_position: tuple[float, float] = (0.0, 0.0)
    device_orientation: float = 0.0
    path_loss_exponent: float = 2.0
    reference_loss: float = 40.2
    shadowing_sigma: float = 0.0
    scan_noise_sigma: float = 0.0
    seed: int = 0
    sensitivity_floor: float = -100.0

    def __post_init__(self):
        object.__setattr__(self, "access_points", tuple(self.access_points))
        if not 1.5 <= self.path_loss_exponent <= 6.0:
            raise ValueError("path_loss_exponent outside [1.5, 6.0]")
        if self.reference_loss <= 0:
            raise ValueError("reference_loss must be positive")
        if self.shadowing_sigma < 0 or self.scan_noise_sigma < 0:
            raise ValueError("sigmas must be non-negative")
        bssids = [ap.bssid for ap in self.access_points]
        if len(set(bssids)) != len(bssids):
            raise ValueError("duplicate bssid in environment")


@dataclass(frozen=True)
class ScanEntry:
    """One row of a scan result, RSSI in integer dBm."""

    ssid: str
    bssid: bytes
    rssi: int

    def __post_init__(self):
        if not RSSI_MIN <= self.rssi <= RSSI_MAX:
            raise ValueError(f"rssi {self.rssi} outside [{RSSI_MIN}, {RSSI_MAX}]")


@dataclass
class ScanContext:
    """Carries the scan-noise draw counter across consecutive scans.

    A fresh context restarts the noise sequence, which is what makes a
    single scan a pure function of (environment, antenna).  Reusing one
    context across retries gives each scan an independent draw.  Each
    thread should own its context.
    """

    env: RfEnvironment
    _noise_calls: int = field(default=0, repr=False)

    def next_noise(self) -> float:
        n = self._noise_calls
        self._noise_calls += 1
        if self.env.scan_noise_sigma == 0:
            return 0.0
        return _gaussian(self.env.seed, b"scan-noise", n.to_bytes(8, "little"),
                         self.env.scan_noise_sigma)


def _hash_unit(seed: int, tag: bytes, payload: bytes) -> float:
    """Uniform in (0, 1) derived from (seed, tag, payload)."""
    h = hashlib.blake2b(digest_size=8)
    h.update((seed & _U64).to_bytes(8, "little"))
    h.update(tag)
    h.update(payload)
    k = int.from_bytes(h.digest(), "little")
    return (k + 0.5) / 2.0 ** 64


def _gaussian(seed: int, tag: bytes, payload: bytes, sigma: float) -> float:
    if sigma == 0:
        return 0.0
    return NormalDist(0.0, sigma).inv_cdf(_hash_unit(seed, tag, payload))


def pattern_gain(pattern: AntennaPattern, theta: float) -> float:
    """Gain in dBi toward azimuth ``theta`` (degrees, any real value).

    The angle is normalized modulo 360 and the two adjacent integer-degree
    table entries are linearly interpolated, wrapping 359 -> 0.  At integer
    degrees this returns the stored entry exactly.
    """
    t = theta % 360.0
    if t >= 360.0:  # tiny negative inputs round up to exactly 360.0
        t = 0.0
    i0 = int(t)
    frac = t - i0
    if frac == 0.0:
        return pattern.gains[i0]
    i1 = (i0 + 1) % 360
    return pattern.gains[i0] * (1.0 - frac) + pattern.gains[i1] * frac


def _synthetic_gain(theta_deg: float, boresight_deg: float) -> float:
    c = abs(math.cos(math.radians((theta_deg - boresight_deg) / 2.0)))
    return PEAK_GAIN_DBI + 20.0 * math.log10(max(c, PATTERN_FLOOR))


def default_patterns() -> list[AntennaPattern]:
    """The three built-in complementary patterns.

    Cardioid-like shapes with boresights at 0, 180 and 90 degrees: antenna 0
    has its null at 180, antenna 1 at 0, and antenna 2 bridges both nulls so
    that some antenna is always within a few dB of the peak.
    """
    patterns = []
    for idx, bore in enumerate(DEFAULT_BORESIGHTS):
        gains = tuple(_synthetic_gain(d, bore) for d in range(360))
        patterns.append(AntennaPattern(antenna_id=idx, gains=gains))
    return patterns


def load_pattern_csv(text: str | Iterable[str], antenna_id: int = 0) -> AntennaPattern:
    """Build a pattern from ``angle_deg,gain_dbi`` rows.

    Angles may be sparse and in any order; the 360 integer-degree entries
    are filled by linear interpolation between the nearest provided angles,
    wrapping around 360.  At least 3 rows are required.
    """
    lines = text.splitlines() if isinstance(text, str) else list(text)
    anchors: dict[float, float] = {}
    for lineno, raw in enumerate(lines, start=1):
        row = raw.strip()
        if not row:
            continue
        parts = row.split(",")
        if len(parts) != 2:
            raise PatternCsvError("expected 'angle_deg,gain_dbi'", lineno)
        try:
            angle = float(parts[0])
            gain = float(parts[1])
        except ValueError:
            raise PatternCsvError(f"non-numeric field in {row!r}", lineno) from None
        if not (math.isfinite(angle) and math.isfinite(gain)):
            raise PatternCsvError("non-finite value", lineno)
        anchors[angle % 360.0] = gain
    if len(anchors) < 3:
        raise PatternCsvError(f"need at least 3 pattern rows, got {len(anchors)}")
    xp = np.array(sorted(anchors))
    fp = np.array([anchors[a] for a in sorted(anchors)])
    gains = np.interp(np.arange(360.0), xp, fp, period=360.0)
    return AntennaPattern(antenna_id=antenna_id, gains=tuple(float(g) for g in gains))


def parse_bssid(text: str) -> bytes:
    """Parse ``aa:bb:cc:dd:ee:ff`` into 6 raw bytes."""
    parts = text.split(":")
    if len(parts) != 6:
        raise ValueError(f"bad bssid {text!r}")
    try:
        return bytes(int(p, 16) for p in parts)
    except ValueError:
        raise ValueError(f"bad bssid {text!r}") from None


def format_bssid(bssid: bytes) -> str:
    return ":".join(f"{b:02x}" for b in bssid)


def received_power(env: RfEnvironment, pattern: AntennaPattern, ap: AccessPoint,
                   ctx: ScanContext | None = None) -> int:
    """Simulated RSSI of ``ap`` on ``pattern``, rounded to integer dBm.

    tx_power + gain(bearing) - [reference_loss + 10 n log10(d)] - shadowing
    + scan noise, with the distance floored at 1 m and the result clamped
    to [-127, 0].  Shadowing is a fixed function of (seed, bssid) so that
    per-antenna differences come from the patterns alone.
    """
    dx = ap.position[0] - env.device_position[0]
    dy = ap.position[1] - env.device_position[1]
    d = math.hypot(dx, dy)
    if d < 0.01:
        raise GeometryError("device and access point are closer than 1 cm")
    theta = math.degrees(math.atan2(dy, dx)) - env.device_orientation
    gain = pattern_gain(pattern, theta)
    path_loss = env.reference_loss + 10.0 * env.path_loss_exponent * math.log10(max(d, 1.0))
    shadow = _gaussian(env.seed, b"shadow", ap.bssid, env.shadowing_sigma)
    noise = ctx.next_noise() if ctx is not None else 0.0
    raw = ap.tx_power + gain - path_loss - shadow + noise
    return int(min(max(round(raw), RSSI_MIN), RSSI_MAX))


def scan(env: RfEnvironment, pattern: AntennaPattern,
         ctx: ScanContext | None = None) -> list[ScanEntry]:
    """One Wi-Fi scan through ``pattern``: every visible AP with its RSSI.

    Entries below the sensitivity floor are dropped; the rest are sorted by
    RSSI descending, ties by bssid.  With no context given, a fresh one is
    used, so identical (environment, antenna) inputs give identical scans.
    """
    if ctx is None:
        ctx = ScanContext(env)
    entries = []
    for ap in env.access_points:
        rssi = received_power(env, pattern, ap, ctx)
        if rssi < env.sensitivity_floor:
            continue
        entries.append(ScanEntry(ssid=ap.ssid, bssid=ap.bssid, rssi=rssi))
    entries.sort(key=lambda e: (-e.rssi, e.bssid))
    return entries
