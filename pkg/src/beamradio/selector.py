"""Boot-time best-antenna selection from per-antenna Wi-Fi scans.

The boot sequence sweeps every antenna, scans, stores the RSSI of the one
target SSID into a per-antenna table and finally commits to the antenna
with the strongest reading.  RSSI is only available while scanning, never
on an established link, so this runs strictly before the radio starts.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, replace
from typing import Callable, Sequence

from .rfmodel import ScanEntry

logger = logging.getLogger(__name__)

# Placeholder for "never seen" when a plain integer is needed (display, CLI).
MISSING_RSSI = -127


class NoSignalError(RuntimeError):
    """best_antenna called with no RSSI recorded on any antenna."""


class SelectionFailedError(RuntimeError):
    """Target SSID not seen on any antenna after all retries."""

    def __init__(self, ant_rssi: tuple[int | None, ...]):
        super().__init__("target SSID not found on any antenna")
        self.ant_rssi = ant_rssi


class Phase(enum.Enum):
    SCANNING = "scanning"
    SELECTED = "selected"


@dataclass(frozen=True)
class SelectorConfig:
    target_ssid: str
    num_antennas: int = 3
    retries_per_antenna: int = 3
    missing_rssi_sentinel: int = MISSING_RSSI

    def __post_init__(self):
        if self.num_antennas < 1:
            raise ValueError("num_antennas must be >= 1")
        if self.retries_per_antenna < 1:
            raise ValueError("retries_per_antenna must be >= 1")


@dataclass(frozen=True)
class SelectorState:
    """The per-antenna RSSI table while the sweep is in progress."""

    ant_rssi: tuple[int | None, ...]
    current_antenna: int = 0
    phase: Phase = Phase.SCANNING

    def __post_init__(self):
        if not 0 <= self.current_antenna < len(self.ant_rssi):
            raise ValueError("current_antenna out of range")
        if self.phase is Phase.SELECTED and all(v is None for v in self.ant_rssi):
            raise ValueError("cannot be Selected with an empty table")

    @classmethod
    def initial(cls, num_antennas: int) -> "SelectorState":
        return cls(ant_rssi=(None,) * num_antennas)


@dataclass(frozen=True)
class SelectionResult:
    best_antenna: int
    ant_rssi: tuple[int | None, ...]
    attempts: int


def record_scan(state: SelectorState, antenna: int, entries: Sequence[ScanEntry],
                target_ssid: str) -> SelectorState:
    """Store the target SSID's RSSI from one scan into the table.

    Matching is exact on the SSID.  Several BSSIDs may share the target
    SSID; the strongest match wins.  Without a match the entry is left
    untouched.
    """
    if not 0 <= antenna < len(state.ant_rssi):
        raise IndexError(f"antenna {antenna} out of range")
    matches = [e.rssi for e in entries if e.ssid == target_ssid]
    if not matches:
        return replace(state, current_antenna=antenna)
    table = list(state.ant_rssi)
    table[antenna] = max(matches)
    return replace(state, ant_rssi=tuple(table), current_antenna=antenna)


def best_antenna(ant_rssi: Sequence[int | None]) -> int:
    """Index of the strongest recorded RSSI; ties go to the lowest index."""
    best_idx = None
    best_val = None
    for idx, val in enumerate(ant_rssi):
        if val is None:
            continue
        if best_val is None or val > best_val:
            best_idx, best_val = idx, val
    if best_idx is None:
        raise NoSignalError("no RSSI recorded on any antenna")
    return best_idx


def run_selection(scanner: Callable[[int], Sequence[ScanEntry]],
                  config: SelectorConfig) -> SelectionResult:
    """Sweep all antennas and pick the best one for the target SSID.

    ``scanner(antenna)`` performs one scan on the given antenna.  Each
    antenna gets up to ``retries_per_antenna`` scans, stopping early once
    the target is sighted; every antenna is measured even after an early
    strong result.  Raises SelectionFailedError when the SSID never shows.
    """
    state = SelectorState.initial(config.num_antennas)
    attempts = 0
    for antenna in range(config.num_antennas):
        for _ in range(config.retries_per_antenna):
            entries = scanner(antenna)
            attempts += 1
            state = record_scan(state, antenna, entries, config.target_ssid)
            if state.ant_rssi[antenna] is not None:
                logger.info("rssi: %d", state.ant_rssi[antenna])
                break
    try:
        best = best_antenna(state.ant_rssi)
    except NoSignalError:
        raise SelectionFailedError(state.ant_rssi) from None
    logger.info("best antenna: %d", best + 1)
    return SelectionResult(best_antenna=best, ant_rssi=state.ant_rssi, attempts=attempts)
