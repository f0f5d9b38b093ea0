import logging

import pytest
from hypothesis import given
from hypothesis import strategies as st

from beamradio.rfmodel import ScanEntry
from beamradio.selector import (NoSignalError, SelectionFailedError,
                                SelectorConfig, SelectorState, best_antenna,
                                record_scan, run_selection)


def entry(ssid, rssi, bssid=b"\x00\x00\x00\x00\x00\x01"):
    return ScanEntry(ssid=ssid, bssid=bssid, rssi=rssi)


def brute_force_best(table):
    """Linear-scan oracle: (max value, first index achieving it)."""
    best_idx, best_val = None, None
    for i, v in enumerate(table):
        if v is not None and (best_val is None or v > best_val):
            best_idx, best_val = i, v
    return best_idx


rssi_values = st.one_of(st.none(), st.integers(min_value=-127, max_value=0))
tables = st.lists(rssi_values, min_size=1, max_size=8)


class TestRecordScan:
    def test_stores_matching_rssi(self):
        state = SelectorState.initial(3)
        result = record_scan(state, 1, [entry("mynet", -61), entry("other", -40)], "mynet")
        assert result.ant_rssi == (None, -61, None)

    def test_no_match_leaves_table(self):
        state = SelectorState.initial(3)
        result = record_scan(state, 0, [entry("other", -40)], "mynet")
        assert result.ant_rssi == (None, None, None)

    def test_max_wins_among_duplicate_ssids(self):
        state = SelectorState.initial(3)
        scan = [entry("mynet", -70, b"\x00\x00\x00\x00\x00\x01"),
                entry("mynet", -55, b"\x00\x00\x00\x00\x00\x02")]
        result = record_scan(state, 2, scan, "mynet")
        assert result.ant_rssi[2] == -55

    def test_exact_ssid_match_only(self):
        state = SelectorState.initial(2)
        result = record_scan(state, 0, [entry("mynet2", -30), entry("MYNET", -20)], "mynet")
        assert result.ant_rssi == (None, None)

    def test_idempotent_for_identical_scan(self):
        state = SelectorState.initial(3)
        scan = [entry("mynet", -61)]
        once = record_scan(state, 1, scan, "mynet")
        twice = record_scan(once, 1, scan, "mynet")
        assert once.ant_rssi == twice.ant_rssi

    def test_antenna_out_of_range(self):
        with pytest.raises(IndexError):
            record_scan(SelectorState.initial(3), 3, [], "mynet")


class TestBestAntenna:
    def test_strongest_wins(self):
        assert best_antenna([-70, -65, -58]) == 2

    def test_tie_to_lowest_index(self):
        assert best_antenna([-60, -60, -60]) == 0

    def test_only_candidate(self):
        assert best_antenna([None, -80, None]) == 1

    def test_all_absent(self):
        with pytest.raises(NoSignalError):
            best_antenna([None, None, None])

    @given(tables)
    def test_agrees_with_brute_force(self, table):
        if all(v is None for v in table):
            with pytest.raises(NoSignalError):
                best_antenna(table)
        else:
            assert best_antenna(table) == brute_force_best(table)

    @given(tables, st.integers(min_value=1, max_value=50),
           st.integers(min_value=-10, max_value=10))
    def test_argmax_invariance_under_affine(self, table, scale, shift):
        present = [v for v in table if v is not None]
        if not present:
            return
        transformed = [None if v is None else scale * v + shift for v in table]
        assert best_antenna(table) == best_antenna(transformed)

    @given(tables, st.randoms(use_true_random=False))
    def test_permutation_equivariance(self, table, rng):
        if all(v is None for v in table):
            return
        perm = list(range(len(table)))
        rng.shuffle(perm)
        permuted = [table[p] for p in perm]
        idx = best_antenna(permuted)
        assert permuted[idx] == max(v for v in table if v is not None)
        assert idx == brute_force_best(permuted)


class ScriptedScanner:
    """Returns queued scans per antenna, empty once exhausted."""

    def __init__(self, per_antenna):
        self.queues = {ant: list(scans) for ant, scans in per_antenna.items()}
        self.calls = []

    def __call__(self, antenna):
        self.calls.append(antenna)
        queue = self.queues.get(antenna, [])
        return queue.pop(0) if queue else []


class TestRunSelection:
    def config(self, **kw):
        return SelectorConfig(target_ssid="mynet", **kw)

    def test_straightforward_sweep(self):
        scanner = ScriptedScanner({
            0: [[entry("mynet", -38)]],
            1: [[entry("mynet", -78)]],
            2: [[entry("mynet", -52)]],
        })
        result = run_selection(scanner, self.config())
        assert result.best_antenna == 0
        assert result.ant_rssi == (-38, -78, -52)
        assert result.attempts == 3

    def test_retry_accounting(self):
        # antenna 0 never sees it, antenna 1 on 2nd try, antenna 2 never
        scanner = ScriptedScanner({
            0: [[], [], []],
            1: [[], [entry("mynet", -66)]],
            2: [[], [], []],
        })
        result = run_selection(scanner, self.config())
        assert result.best_antenna == 1
        assert result.attempts == 3 + 2 + 3

    def test_all_antennas_scanned_despite_strong_first(self):
        scanner = ScriptedScanner({
            0: [[entry("mynet", -20)]],
            1: [[entry("mynet", -90)]],
            2: [[entry("mynet", -90)]],
        })
        run_selection(scanner, self.config())
        assert sorted(set(scanner.calls)) == [0, 1, 2]

    def test_exhaustion_raises(self):
        scanner = ScriptedScanner({})
        with pytest.raises(SelectionFailedError) as err:
            run_selection(scanner, self.config())
        assert err.value.ant_rssi == (None, None, None)

    def test_early_exit_stops_retries(self):
        scanner = ScriptedScanner({
            0: [[entry("mynet", -50)], [entry("mynet", -10)]],
            1: [[entry("mynet", -60)]],
            2: [[entry("mynet", -70)]],
        })
        result = run_selection(scanner, self.config())
        # first sighting wins; the queued second scan is never issued
        assert result.ant_rssi[0] == -50
        assert result.attempts == 3

    def test_scan_log_line_format(self, caplog):
        scanner = ScriptedScanner({
            0: [[entry("mynet", -41)]],
            1: [[entry("mynet", -41)]],
            2: [[entry("mynet", -38)]],
        })
        with caplog.at_level(logging.INFO, logger="beamradio.selector"):
            run_selection(scanner, self.config())
        messages = [r.getMessage() for r in caplog.records]
        assert messages == ["rssi: -41", "rssi: -41", "rssi: -38", "best antenna: 3"]
