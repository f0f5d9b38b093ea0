import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from beamradio.rfmodel import (AccessPoint, AntennaPattern, GeometryError,
                               PatternCsvError, RfEnvironment, ScanContext,
                               default_patterns, load_pattern_csv,
                               pattern_gain, received_power, scan)

ISO = AntennaPattern(antenna_id=0, gains=(0.0,) * 360)


def make_env(aps, **kw):
    return RfEnvironment(access_points=tuple(aps), **kw)


def ap(ssid="net", bssid=b"\x00\x00\x00\x00\x00\x01", pos=(10.0, 0.0), tx=20.0):
    return AccessPoint(ssid=ssid, bssid=bssid, position=pos, tx_power=tx)


class TestPatternGain:
    def test_default_pattern0_boresight(self):
        assert pattern_gain(default_patterns()[0], 0.0) == pytest.approx(2.0)

    def test_default_pattern0_null(self):
        assert pattern_gain(default_patterns()[0], 180.0) == pytest.approx(-38.0)

    def test_modulo_normalization(self):
        p = default_patterns()[2]
        assert pattern_gain(p, 725.0) == pattern_gain(p, 5.0)
        assert pattern_gain(p, -355.0) == pattern_gain(p, 5.0)

    def test_integer_degrees_hit_table_exactly(self):
        p = default_patterns()[1]
        for d in range(360):
            assert pattern_gain(p, float(d)) == p.gains[d]

    def test_interpolation_between_entries(self):
        p = AntennaPattern(0, tuple(float(i % 10) for i in range(360)))
        expected = 0.5 * (p.gains[4] + p.gains[5])
        assert pattern_gain(p, 4.5) == pytest.approx(expected)

    def test_wrap_359_to_0(self):
        gains = [0.0] * 360
        gains[359] = -10.0
        p = AntennaPattern(0, tuple(gains))
        assert pattern_gain(p, 359.5) == pytest.approx(-5.0)


class TestDefaultPatterns:
    def test_three_patterns_with_ids(self):
        ps = default_patterns()
        assert [p.antenna_id for p in ps] == [0, 1, 2]

    def test_null_placements(self):
        ps = default_patterns()
        argmin0 = min(range(360), key=lambda d: ps[0].gains[d])
        argmin1 = min(range(360), key=lambda d: ps[1].gains[d])
        assert argmin0 in (179, 180, 181)
        assert argmin1 in (359, 0, 1)

    def test_bridge_antenna_covers_both_nulls(self):
        p2 = default_patterns()[2]
        peak = max(p2.gains)
        # independently: 2 + 20 log10 cos(45 deg)
        expected = 2.0 + 20.0 * math.log10(math.cos(math.radians(45.0)))
        assert pattern_gain(p2, 0.0) == pytest.approx(expected)
        assert pattern_gain(p2, 0.0) >= peak - 5.0
        assert pattern_gain(p2, 180.0) >= peak - 5.0

    def test_null_complementarity_sweep(self):
        ps = default_patterns()
        peak = max(max(p.gains) for p in ps)
        for theta in range(360):
            best = max(pattern_gain(p, float(theta)) for p in ps)
            assert best >= peak - 5.0


class TestLoadPatternCsv:
    def test_constant_pattern(self):
        p = load_pattern_csv("0,2\n120,2\n240,2")
        assert all(g == pytest.approx(2.0) for g in p.gains)

    def test_midpoint_interpolation(self):
        p = load_pattern_csv("0,0\n180,-30\n90,-15")
        assert pattern_gain(p, 90.0) == pytest.approx(-15.0)

    def test_wrapping_interpolation(self):
        p = load_pattern_csv("0,0\n90,-10\n180,-30")
        # between 180 and 0 (wrapping through 360)
        assert pattern_gain(p, 270.0) == pytest.approx(-15.0)

    def test_malformed_row_reports_line(self):
        with pytest.raises(PatternCsvError) as err:
            load_pattern_csv("0,abc")
        assert err.value.line == 1

    def test_malformed_later_line(self):
        with pytest.raises(PatternCsvError) as err:
            load_pattern_csv("0,1\n90,1\nnot-a-row\n180,1")
        assert err.value.line == 3

    def test_too_few_rows(self):
        with pytest.raises(PatternCsvError):
            load_pattern_csv("0,2\n180,3")

    def test_blank_lines_skipped(self):
        p = load_pattern_csv("0,1\n\n120,1\n\n240,1\n")
        assert pattern_gain(p, 60.0) == pytest.approx(1.0)

    def test_excessive_dynamic_range_rejected(self):
        with pytest.raises(ValueError):
            load_pattern_csv("0,0\n120,-70\n240,0")


class TestReceivedPower:
    def test_boresight_ap(self):
        env = make_env([ap()])
        assert received_power(env, default_patterns()[0], env.access_points[0]) == -38

    def test_null_ap(self):
        env = make_env([ap()])
        assert received_power(env, default_patterns()[1], env.access_points[0]) == -78

    def test_reference_distance_isotropic(self):
        env = make_env([ap(pos=(1.0, 0.0), tx=0.0)])
        assert received_power(env, ISO, env.access_points[0]) == -40

    def test_orientation_shifts_bearing(self):
        # device rotated 90 deg: AP at +x sits at relative bearing -90
        env = make_env([ap()], device_orientation=90.0)
        p0 = default_patterns()[0]
        expected_gain = pattern_gain(p0, -90.0)
        raw = 20.0 + expected_gain - (40.2 + 20.0 * math.log10(10.0))
        assert received_power(env, p0, env.access_points[0]) == round(raw)

    def test_coincident_positions_rejected(self):
        env = make_env([ap(pos=(0.0, 0.0))])
        with pytest.raises(GeometryError):
            received_power(env, ISO, env.access_points[0])

    def test_sub_meter_distance_floored(self):
        env = make_env([ap(pos=(0.5, 0.0), tx=0.0)])
        assert received_power(env, ISO, env.access_points[0]) == -40

    def test_clamped_to_rssi_range(self):
        env = make_env([ap(pos=(10000.0, 0.0), tx=-20.0)], path_loss_exponent=4.0)
        assert received_power(env, ISO, env.access_points[0]) == -127

    def test_shadowing_fixed_per_link(self):
        env = make_env([ap()], shadowing_sigma=6.0, seed=42)
        first = received_power(env, ISO, env.access_points[0])
        for _ in range(5):
            assert received_power(env, ISO, env.access_points[0]) == first

    def test_scan_noise_varies_with_context(self):
        env = make_env([ap()], scan_noise_sigma=4.0, seed=42)
        ctx = ScanContext(env)
        values = {received_power(env, ISO, env.access_points[0], ctx) for _ in range(10)}
        assert len(values) > 1

    @given(st.floats(min_value=1.0, max_value=5000.0), st.floats(min_value=1.0, max_value=5000.0))
    def test_monotone_in_distance(self, d1, d2):
        near, far = sorted((d1, d2))
        env_near = make_env([ap(pos=(near, 0.0))])
        env_far = make_env([ap(pos=(far, 0.0))])
        p = default_patterns()[0]
        assert (received_power(env_near, p, env_near.access_points[0])
                >= received_power(env_far, p, env_far.access_points[0]))

    @settings(max_examples=50)
    @given(st.floats(min_value=-360.0, max_value=360.0),
           st.floats(min_value=2.0, max_value=200.0),
           st.floats(min_value=0.0, max_value=359.0))
    def test_rotation_covariance(self, delta, dist, bearing):
        b = math.radians(bearing)
        pos = (dist * math.cos(b), dist * math.sin(b))
        rotated_bearing = math.radians(bearing + delta)
        rotated = (dist * math.cos(rotated_bearing), dist * math.sin(rotated_bearing))
        p = default_patterns()[2]
        env = make_env([ap(pos=pos)], device_orientation=0.0)
        env_rot = make_env([ap(pos=rotated)], device_orientation=delta)
        assert (received_power(env, p, env.access_points[0])
                == received_power(env_rot, p, env_rot.access_points[0]))


class TestScan:
    def test_empty_environment(self):
        assert scan(make_env([]), ISO) == []

    def test_sorted_by_rssi_descending(self):
        near = ap(ssid="near", bssid=b"\x00\x00\x00\x00\x00\x02", pos=(10.0, 0.0))
        far = ap(ssid="far", bssid=b"\x00\x00\x00\x00\x00\x01", pos=(-10.0, 0.0))
        env = make_env([far, near])
        entries = scan(env, default_patterns()[0])
        assert [e.rssi for e in entries] == [-38, -78]
        assert [e.ssid for e in entries] == ["near", "far"]

    def test_ties_break_on_bssid(self):
        a = ap(ssid="a", bssid=b"\x00\x00\x00\x00\x00\x09", pos=(10.0, 0.0))
        b = ap(ssid="b", bssid=b"\x00\x00\x00\x00\x00\x01", pos=(0.0, 10.0))
        env = make_env([a, b])
        entries = scan(env, ISO)
        assert [e.ssid for e in entries] == ["b", "a"]

    def test_sensitivity_floor_omits_weak_ap(self):
        weak = ap(ssid="weak", pos=(10000.0, 0.0), tx=-10.0)
        env = make_env([weak])
        assert scan(env, ISO) == []

    def test_determinism_across_runs(self):
        aps = [ap(ssid=f"n{i}", bssid=bytes(5) + bytes([i + 1]), pos=(5.0 + i, 3.0 * i))
               for i in range(4)]
        env = make_env(aps, shadowing_sigma=5.0, scan_noise_sigma=2.0, seed=99)
        p = default_patterns()[1]
        assert scan(env, p) == scan(env, p)

    def test_scan_context_advances_noise(self):
        env = make_env([ap()], scan_noise_sigma=3.0, seed=11)
        ctx = ScanContext(env)
        p = default_patterns()[0]
        results = [scan(env, p, ctx)[0].rssi for _ in range(8)]
        assert len(set(results)) > 1


class TestInvariants:
    def test_pattern_needs_360_entries(self):
        with pytest.raises(ValueError):
            AntennaPattern(0, (0.0,) * 100)

    def test_ssid_length_limit(self):
        with pytest.raises(ValueError):
            AccessPoint(ssid="x" * 33, bssid=bytes(6), position=(1.0, 0.0), tx_power=0.0)

    def test_tx_power_range(self):
        with pytest.raises(ValueError):
            ap(tx=31.0)

    def test_duplicate_bssids_rejected(self):
        a = ap(ssid="a", bssid=bytes(6))
        b = ap(ssid="b", bssid=bytes(6), pos=(0.0, 5.0))
        with pytest.raises(ValueError):
            make_env([a, b])

    def test_path_loss_exponent_range(self):
        with pytest.raises(ValueError):
            make_env([], path_loss_exponent=1.0)
