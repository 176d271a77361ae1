import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from overlayselect import power
from overlayselect.errors import DomainError, StructuralError, ValidationError
from overlayselect.power import (
    BatteryProfile,
    CalibrationConstants,
    PowerStateProfile,
    battery_level_factor,
    interface_consumption,
    mean_consumption,
    power_rank,
    umts_tx_power_at_distance,
)


def wlan_profile(powers=(1000, 800, 400, 50), probs=(0.25,) * 4, T=1.0):
    return PowerStateProfile(power.WLAN_STATES, powers, probs, T)


def test_mean_consumption_examples():
    assert mean_consumption(wlan_profile()) == pytest.approx(562.5)
    assert mean_consumption(wlan_profile(probs=(1, 0, 0, 0))) == 1000
    assert mean_consumption(wlan_profile((7, 7, 7, 7), (0.1, 0.2, 0.3, 0.4), 10)) == pytest.approx(70)


def test_profile_validation():
    with pytest.raises(StructuralError):
        PowerStateProfile(("a", "b"), (1,), (1.0,))
    with pytest.raises(ValidationError):
        wlan_profile(probs=(0.3, 0.3, 0.3, 0.3))
    with pytest.raises(ValidationError):
        wlan_profile(powers=(-1, 1, 1, 1))
    # within tolerance
    wlan_profile(probs=(0.25, 0.25, 0.25, 0.25 + 5e-10))


@given(
    st.lists(st.floats(0, 5000), min_size=4, max_size=4),
    st.floats(0.1, 100),
    st.floats(0.1, 10),
)
def test_mean_consumption_linear(powers, T, scale):
    probs = (0.1, 0.2, 0.3, 0.4)
    base = mean_consumption(wlan_profile(powers, probs, T))
    assert mean_consumption(wlan_profile(powers, probs, T * scale)) == pytest.approx(base * scale, rel=1e-9, abs=1e-9)
    scaled = [p * scale for p in powers]
    assert mean_consumption(wlan_profile(scaled, probs, T)) == pytest.approx(base * scale, rel=1e-9, abs=1e-9)


def test_tx_power_normalisation(cfg, umts):
    calib = cfg.calibration
    p0 = calib.tx_power_ref
    d_ref = calib.ref_distance
    assert umts_tx_power_at_distance(d_ref, calib, umts.path_model) == pytest.approx(p0, rel=1e-12)
    # macrocell slope with h_b = 100 m is 44.9 - 13.1 = 31.8 dB/decade
    assert umts.path_model.distance_slope == pytest.approx(31.8)
    assert umts_tx_power_at_distance(2 * d_ref, calib, umts.path_model) == pytest.approx(
        9.0630710823663889 * p0, rel=1e-12
    )
    with pytest.raises(DomainError):
        umts_tx_power_at_distance(0, calib, umts.path_model)


@given(st.floats(1, 20000), st.floats(1, 20000))
def test_tx_power_monotone(d1, d2):
    from overlayselect import config

    cfg = config.load()
    m = cfg.interface("UMTS").path_model
    if d1 == d2:
        return
    lo, hi = sorted((d1, d2))
    assert umts_tx_power_at_distance(lo, cfg.calibration, m) < umts_tx_power_at_distance(hi, cfg.calibration, m)


def test_wlan_consumption_constant(cfg, wlan):
    expected = mean_consumption(wlan.power_profile)
    for d in (1, 100, 920, 5000):
        assert interface_consumption(wlan, d, cfg.calibration) == expected


def test_umts_consumption_crossover(cfg, umts, wlan):
    c_w = interface_consumption(wlan, 920, cfg.calibration)
    c_u = interface_consumption(umts, 920, cfg.calibration)
    assert abs(c_u - c_w) / c_w < 0.01
    assert interface_consumption(umts, 100, cfg.calibration) < c_w


def _bisect_root(fn, lo, hi, iters=200):
    # independent of scipy: plain bisection
    f_lo = fn(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if (fn(mid) > 0) == (f_lo > 0):
            lo, f_lo = mid, fn(mid)
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_consumption_crossover_by_bisection(cfg, umts, wlan):
    gap = lambda d: interface_consumption(umts, d, cfg.calibration) - interface_consumption(
        wlan, d, cfg.calibration
    )
    root = _bisect_root(gap, 10.0, 5000.0)
    assert root == pytest.approx(920.0, abs=1e-6)


def test_single_consumption_crossover(cfg, umts, wlan):
    ds = [float(d) for d in range(1, 5001)]
    signs = [
        interface_consumption(umts, d, cfg.calibration) > interface_consumption(wlan, d, cfg.calibration)
        for d in ds
    ]
    assert sum(a != b for a, b in zip(signs, signs[1:])) == 1


@pytest.mark.parametrize("d, order", [(100, ["UMTS", "WLAN"]), (1500, ["WLAN", "UMTS"])])
def test_power_rank(cfg, d, order):
    ranks = power_rank(cfg.interfaces, d, cfg.calibration)
    assert sorted(ranks.ranks, key=ranks.ranks.get) == order


def test_power_rank_single_and_empty(cfg, umts):
    assert power_rank([umts], 500, cfg.calibration).ranks == {"UMTS": 1}
    with pytest.raises(DomainError):
        power_rank([], 500, cfg.calibration)


def test_power_rank_brute_force(cfg, umts, wlan):
    rng = random.Random(7)
    from dataclasses import replace

    for _ in range(200):
        ifaces = []
        for k in range(rng.randint(1, 5)):
            base = rng.choice([umts, wlan])
            prof = base.power_profile
            powers = tuple(rng.choice([100.0, 200.0, 300.0]) for _ in prof.states)
            ifaces.append(replace(base, id=f"if{k}", power_profile=replace(prof, state_powers=powers)))
        d = rng.uniform(50, 3000)
        ranks = power_rank(ifaces, d, cfg.calibration).ranks
        cons = {i.id: interface_consumption(i, d, cfg.calibration) for i in ifaces}
        expected = sorted(cons, key=lambda i: (cons[i], i))
        assert sorted(ranks.values()) == list(range(1, len(ifaces) + 1))
        assert [i for i, _ in sorted(ranks.items(), key=lambda kv: kv[1])] == expected
        assert cons[expected[0]] == min(cons.values())


def test_battery_level_factor():
    assert battery_level_factor(BatteryProfile(0.8, 0.2), 2) == 1
    assert battery_level_factor(BatteryProfile(0.1, 0.2), 2) == 2
    assert battery_level_factor(BatteryProfile(0.2, 0.2), 3) == 3
    with pytest.raises(DomainError):
        battery_level_factor(BatteryProfile(0.1, 0.2), 0)


@given(st.floats(0.01, 0.99), st.integers(1, 50))
def test_sufficient_battery_ignores_rank(threshold, k):
    level = threshold + 0.5 * (1 - threshold)
    assert battery_level_factor(BatteryProfile(level, threshold), k) == 1


def test_battery_validation():
    with pytest.raises(ValidationError):
        BatteryProfile(1.2, 0.2)
    with pytest.raises(ValidationError):
        BatteryProfile(0.5, 0.0)


def test_calibration_validation():
    with pytest.raises(ValidationError):
        CalibrationConstants(0.0, 1000, 1000)
