import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mmkpi.antenna import (
    AntennaConfig,
    aperture_gain_dbi,
    beamforming_gain_db,
    capped_combined_gain_dbi,
    hpbw_rad,
    required_antenna_count,
    split_antenna_count,
    tracking_area_rad2,
)
from mmkpi.constants import SPEED_OF_LIGHT
from mmkpi.errors import DomainError


@pytest.mark.parametrize("f_ghz, expected", [(10, 4), (28, 32), (38, 64), (73, 256)])
def test_required_antenna_count_table1(f_ghz, expected):
    assert required_antenna_count(f_ghz * 1e9, 10e9, 4) == expected


def test_required_antenna_count_below_base_rejected():
    with pytest.raises(DomainError):
        required_antenna_count(6e9, 10e9, 4)


def test_required_antenna_count_needs_power_of_two_base():
    with pytest.raises(DomainError):
        required_antenna_count(20e9, 10e9, 3)


@given(st.floats(min_value=10e9, max_value=100e9), st.sampled_from([1, 2, 4, 8, 16]))
def test_required_antenna_count_is_smallest_power_of_two(f, n_base):
    n = required_antenna_count(f, 10e9, n_base)
    need = n_base * (f / 10e9) ** 2
    assert n & (n - 1) == 0
    assert n >= need * (1 - 1e-12)
    assert n == n_base or n / 2 < need


@given(st.floats(10e9, 100e9), st.floats(10e9, 100e9))
def test_required_antenna_count_monotone(a, b):
    lo, hi = sorted((a, b))
    assert required_antenna_count(lo, 10e9, 4) <= required_antenna_count(hi, 10e9, 4)


@pytest.mark.parametrize("count, split", [(1, (1, 1)), (2, (2, 1)), (32, (8, 4)), (64, (8, 8)), (256, (16, 16))])
def test_split_antenna_count(count, split):
    assert split_antenna_count(count) == split


def test_beamforming_gain():
    assert beamforming_gain_db(1, 1) == 0.0
    assert beamforming_gain_db(8, 4) == pytest.approx(15.0515, abs=1e-4)
    assert beamforming_gain_db(16, 8) - beamforming_gain_db(8, 4) == pytest.approx(10 * math.log10(4))


def test_aperture_gain_unit():
    area = 1.0
    f = SPEED_OF_LIGHT / math.sqrt(4 * math.pi * area)
    assert aperture_gain_dbi(area, f) == pytest.approx(0.0, abs=1e-12)


def test_aperture_gain_hand_values():
    # lambda = c/f; G = 4*pi*A/lambda^2
    for f, hand in [(6e9, 27.0185), (20e9, 37.4761)]:
        lam = SPEED_OF_LIGHT / f
        assert 10 * math.log10(4 * math.pi * 0.1 / lam**2) == pytest.approx(hand, abs=1e-4)
        assert aperture_gain_dbi(0.1, f) == pytest.approx(hand, abs=1e-4)


@given(st.floats(1e8, 1e11))
def test_aperture_gain_doubling_frequency(f):
    assert abs(aperture_gain_dbi(0.1, 2 * f) - aperture_gain_dbi(0.1, f) - 20 * math.log10(2)) < 1e-9


def test_capped_gain_saturates():
    cfg = AntennaConfig(gain_model="aperture", combined_gain_cap_dbi=50.0)
    assert capped_combined_gain_dbi(cfg, 100e9) == 50.0


def test_capped_gain_below_cap_is_identity():
    cfg = AntennaConfig(n_h=100, n_v=100, combined_gain_cap_dbi=50.0)
    assert capped_combined_gain_dbi(cfg, 28e9) == pytest.approx(40.0)


def test_capped_gain_monotone_then_constant():
    cfg = AntennaConfig(gain_model="aperture", rx_gain_dbi=12.5)
    f = np.linspace(6e9, 100e9, 400)
    g = capped_combined_gain_dbi(cfg, f)
    assert np.all(np.diff(g) >= 0)
    assert np.all(g[f >= 20.01e9] == 50.0)
    assert np.all(g[f < 20e9] < 50.0)


def test_antenna_config_invariants():
    with pytest.raises(DomainError):
        AntennaConfig(n_h=0)
    with pytest.raises(DomainError):
        AntennaConfig(aperture_area_m2=0.0)
    with pytest.raises(DomainError):
        AntennaConfig(combined_gain_cap_dbi=0.0)


def test_hpbw():
    assert hpbw_rad(1.0, 1) == 1.0
    assert hpbw_rad(1.0, 32) == 0.03125
    assert hpbw_rad(0.9, 16) == pytest.approx(hpbw_rad(0.9, 8) / 2)


@given(st.integers(0, 5), st.integers(0, 5), st.floats(0.1, 3.0))
def test_tracking_area_scales_inverse_with_elements(kh, kv, k):
    cfg = AntennaConfig(n_h=2**kh, n_v=2**kv, hpbw_constant_k=k)
    assert tracking_area_rad2(cfg) == pytest.approx(k**2 / cfg.element_count)
