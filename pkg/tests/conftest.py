from dataclasses import replace

import pytest

from mmkpi.antenna import AntennaConfig
from mmkpi.linkbudget import CarrierConfig
from mmkpi.propagation import O2IParams, PathLossKind, PathLossParams
from mmkpi.simulator import Scenario


@pytest.fixture
def small_scenario() -> Scenario:
    """Coverage-style scenario, cheap enough for per-test simulation."""
    return Scenario(
        strand=2,
        carrier=CarrierConfig(frequency_hz=28e9, bandwidth_hz=400e6, tx_power_dbm=10.0, noise_figure_db=7.0),
        antenna=AntennaConfig.with_count(32),
        pathloss=PathLossParams(PathLossKind.CLOSE_IN, 3.4, 9.7),
        cell_radius_m=100.0,
        ring_count=2,
        users_per_cell=10,
        drops=20,
        seed=1234,
    )


@pytest.fixture
def indoor_scenario(small_scenario) -> Scenario:
    return replace(
        small_scenario,
        antenna=AntennaConfig(gain_model="aperture", rx_gain_dbi=12.5),
        pathloss=PathLossParams(PathLossKind.FREE_SPACE),
        o2i=O2IParams(10.0, 0.5, 3.0),
        user_placement="IndoorBorder",
        interference_mode="None",
    )
