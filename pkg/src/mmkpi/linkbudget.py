"""Received power, thermal noise, SINR and Shannon rate.

Everything is kept in the log domain (dBm/dB) except the final rate.
Interference that is absent is represented by ``-inf`` dBm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from mmkpi.constants import BOLTZMANN, T0_KELVIN
from mmkpi.errors import DomainError

MM_WAVE_RANGE_HZ = (6e9, 100e9)
NO_INTERFERENCE = -math.inf


@dataclass(frozen=True)
class CarrierConfig:
    frequency_hz: float
    bandwidth_hz: float
    tx_power_dbm: float = 30.0
    eirp_dbm: float | None = None
    noise_figure_db: float = 0.0
    temperature_k: float = T0_KELVIN
    utilization_rho: float = 1.0

    def __post_init__(self):
        lo, hi = MM_WAVE_RANGE_HZ
        if not lo <= self.frequency_hz <= hi:
            raise DomainError(f"frequency_hz={self.frequency_hz:g} outside [6, 100] GHz")
        if not self.bandwidth_hz > 0:
            raise DomainError("bandwidth_hz must be positive")
        if self.noise_figure_db < 0:
            raise DomainError("noise_figure_db must be >= 0")
        if not self.temperature_k > 0:
            raise DomainError("temperature_k must be positive")
        if not 0 < self.utilization_rho <= 1:
            raise DomainError("utilization_rho must lie in (0, 1]")


@dataclass(frozen=True)
class LinkSample:
    distance_m: float
    path_loss_db: float
    shadow_db: float
    gain_db: float
    signal_dbm: float
    noise_dbm: float
    interference_dbm: float
    sinr_db: float
    rate_bps: float


def db_to_linear(x_db):
    return np.power(10.0, np.asarray(x_db, dtype=float) / 10.0)


def linear_to_db(x):
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(np.asarray(x, dtype=float))


def thermal_noise_dbm(bandwidth_hz, temperature_k: float = T0_KELVIN, noise_figure_db: float = 0.0):
    """kTB noise power in dBm plus receiver noise figure."""
    b = np.asarray(bandwidth_hz, dtype=float)
    if np.any(b <= 0) or not temperature_k > 0:
        raise DomainError("bandwidth and temperature must be positive")
    out = 10.0 * np.log10(BOLTZMANN * temperature_k * b * 1000.0) + noise_figure_db
    return out[()] if out.ndim == 0 else out


def received_signal_dbm(tx_power_dbm, combined_gain_db, path_loss_db):
    return tx_power_dbm + combined_gain_db - path_loss_db


def sinr_db(signal_dbm, noise_dbm, interference_dbm=None):
    """signal - 10*log10(N + I) with powers summed in linear units."""
    if interference_dbm is None:
        return signal_dbm - noise_dbm
    i = np.asarray(interference_dbm, dtype=float)
    summed = linear_to_db(db_to_linear(noise_dbm) + db_to_linear(i))
    # keep the no-interference case exact rather than going through linear units
    denom = np.where(np.isneginf(i), noise_dbm, summed)
    out = np.asarray(signal_dbm, dtype=float) - denom
    return out[()] if out.ndim == 0 else out


def shannon_rate_bps(bandwidth_hz, sinr_db_value, utilization_rho: float = 1.0):
    """rho * B * log2(1 + SINR)."""
    if not 0 < utilization_rho <= 1:
        raise DomainError("utilization_rho must lie in (0, 1]")
    b = np.asarray(bandwidth_hz, dtype=float)
    if np.any(b <= 0):
        raise DomainError("bandwidth must be positive")
    out = utilization_rho * b * np.log2(1.0 + db_to_linear(sinr_db_value))
    return out[()] if out.ndim == 0 else out
