"""Antenna-count scaling, array and aperture gain, half-power beamwidth."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from mmkpi.constants import SPEED_OF_LIGHT
from mmkpi.errors import DomainError


class GainModel(str, enum.Enum):
    # TX gain 10*log10(n_h*n_v)
    ARRAY = "array"
    # TX gain 4*pi*A*f^2/c^2 for a constant physical aperture
    APERTURE = "aperture"


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class AntennaConfig:
    """Planar array description plus the combined TX+RX gain budget.

    The receive side contributes a flat ``rx_gain_dbi``; the cap applies to the
    sum of transmit and receive gain.
    """

    n_h: int = 1
    n_v: int = 1
    aperture_area_m2: float = 0.1
    combined_gain_cap_dbi: float = 50.0
    hpbw_constant_k: float = 1.0
    gain_model: GainModel = GainModel.ARRAY
    rx_gain_dbi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "gain_model", GainModel(self.gain_model))
        if self.n_h < 1 or self.n_v < 1:
            raise DomainError("n_h and n_v must be >= 1")
        if not self.aperture_area_m2 > 0:
            raise DomainError("aperture_area_m2 must be positive")
        if not self.combined_gain_cap_dbi > 0:
            raise DomainError("combined_gain_cap_dbi must be positive")
        if not self.hpbw_constant_k > 0:
            raise DomainError("hpbw_constant_k must be positive")

    @property
    def element_count(self) -> int:
        return self.n_h * self.n_v

    @classmethod
    def with_count(cls, count: int, **kwargs) -> AntennaConfig:
        n_h, n_v = split_antenna_count(count)
        return cls(n_h=n_h, n_v=n_v, **kwargs)


def required_antenna_count(f_hz: float, f_base_hz: float, n_base: int) -> int:
    """Smallest power of two >= n_base * (f / f_base)^2.

    >>> required_antenna_count(73e9, 10e9, 4)
    256
    """
    if not f_base_hz > 0:
        raise DomainError("f_base_hz must be positive")
    if f_hz < f_base_hz:
        raise DomainError(f"f_hz={f_hz} is below the base frequency {f_base_hz}")
    if not _is_power_of_two(int(n_base)) or int(n_base) != n_base:
        raise DomainError(f"n_base must be a power of two, got {n_base}")
    need = n_base * (f_hz / f_base_hz) ** 2
    n = int(n_base)
    # relative slack absorbs rounding in the ratio, e.g. f == f_base
    while n < need * (1.0 - 1e-12):
        n *= 2
    return n


def split_antenna_count(count: int) -> tuple[int, int]:
    """Split a power-of-two element count into (n_h, n_v) with n_h >= n_v."""
    if not _is_power_of_two(int(count)):
        raise DomainError(f"antenna count must be a power of two, got {count}")
    k = int(count).bit_length() - 1
    return 2 ** ((k + 1) // 2), 2 ** (k // 2)


def beamforming_gain_db(n_h: int, n_v: int) -> float:
    if n_h < 1 or n_v < 1:
        raise DomainError("n_h and n_v must be >= 1")
    return 10.0 * math.log10(n_h * n_v)


def aperture_gain_dbi(area_m2: float, f_hz):
    """Gain of a constant-area aperture, 10*log10(4*pi*A*f^2/c^2)."""
    f = np.asarray(f_hz, dtype=float)
    if not area_m2 > 0 or np.any(f <= 0):
        raise DomainError("area and frequency must be positive")
    out = 10.0 * np.log10(4.0 * np.pi * area_m2 * f**2 / SPEED_OF_LIGHT**2)
    return out[()] if out.ndim == 0 else out


def uncapped_combined_gain_dbi(config: AntennaConfig, f_hz):
    if config.gain_model is GainModel.APERTURE:
        tx = np.asarray(aperture_gain_dbi(config.aperture_area_m2, f_hz))
    else:
        tx = np.full(np.shape(f_hz), beamforming_gain_db(config.n_h, config.n_v))
    out = tx + config.rx_gain_dbi
    return out[()] if out.ndim == 0 else out


def capped_combined_gain_dbi(config: AntennaConfig, f_hz):
    """Combined TX+RX gain, saturated at ``combined_gain_cap_dbi``."""
    out = np.minimum(uncapped_combined_gain_dbi(config, f_hz), config.combined_gain_cap_dbi)
    return out[()] if np.ndim(out) == 0 else out


def hpbw_rad(k: float, n: int) -> float:
    if not k > 0 or n < 1:
        raise DomainError("k must be positive and n >= 1")
    return k / n


def tracking_area_rad2(config: AntennaConfig) -> float:
    """Product of horizontal and vertical beamwidths, k^2 / (n_h * n_v)."""
    k = config.hpbw_constant_k
    return hpbw_rad(k, config.n_h) * hpbw_rad(k, config.n_v)
