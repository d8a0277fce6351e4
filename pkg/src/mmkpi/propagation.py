"""Path-loss, shadowing and outdoor-to-indoor loss models.

All functions accept scalars or numpy arrays and broadcast like numpy ufuncs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from mmkpi.constants import SPEED_OF_LIGHT
from mmkpi.errors import DomainError

_FOUR_PI = 4.0 * np.pi


class PathLossKind(str, enum.Enum):
    FREE_SPACE = "FreeSpace"
    CLOSE_IN = "CloseIn"
    WINNER_URBAN = "WinnerUrban"


@dataclass(frozen=True)
class PathLossParams:
    """Parameters of one propagation model.

    ``intercept_offset_db`` is only read by the WinnerUrban kind: it shifts the
    free-space intercept at ``reference_distance_m`` so that a WINNER-II style
    ``A*log10(d) + B`` fit can be expressed in close-in form.
    """

    model_kind: PathLossKind = PathLossKind.CLOSE_IN
    exponent_n: float = 2.0
    shadow_sigma_db: float = 0.0
    reference_distance_m: float = 1.0
    intercept_offset_db: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "model_kind", PathLossKind(self.model_kind))
        if self.model_kind is PathLossKind.FREE_SPACE:
            object.__setattr__(self, "exponent_n", 2.0)
            object.__setattr__(self, "shadow_sigma_db", 0.0)
        if not 1.0 <= self.exponent_n <= 10.0:
            raise DomainError(f"exponent_n must lie in [1, 10], got {self.exponent_n}")
        if not 0.0 <= self.shadow_sigma_db <= 20.0:
            raise DomainError(f"shadow_sigma_db must lie in [0, 20], got {self.shadow_sigma_db}")
        if not self.reference_distance_m > 0:
            raise DomainError("reference_distance_m must be positive")


@dataclass(frozen=True)
class O2IParams:
    diffraction_loss_db: float = 0.0
    indoor_loss_per_m_db: float = 0.0
    body_loss_db: float = 0.0
    depth_range_m: tuple[float, float] = field(default=(0.5, 10.0))

    def __post_init__(self):
        object.__setattr__(self, "depth_range_m", tuple(float(x) for x in self.depth_range_m))
        for name in ("diffraction_loss_db", "indoor_loss_per_m_db", "body_loss_db"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be >= 0")
        lo, hi = self.depth_range_m
        if lo < 0 or not lo < hi:
            raise DomainError(f"depth_range_m must satisfy 0 <= lo < hi, got {self.depth_range_m}")


def fspl_db(frequency_hz, distance_m):
    """Free-space path loss 20*log10(4*pi*d*f/c) in dB."""
    f = np.asarray(frequency_hz, dtype=float)
    d = np.asarray(distance_m, dtype=float)
    if np.any(f <= 0) or np.any(d <= 0):
        raise DomainError("frequency and distance must be positive")
    out = 20.0 * np.log10(_FOUR_PI * d * f / SPEED_OF_LIGHT)
    return out[()] if out.ndim == 0 else out


def path_loss_db(params: PathLossParams, frequency_hz, distance_m, shadow_db=0.0):
    """Total path loss in dB, shadowing included.

    Raises DomainError below the model's reference distance.
    """
    d = np.asarray(distance_m, dtype=float)
    d0 = params.reference_distance_m
    if np.any(d < d0):
        raise DomainError(f"distance below reference distance {d0} m")
    if params.model_kind is PathLossKind.FREE_SPACE:
        return fspl_db(frequency_hz, d) + shadow_db
    out = fspl_db(frequency_hz, d0) + 10.0 * params.exponent_n * np.log10(d / d0) + shadow_db
    if params.model_kind is PathLossKind.WINNER_URBAN:
        out = out + params.intercept_offset_db
    return out


def o2i_excess_loss_db(params: O2IParams, indoor_depth_m):
    """Diffraction + linear indoor penetration + body loss."""
    depth = np.asarray(indoor_depth_m, dtype=float)
    if np.any(depth < 0):
        raise DomainError("indoor depth must be >= 0")
    out = params.diffraction_loss_db + params.indoor_loss_per_m_db * depth + params.body_loss_db
    return out[()] if np.ndim(out) == 0 else out


def sample_shadowing_db(sigma_db: float, rng: np.random.Generator, size=None):
    """Zero-mean Gaussian shadowing in dB drawn from ``rng``."""
    if sigma_db < 0:
        raise DomainError("sigma_db must be >= 0")
    # scale a standard normal so the stream advances the same way for any sigma
    z = rng.standard_normal(size)
    if size is None:
        return float(z) * sigma_db
    return z * sigma_db
