"""Hexagonal multi-cell deployment with Monte-Carlo user drops.

Every drop draws from its own random substreams, derived from
``(seed, drop_index)``, so drops can be evaluated in any order or in parallel
without changing the result. User positions are drawn in units of the cell
radius and then scaled, which keeps the random numbers common across radii.
"""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from mmkpi.antenna import AntennaConfig, capped_combined_gain_dbi
from mmkpi.errors import DomainError
from mmkpi.linkbudget import (
    NO_INTERFERENCE,
    CarrierConfig,
    LinkSample,
    db_to_linear,
    linear_to_db,
    shannon_rate_bps,
    sinr_db,
    thermal_noise_dbm,
)
from mmkpi.propagation import O2IParams, PathLossParams, o2i_excess_loss_db, path_loss_db
from mmkpi.strand import Strand

_PLACEMENT_STREAM = 0
_SHADOW_STREAM = 1


class UserPlacement(str, enum.Enum):
    CELL_EDGE_ANNULUS = "CellEdgeAnnulus"
    INDOOR_BORDER = "IndoorBorder"
    UNIFORM_AREA = "UniformArea"


class InterferenceMode(str, enum.Enum):
    FULL = "Full"
    NONE = "None"


@dataclass(frozen=True)
class Scenario:
    strand: Strand
    carrier: CarrierConfig
    antenna: AntennaConfig
    pathloss: PathLossParams
    cell_radius_m: float
    o2i: O2IParams | None = None
    ring_count: int = 2
    users_per_cell: int = 10
    drops: int = 200
    seed: int = 0
    user_placement: UserPlacement = UserPlacement.CELL_EDGE_ANNULUS
    interference_mode: InterferenceMode = InterferenceMode.FULL
    edge_annulus_fraction: float = 0.95
    # gain an interfering site presents towards a user it is not serving
    interferer_gain_db: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "strand", Strand.parse(self.strand))
        object.__setattr__(self, "user_placement", UserPlacement(self.user_placement))
        object.__setattr__(self, "interference_mode", InterferenceMode(self.interference_mode))
        if not self.cell_radius_m > 0:
            raise DomainError("cell_radius_m must be positive")
        if self.ring_count < 0:
            raise DomainError("ring_count must be >= 0")
        if self.drops < 1:
            raise DomainError("drops must be >= 1")
        if self.users_per_cell < 1:
            raise DomainError("users_per_cell must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a non-negative 64-bit integer")
        if not 0 <= self.edge_annulus_fraction <= 1:
            raise DomainError("edge_annulus_fraction must lie in [0, 1]")
        if self.user_placement is UserPlacement.INDOOR_BORDER and self.o2i is None:
            raise DomainError("IndoorBorder placement needs o2i parameters")


@dataclass(frozen=True, eq=False)
class RateCdf:
    sorted_rates_bps: np.ndarray

    @classmethod
    def from_samples(cls, rates) -> RateCdf:
        arr = np.sort(np.asarray(rates, dtype=float), kind="stable")
        if arr.size == 0:
            raise DomainError("a rate CDF needs at least one sample")
        arr.setflags(write=False)
        return cls(arr)

    @property
    def sample_count(self) -> int:
        return int(self.sorted_rates_bps.size)

    def mean(self) -> float:
        return float(np.mean(self.sorted_rates_bps))

    def percentile(self, p: float) -> float:
        return percentile(self, p)

    def __eq__(self, other):
        if not isinstance(other, RateCdf):
            return NotImplemented
        return np.array_equal(self.sorted_rates_bps, other.sorted_rates_bps)


def percentile(cdf: RateCdf, p: float) -> float:
    """Nearest-rank percentile: sorted[ceil(p*n) - 1]."""
    n = cdf.sample_count
    if n == 0:
        raise DomainError("empty CDF")
    if not 0 < p <= 1:
        raise DomainError(f"percentile p must lie in (0, 1], got {p}")
    # the tolerance stops p*n = 7.000000000000001 from rounding up a rank
    rank = max(1, math.ceil(p * n - 1e-9))
    return float(cdf.sorted_rates_bps[rank - 1])


def build_hex_grid(cell_radius_m: float, ring_count: int) -> np.ndarray:
    """Site coordinates (n_sites, 2); the serving-cell site is row 0 at the origin.

    Sites sit on a hexagonal lattice with inter-site distance sqrt(3)*R.
    """
    if ring_count < 0:
        raise DomainError("ring_count must be >= 0")
    isd = math.sqrt(3.0) * cell_radius_m
    coords = []
    for ring in range(ring_count + 1):
        for q in range(-ring, ring + 1):
            for r in range(-ring, ring + 1):
                if max(abs(q), abs(r), abs(q + r)) != ring:
                    continue
                coords.append((isd * (q + r / 2.0), isd * (math.sqrt(3.0) / 2.0) * r))
    return np.array(coords, dtype=float)


def _substream(seed: int, drop_index: int, stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(drop_index, stream)))


@dataclass(frozen=True, eq=False)
class UserDrop:
    positions_m: np.ndarray
    indoor_depths_m: np.ndarray | None = field(default=None)

    def __len__(self):
        return len(self.positions_m)


def drop_users(scenario: Scenario, drop_index: int) -> UserDrop:
    """Place ``users_per_cell`` users in the centre cell for one drop."""
    rng = _substream(scenario.seed, drop_index, _PLACEMENT_STREAM)
    n = scenario.users_per_cell
    angle = rng.uniform(0.0, 2.0 * math.pi, n)
    u = rng.uniform(0.0, 1.0, n)
    v = rng.uniform(0.0, 1.0, n)
    placement = scenario.user_placement
    if placement is UserPlacement.CELL_EDGE_ANNULUS:
        # area-uniform over fraction*R <= r <= R
        f2 = scenario.edge_annulus_fraction**2
        radius = np.sqrt(f2 + u * (1.0 - f2))
    elif placement is UserPlacement.UNIFORM_AREA:
        radius = np.sqrt(u)
    else:
        radius = np.ones(n)
    radius = radius * scenario.cell_radius_m
    positions = np.column_stack([radius * np.cos(angle), radius * np.sin(angle)])
    depths = None
    if placement is UserPlacement.INDOOR_BORDER:
        lo, hi = scenario.o2i.depth_range_m
        depths = lo + v * (hi - lo)
    return UserDrop(positions, depths)


def serving_gain_db(scenario: Scenario) -> float:
    if scenario.carrier.eirp_dbm is not None:
        return scenario.antenna.rx_gain_dbi
    return float(capped_combined_gain_dbi(scenario.antenna, scenario.carrier.frequency_hz))


def _link_arrays(scenario: Scenario, users: UserDrop, drop_index: int) -> dict[str, np.ndarray]:
    if len(users) == 0:
        raise DomainError("no users to evaluate")
    carrier = scenario.carrier
    sites = build_hex_grid(scenario.cell_radius_m, scenario.ring_count)
    diff = users.positions_m[:, None, :] - sites[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    # users closer than the model reference distance are evaluated at d0
    dist = np.maximum(dist, scenario.pathloss.reference_distance_m)

    shadow_rng = _substream(scenario.seed, drop_index, _SHADOW_STREAM)
    shadow = shadow_rng.standard_normal(dist.shape) * scenario.pathloss.shadow_sigma_db
    loss = path_loss_db(scenario.pathloss, carrier.frequency_hz, dist, shadow)
    if users.indoor_depths_m is not None:
        loss = loss + o2i_excess_loss_db(scenario.o2i, users.indoor_depths_m)[:, None]

    rows = np.arange(len(users))
    serving = np.argmin(dist, axis=1)
    gain = serving_gain_db(scenario)
    source = carrier.eirp_dbm if carrier.eirp_dbm is not None else carrier.tx_power_dbm
    signal = source + gain - loss[rows, serving]
    noise = float(thermal_noise_dbm(carrier.bandwidth_hz, carrier.temperature_k, carrier.noise_figure_db))

    interference = np.full(len(users), NO_INTERFERENCE)
    if scenario.interference_mode is InterferenceMode.FULL and sites.shape[0] > 1:
        rx = db_to_linear(carrier.tx_power_dbm + scenario.interferer_gain_db - loss)
        rx[rows, serving] = 0.0
        interference = linear_to_db(rx.sum(axis=1))

    sinr = sinr_db(signal, noise, interference)
    rate = shannon_rate_bps(carrier.bandwidth_hz, sinr, carrier.utilization_rho)
    return {
        "distance_m": dist[rows, serving],
        "path_loss_db": loss[rows, serving] - shadow[rows, serving],
        "shadow_db": shadow[rows, serving],
        "gain_db": np.full(len(users), gain),
        "signal_dbm": signal,
        "noise_dbm": np.full(len(users), noise),
        "interference_dbm": interference,
        "sinr_db": sinr,
        "rate_bps": rate,
    }


def evaluate_drop(scenario: Scenario, users: UserDrop, drop_index: int = 0) -> list[LinkSample]:
    """Per-user link budget for one drop.

    ``path_loss_db`` excludes shadowing; it includes the O2I excess loss for
    indoor users. ``drop_index`` selects the shadowing substream.
    """
    cols = _link_arrays(scenario, users, drop_index)
    names = list(cols)
    return [
        LinkSample(**{k: float(cols[k][i]) for k in names}) for i in range(len(users))
    ]


def _drop_rates(scenario: Scenario, drop_index: int) -> np.ndarray:
    return _link_arrays(scenario, drop_users(scenario, drop_index), drop_index)["rate_bps"]


def default_workers() -> int:
    env = os.environ.get("MMKPI_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def run_scenario(scenario: Scenario, workers: int | None = None) -> RateCdf:
    """All drops' rates, merged in drop order and sorted."""
    workers = default_workers() if workers is None else max(1, workers)
    indices = range(scenario.drops)
    if workers == 1:
        chunks = [_drop_rates(scenario, i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda i: _drop_rates(scenario, i), indices))
    return RateCdf.from_samples(np.concatenate(chunks))
