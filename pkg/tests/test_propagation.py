import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mmkpi.constants import SPEED_OF_LIGHT
from mmkpi.errors import DomainError
from mmkpi.propagation import (
    O2IParams,
    PathLossKind,
    PathLossParams,
    fspl_db,
    o2i_excess_loss_db,
    path_loss_db,
    sample_shadowing_db,
)

freqs = st.floats(min_value=1e8, max_value=3e11)
dists = st.floats(min_value=1.0, max_value=1e4)


def test_fspl_unit_argument_is_zero_db():
    d = 1.0
    f = SPEED_OF_LIGHT / (4 * math.pi * d)
    assert fspl_db(f, d) == pytest.approx(0.0, abs=1e-12)


def test_fspl_28ghz_one_metre():
    # 20*log10(4*pi*28e9/2.998e8) evaluated by hand: 61.3907
    assert fspl_db(28e9, 1.0) == pytest.approx(61.3907, abs=1e-4)


def test_fspl_doubling_distance_adds_6_02_db():
    assert fspl_db(6e9, 400.0) - fspl_db(6e9, 200.0) == pytest.approx(20 * math.log10(2), abs=1e-12)


@pytest.mark.parametrize("f, d", [(0.0, 1.0), (1e9, 0.0), (-1e9, 5.0)])
def test_fspl_rejects_non_positive(f, d):
    with pytest.raises(DomainError):
        fspl_db(f, d)


@pytest.mark.parametrize("f", [6e9, 28e9, 73e9])
def test_close_in_at_reference_distance_is_fspl(f):
    params = PathLossParams(PathLossKind.CLOSE_IN, 3.4, 0.0, 1.0)
    assert path_loss_db(params, f, 1.0, 0.0) == pytest.approx(fspl_db(f, 1.0), abs=1e-12)


def test_close_in_28ghz_100m():
    params = PathLossParams(PathLossKind.CLOSE_IN, 3.4)
    # 61.3907 + 10*3.4*2
    assert path_loss_db(params, 28e9, 100.0) == pytest.approx(129.3907, abs=1e-4)


def test_free_space_6ghz_200m():
    params = PathLossParams(PathLossKind.FREE_SPACE)
    # 20*log10(4*pi*200*6e9/2.998e8)
    assert path_loss_db(params, 6e9, 200.0) == pytest.approx(94.0312, abs=1e-4)


def test_free_space_forces_exponent_and_sigma():
    params = PathLossParams(PathLossKind.FREE_SPACE, exponent_n=3.7, shadow_sigma_db=8.0)
    assert (params.exponent_n, params.shadow_sigma_db) == (2.0, 0.0)


def test_winner_offset_shifts_intercept():
    ci = PathLossParams(PathLossKind.CLOSE_IN, 3.574)
    wn = PathLossParams(PathLossKind.WINNER_URBAN, 3.574, 0.0, 1.0, -3.58)
    assert path_loss_db(wn, 6e9, 150.0) - path_loss_db(ci, 6e9, 150.0) == pytest.approx(-3.58)


def test_path_loss_below_reference_distance_rejected():
    params = PathLossParams(PathLossKind.CLOSE_IN, 3.0, reference_distance_m=10.0)
    with pytest.raises(DomainError):
        path_loss_db(params, 28e9, 5.0)


@pytest.mark.parametrize(
    "kwargs",
    [dict(exponent_n=0.5), dict(exponent_n=11.0), dict(shadow_sigma_db=-1.0),
     dict(shadow_sigma_db=25.0), dict(reference_distance_m=0.0)],
)
def test_pathloss_params_invariants(kwargs):
    with pytest.raises(DomainError):
        PathLossParams(PathLossKind.CLOSE_IN, **{"exponent_n": 2.0, **kwargs})


@given(freqs, dists, dists)
def test_path_loss_increasing_in_distance(f, d1, d2):
    params = PathLossParams(PathLossKind.CLOSE_IN, 2.8)
    lo, hi = sorted((d1, d2))
    if hi > lo * (1 + 1e-9):
        assert path_loss_db(params, f, hi) > path_loss_db(params, f, lo)


@pytest.mark.parametrize("kind", [PathLossKind.CLOSE_IN, PathLossKind.FREE_SPACE])
@given(f1=freqs, f2=freqs, d=dists)
def test_path_loss_increasing_in_frequency(kind, f1, f2, d):
    params = PathLossParams(kind, 3.1)
    lo, hi = sorted((f1, f2))
    if hi > lo * (1 + 1e-9):
        assert path_loss_db(params, hi, d) > path_loss_db(params, lo, d)


@given(freqs, dists)
def test_close_in_exponent_two_equals_fspl(f, d):
    params = PathLossParams(PathLossKind.CLOSE_IN, 2.0, 0.0, 1.0)
    assert abs(path_loss_db(params, f, d) - fspl_db(f, d)) < 1e-9


def test_path_loss_broadcasts_over_arrays():
    params = PathLossParams(PathLossKind.CLOSE_IN, 3.0)
    d = np.array([[1.0, 10.0], [100.0, 1000.0]])
    out = path_loss_db(params, 28e9, d)
    assert out.shape == (2, 2)
    assert out[1, 1] == pytest.approx(fspl_db(28e9, 1.0) + 90.0)


def test_o2i_zero_case():
    assert o2i_excess_loss_db(O2IParams(), 0.0) == 0.0


def test_o2i_boundary_depth_zero():
    assert o2i_excess_loss_db(O2IParams(10.0, 0.5, 3.0), 0.0) == pytest.approx(13.0)


def test_o2i_linear_chain():
    assert o2i_excess_loss_db(O2IParams(10.0, 0.5, 3.0), 10.0) == pytest.approx(18.0)


def test_o2i_negative_depth_rejected():
    with pytest.raises(DomainError):
        o2i_excess_loss_db(O2IParams(), -0.1)


@pytest.mark.parametrize(
    "kwargs",
    [dict(diffraction_loss_db=-1), dict(body_loss_db=-0.5), dict(depth_range_m=(5, 1)),
     dict(depth_range_m=(-1, 3))],
)
def test_o2i_params_invariants(kwargs):
    with pytest.raises(DomainError):
        O2IParams(**kwargs)


@given(st.floats(0, 50), st.floats(0, 50))
def test_o2i_monotone_in_depth(a, b):
    params = O2IParams(12.0, 0.7, 3.0)
    lo, hi = sorted((a, b))
    assert o2i_excess_loss_db(params, lo) <= o2i_excess_loss_db(params, hi)


def test_shadowing_sigma_zero_is_always_zero():
    rng = np.random.default_rng(3)
    assert all(sample_shadowing_db(0.0, rng) == 0.0 for _ in range(100))
    assert np.all(sample_shadowing_db(0.0, rng, size=50) == 0.0)


def test_shadowing_statistics():
    draws = sample_shadowing_db(8.0, np.random.default_rng(2024), size=100_000)
    assert abs(draws.mean()) < 0.1
    assert abs(draws.std(ddof=1) - 8.0) < 0.15


def test_shadowing_deterministic_given_stream():
    a = sample_shadowing_db(6.0, np.random.default_rng(99), size=10)
    b = sample_shadowing_db(6.0, np.random.default_rng(99), size=10)
    assert np.array_equal(a, b)


def test_shadowing_negative_sigma_rejected():
    with pytest.raises(DomainError):
        sample_shadowing_db(-1.0, np.random.default_rng(0))
