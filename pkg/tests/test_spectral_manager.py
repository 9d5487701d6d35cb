import numpy as np
import pytest

from data_classes.grid import Grid
from data_classes.spectral_field import SpectralField
from exceptions.degenerate_input import DegenerateInputError
from utils.spectral_manager import SpectralManager


@pytest.mark.parametrize("dim, points, length", [(0, 16, 1.0), (4, 16, 1.0), (1, 12, 1.0), (1, 4, 1.0), (2, 16, -1.0)])
def test_grid_rejects_invalid_layout(dim, points, length):
    with pytest.raises(ValueError):
        Grid.cubic(dim, points, length)


def test_grid_from_axes_broadcasts_scalars():
    grid = Grid.from_axes(2, 32, 10.0)
    assert grid.points_per_axis == (32, 32)
    assert grid.box_length == (10.0, 10.0)
    assert grid.describe() == {"dim": 2, "points_per_axis": [32, 32], "box_length": [10.0, 10.0]}


def test_spectral_field_rejects_shape_mismatch(grid_1d):
    with pytest.raises(ValueError):
        SpectralField.physical(grid_1d, np.zeros(32))


def test_transform_preserves_l2_norm(spectral_3d, rng):
    data = rng.standard_normal(spectral_3d.grid.shape) + 1j * rng.standard_normal(spectral_3d.grid.shape)
    coefficients = spectral_3d.forward(data)
    assert np.linalg.norm(coefficients) == pytest.approx(spectral_3d.lebesgue_norm(data, 2), rel=1e-12)
    assert np.allclose(spectral_3d.inverse(coefficients), data, atol=1e-12)


def test_field_round_trip_keeps_time_stamp(spectral_3d, rng):
    field = SpectralField.physical(spectral_3d.grid, rng.standard_normal(spectral_3d.grid.shape), time=2.5)
    fourier = spectral_3d.to_fourier(field)
    assert not fourier.is_physical
    back = spectral_3d.to_physical(fourier)
    assert back.time == 2.5
    assert np.allclose(back.data, field.data, atol=1e-12)


def test_derivatives_of_a_trigonometric_mode(spectral_1d):
    x = spectral_1d.grid.coordinates[0]
    f = np.sin(3.0 * x)
    assert np.allclose(spectral_1d.derivative(f, (1,)), 3.0 * np.cos(3.0 * x), atol=1e-10)
    assert np.allclose(spectral_1d.laplacian(f), -9.0 * f, atol=1e-10)
    assert np.allclose(spectral_1d.fractional_laplacian(f, 2.0), 9.0 * f, atol=1e-10)


def test_derivative_rejects_wrong_multi_index(spectral_3d):
    with pytest.raises(ValueError):
        spectral_3d.derivative(np.zeros(spectral_3d.grid.shape), (1, 0))


def test_real_input_gives_real_output(spectral_3d, rng):
    f = rng.standard_normal(spectral_3d.grid.shape)
    assert not np.iscomplexobj(spectral_3d.laplacian(f))


def test_divergence_of_gradient_is_laplacian(spectral_3d, rng):
    f = spectral_3d.random_band_limited(rng, 4, real=True)
    assert np.allclose(spectral_3d.divergence(spectral_3d.gradient(f)), spectral_3d.laplacian(f), atol=1e-10)


def test_inverse_laplacian_removes_the_mean(spectral_3d, rng):
    f = spectral_3d.random_band_limited(rng, 4, real=True, mean_zero=False)
    recovered = spectral_3d.laplacian(spectral_3d.inverse_laplacian(f))
    assert np.allclose(recovered, f - f.mean(), atol=1e-10)


def test_free_propagation_is_a_unitary_group(spectral_3d, rng):
    f = spectral_3d.random_band_limited(rng, 5)
    forward = spectral_3d.free_propagate(f, 0.7)
    assert spectral_3d.lebesgue_norm(forward, 2) == pytest.approx(1.0, rel=1e-12)
    assert np.allclose(spectral_3d.free_propagate(forward, -0.7), f, atol=1e-12)
    two_steps = spectral_3d.free_propagate(spectral_3d.free_propagate(f, 0.3), 0.4)
    assert np.allclose(two_steps, forward, atol=1e-12)


def test_free_propagation_at_time_zero_returns_input(spectral_3d):
    f = np.ones(spectral_3d.grid.shape, dtype=complex)
    assert spectral_3d.free_propagate(f, 0.0) is f


def test_free_propagation_solves_schroedinger(spectral_1d):
    x = spectral_1d.grid.coordinates[0]
    f = np.exp(2j * x)
    assert np.allclose(spectral_1d.free_propagate(f, 0.25), np.exp(-1j * 4.0 * 0.25) * f, atol=1e-12)


def test_homogeneous_negative_sobolev_norm_needs_zero_mean(spectral_3d):
    constant = np.ones(spectral_3d.grid.shape)
    with pytest.raises(DegenerateInputError):
        spectral_3d.sobolev_norm(constant, -0.5, homogeneous=True)
    assert spectral_3d.sobolev_norm(constant, -0.5) > 0


def test_sobolev_norm_of_a_single_mode(spectral_1d):
    x = spectral_1d.grid.coordinates[0]
    f = np.exp(3j * x)
    l2 = spectral_1d.lebesgue_norm(f, 2)
    assert spectral_1d.sobolev_norm(f, 1.0, homogeneous=True) == pytest.approx(3.0 * l2, rel=1e-12)
    assert spectral_1d.sobolev_norm(f, 1.0) == pytest.approx(np.sqrt(10.0) * l2, rel=1e-12)


def test_lebesgue_norm_rejects_exponent_below_one(spectral_3d):
    with pytest.raises(ValueError):
        spectral_3d.lebesgue_norm(np.ones(spectral_3d.grid.shape), 0.5)


def test_lebesgue_norm_of_constant(spectral_3d):
    ones = np.ones(spectral_3d.grid.shape)
    volume = spectral_3d.grid.volume
    assert spectral_3d.lebesgue_norm(ones, 1) == pytest.approx(volume)
    assert spectral_3d.lebesgue_norm(ones, np.inf) == 1.0


def test_random_band_limited_field(spectral_3d, rng):
    f = spectral_3d.random_band_limited(rng, 3)
    assert spectral_3d.lebesgue_norm(f, 2) == pytest.approx(1.0, rel=1e-12)
    assert abs(spectral_3d.zero_mode(f)) < 1e-12
    assert spectral_3d.bandwidth(f) <= 3.0 * np.sqrt(3.0) + 1e-9
    with pytest.raises(ValueError):
        spectral_3d.random_band_limited(rng, 8)


def test_dealias_removes_high_modes(spectral_1d):
    x = spectral_1d.grid.coordinates[0]
    low, high = np.cos(5.0 * x), np.cos(30.0 * x)
    assert np.allclose(spectral_1d.dealias(low + high), low, atol=1e-12)


def test_wrap_around_horizon(spectral_1d):
    assert spectral_1d.wrap_around_horizon(np.zeros(64)) == float("inf")
    x = spectral_1d.grid.coordinates[0]
    horizon = spectral_1d.wrap_around_horizon(np.exp(4j * x))
    assert horizon == pytest.approx((2.0 * np.pi) ** 2 / (4.0 * np.pi * 4.0))
