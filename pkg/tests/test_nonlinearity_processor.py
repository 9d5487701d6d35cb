import numpy as np
import pytest

from data_classes.fluid_state import FluidState, MadelungState
from model.capillarity_model import CapillarityModel, TruncatedCapillarityModel
from model.trajectory_model import TrajectoryModel
from utils.nonlinearity_processor import NonlinearityProcessor


@pytest.fixture
def small_z(spectral_3d, rng):
    ell = spectral_3d.random_band_limited(rng, 4, real=True)
    psi = spectral_3d.random_band_limited(rng, 4, real=True)
    return 2.0 * (ell + 1j * psi)


def test_equilibrium_is_a_fixed_point(processor_3d, grid_3d):
    zero = np.zeros(grid_3d.shape, dtype=complex)
    assert np.allclose(processor_3d.full_nonlinearity(zero), 0.0)
    d_rho, d_u = processor_3d.primitive_right_hand_side(FluidState.equilibrium(grid_3d))
    assert np.allclose(d_rho, 0.0)
    assert all(np.allclose(component, 0.0) for component in d_u)


def test_quadratic_part_complex_and_real_forms_agree(processor_3d, small_z):
    complex_form = processor_3d.quadratic_part(small_z)
    real_form = processor_3d.quadratic_part_real_form(small_z)
    assert np.allclose(complex_form, real_form, atol=1e-12)


def test_scalar_equations_match_complex_right_hand_side(processor_3d, spectral_3d, small_z):
    d_ell, d_psi = processor_3d.scalar_right_hand_sides(small_z)
    complex_rhs = 1j * spectral_3d.laplacian(small_z) + processor_3d.full_nonlinearity(small_z)
    assert np.allclose(d_ell + 1j * d_psi, complex_rhs, atol=1e-12)


def test_cubic_remainder_is_cubic(processor_3d, small_z):
    first = np.linalg.norm(processor_3d.cubic_remainder(0.5 * small_z))
    second = np.linalg.norm(processor_3d.cubic_remainder(small_z))
    assert second / first == pytest.approx(8.0, rel=0.05)
    assert second < 0.1 * np.linalg.norm(processor_3d.quadratic_part(small_z))


def test_truncated_model_has_no_cubic_remainder(normalized_model, spectral_3d, small_z):
    processor = NonlinearityProcessor(TruncatedCapillarityModel(normalized_model), spectral_3d, dealias=False)
    assert np.max(np.abs(processor.cubic_remainder(small_z))) < 1e-12


def test_linear_only_model_has_no_nonlinearity(normalized_model, spectral_3d, small_z):
    linear = CapillarityModel(normalized_model.capillarity, normalized_model.pressure_law, linear_only=True)
    processor = NonlinearityProcessor(linear, spectral_3d)
    assert not processor.full_nonlinearity(small_z).any()
    assert not processor.quadratic_part(small_z).any()
    d_ell, d_psi = processor.scalar_right_hand_sides(small_z)
    assert np.allclose(d_ell + 1j * d_psi, 1j * spectral_3d.laplacian(small_z))


def test_dealiased_output_has_no_high_modes(normalized_model, spectral_3d, small_z):
    processor = NonlinearityProcessor(normalized_model, spectral_3d, dealias=True)
    coefficients = spectral_3d.forward(processor.full_nonlinearity(small_z))
    assert np.max(np.abs(coefficients[~spectral_3d.dealias_mask])) < 1e-12


def test_korteweg_term_matches_bohm_form(quantum_model, spectral_1d):
    processor = NonlinearityProcessor(quantum_model, spectral_1d, dealias=False)
    x = spectral_1d.grid.coordinates[0]
    rho = 1.0 + 0.2 * np.sin(x)
    (korteweg,) = processor.korteweg_divergence(rho)
    (bohm,) = processor.bohm_divergence(rho)
    assert np.max(np.abs(korteweg - bohm)) < 1e-9


def test_energy_and_mass_of_equilibrium(processor_3d, grid_3d):
    state = FluidState.equilibrium(grid_3d)
    assert processor_3d.mass(state) == 0.0
    assert processor_3d.hamiltonian(state) == pytest.approx(0.0, abs=1e-14)


def test_hamiltonian_of_a_moving_state(processor_3d, grid_3d):
    u = (np.full(grid_3d.shape, 0.1), np.zeros(grid_3d.shape), np.zeros(grid_3d.shape))
    state = FluidState(grid_3d, np.ones(grid_3d.shape), u)
    assert processor_3d.hamiltonian(state) == pytest.approx(0.5 * 0.01 * grid_3d.volume)


def test_trajectory_diagnostics_are_time_ordered(processor_3d, madelung_3d, grid_3d, small_z):
    trajectory = TrajectoryModel("diagnostics")
    trajectory.append_snapshot(1.0, MadelungState(grid_3d, small_z))
    trajectory.append_snapshot(0.0, FluidState.equilibrium(grid_3d))
    rows = processor_3d.trajectory_diagnostics(trajectory, madelung_3d)
    assert [row["t"] for row in rows] == [0.0, 1.0]
    assert set(rows[0]) == {"t", "mass", "hamiltonian", "ell_linf", "div_u_linf"}
    assert rows[0]["ell_linf"] == 0.0
    assert rows[1]["ell_linf"] == pytest.approx(np.max(np.abs(small_z.real)))


def test_cubic_remainder_vanishes_at_third_order(processor_3d, small_z):
    scaled = [np.linalg.norm(processor_3d.cubic_remainder(eps * small_z)) / eps ** 3 for eps in (1.0, 0.5, 0.25)]
    assert scaled[1] == pytest.approx(scaled[0], rel=0.05)
    assert scaled[2] == pytest.approx(scaled[1], rel=0.05)
