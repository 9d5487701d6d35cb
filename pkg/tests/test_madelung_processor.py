import numpy as np
import pytest

from data_classes.fluid_state import FluidState, MadelungState
from exceptions.density_range_violation import DensityRangeViolation
from exceptions.non_irrotational_input import NonIrrotationalInputError
from utils.madelung_processor import MadelungProcessor


@pytest.fixture
def smooth_state(spectral_3d, rng):
    ell = spectral_3d.random_band_limited(rng, 3, real=True)
    psi = spectral_3d.random_band_limited(rng, 3, real=True)
    ell = 0.2 * ell / np.max(np.abs(ell))
    return MadelungState(spectral_3d.grid, ell + 1j * psi)


def test_fluid_state_checks_velocity_components(grid_3d):
    with pytest.raises(ValueError):
        FluidState(grid_3d, np.ones(grid_3d.shape), (np.zeros(grid_3d.shape),))


def test_complex_round_trip(madelung_3d, smooth_state):
    fluid = madelung_3d.from_complex(smooth_state)
    back = madelung_3d.to_complex(fluid)
    assert np.allclose(back.z, smooth_state.z, atol=1e-9)
    assert madelung_3d.potential_residual(fluid, back) < 1e-9


def test_equilibrium_maps_to_zero(madelung_3d, grid_3d):
    mstate = madelung_3d.to_complex(FluidState.equilibrium(grid_3d))
    assert np.allclose(mstate.z, 0.0)


def test_rotational_velocity_is_rejected(madelung_3d, grid_3d):
    x, y, _ = grid_3d.coordinates
    omega = 2.0 * np.pi / grid_3d.box_length[1]
    u = (np.broadcast_to(np.sin(omega * y), grid_3d.shape), np.zeros(grid_3d.shape), np.zeros(grid_3d.shape))
    state = FluidState(grid_3d, np.ones(grid_3d.shape), u)
    assert madelung_3d.curl_diagnostic(state.u) > 0.5
    with pytest.raises(NonIrrotationalInputError):
        madelung_3d.to_complex(state)


def test_mean_flow_is_rejected(madelung_3d, grid_3d):
    u = (np.ones(grid_3d.shape), np.zeros(grid_3d.shape), np.zeros(grid_3d.shape))
    with pytest.raises(NonIrrotationalInputError):
        madelung_3d.to_complex(FluidState(grid_3d, np.ones(grid_3d.shape), u))


def test_density_outside_interval_is_rejected(madelung_3d, grid_3d):
    state = FluidState.equilibrium(grid_3d)
    rho = state.rho.copy()
    rho[0, 0, 0] = 10.0
    with pytest.raises(DensityRangeViolation):
        madelung_3d.to_complex(FluidState(grid_3d, rho, state.u))
    with pytest.raises(DensityRangeViolation):
        madelung_3d.from_complex(MadelungState(grid_3d, np.full(grid_3d.shape, 9.0 + 0j)))


def test_curl_vanishes_in_one_dimension(normalized_model, spectral_1d):
    processor = MadelungProcessor(normalized_model, spectral_1d)
    assert processor.curl_diagnostic((np.sin(spectral_1d.grid.coordinates[0]),)) == 0.0
