import numpy as np
import pytest

from data_classes.fluid_state import FluidState, MadelungState
from data_classes.grid import Grid
from data_classes.solver_config import SolverConfig
from enums.solver_scheme import IntegrationDirection, SolverScheme
from exceptions.blowup_detected import BlowupDetectedError
from exceptions.density_range_violation import DensityRangeViolation
from exceptions.step_rejected import StepRejectedError
from integrators.integrator import Integrator
from integrators.interfaces import IStepStrategy
from model.capillarity_model import CapillarityModel
from utils.madelung_processor import MadelungProcessor
from utils.nonlinearity_processor import NonlinearityProcessor
from utils.spectral_manager import SpectralManager


@pytest.fixture
def line():
    return SpectralManager(Grid.cubic(1, 128, 40.0))


@pytest.fixture
def line_processor(normalized_model, line):
    return NonlinearityProcessor(normalized_model, line)


@pytest.fixture
def bump(line):
    (x,) = line.grid.centered_coordinates
    return 0.05 * np.exp(-x ** 2 / 4.0) * (1.0 + 0.5j)


class QuadraticDefectStrategy(IStepStrategy):
    """Multiplies z by 1 + dt^2, so one step and two half steps differ by about dt^2 / 2."""

    def __init__(self, processor):
        self._processor = processor

    def step(self, state, t, dt):
        return MadelungState(state.grid, state.z * (1.0 + dt ** 2))

    def check(self, state):
        pass

    def distance(self, first, second):
        return float(np.linalg.norm(first.z - second.z))

    def size(self, state):
        return float(np.linalg.norm(state.z))

    @staticmethod
    def stability_dt(model, grid, safety, amplitude_ceiling):
        return 1.0


def _integrator(processor, scheme=SolverScheme.STRANG_SPLIT_RK4, dt=0.05, **options):
    options.setdefault("defect_tolerance", None)
    return Integrator(processor, SolverConfig(dt=dt, scheme=scheme, **options))


def test_linear_flow_is_the_free_propagator(normalized_model, line, bump):
    linear = CapillarityModel(normalized_model.capillarity, normalized_model.pressure_law, linear_only=True)
    integrator = _integrator(NonlinearityProcessor(linear, line), dt=0.1)
    trajectory = integrator.evolve(MadelungState(line.grid, bump), 0.0, 1.0)
    _, final = trajectory.latest()
    assert np.allclose(final.z, line.free_propagate(bump, 1.0), atol=1e-12)


@pytest.mark.parametrize("scheme", [SolverScheme.STRANG_SPLIT_RK4, SolverScheme.ETD_RK4])
def test_forward_backward_reversibility(line_processor, line, bump, scheme):
    start = MadelungState(line.grid, bump)
    forward = _integrator(line_processor, scheme, dt=0.02)
    _, middle = forward.evolve(start, 0.0, 1.0).latest()
    backward = Integrator(line_processor, forward.config.towards(IntegrationDirection.BACKWARD))
    _, back = backward.evolve(middle, 1.0, 0.0).latest()
    assert np.linalg.norm(back.z - bump) / np.linalg.norm(bump) < 1e-7


def test_strang_split_is_second_order(line_processor, line, bump):
    start = MadelungState(line.grid, bump)
    reference = _integrator(line_processor, dt=0.0125).evolve(start, 0.0, 1.0).latest()[1].z
    coarse = _integrator(line_processor, dt=0.1).evolve(start, 0.0, 1.0).latest()[1].z
    fine = _integrator(line_processor, dt=0.05).evolve(start, 0.0, 1.0).latest()[1].z
    assert np.linalg.norm(coarse - reference) / np.linalg.norm(fine - reference) > 3.0


def test_direction_must_match_interval(line_processor, line, bump):
    integrator = _integrator(line_processor)
    with pytest.raises(ValueError):
        integrator.evolve(MadelungState(line.grid, bump), 1.0, 0.0)


def test_sample_times_are_recorded_in_order(line_processor, line, bump):
    integrator = _integrator(line_processor)
    trajectory = integrator.evolve(MadelungState(line.grid, bump), 0.0, 1.0, sample_times=[0.25, 0.5, 2.0])
    assert trajectory.get_times() == [0.0, 0.25, 0.5, 1.0]


def test_sample_times_accept_an_array(line_processor, line, bump):
    integrator = _integrator(line_processor)
    samples = np.linspace(0.0, 1.0, 5)[1:-1]
    trajectory = integrator.evolve(MadelungState(line.grid, bump), 0.0, 1.0, sample_times=samples)
    assert trajectory.get_times() == pytest.approx([0.0, 0.25, 0.5, 0.75, 1.0])


def test_snapshot_cadence_thins_recording(line_processor, line, bump):
    integrator = _integrator(line_processor, snapshot_cadence=2)
    trajectory = integrator.evolve(MadelungState(line.grid, bump), 0.0, 1.0, sample_times=[0.2, 0.4, 0.6, 0.8])
    assert trajectory.get_times() == [0.0, 0.4, 0.8, 1.0]


def test_stop_condition_raises_blowup(line_processor, line, bump):
    integrator = _integrator(line_processor)
    with pytest.raises(BlowupDetectedError):
        integrator.evolve(MadelungState(line.grid, bump), 0.0, 1.0, sample_times=[0.5], stop_condition=lambda: True)


def test_state_outside_working_interval_is_rejected(line_processor, line):
    integrator = _integrator(line_processor)
    with pytest.raises(DensityRangeViolation):
        integrator.evolve(MadelungState(line.grid, np.full(line.grid.shape, 5.0 + 0j)), 0.0, 1.0)


def test_persistent_defect_raises_step_rejected(line_processor, line, bump):
    integrator = _integrator(line_processor, defect_tolerance=1e-30, max_step_rejections=0)
    with pytest.raises(StepRejectedError):
        integrator.step(MadelungState(line.grid, bump), 0.0, 0.05)


def test_defect_control_halves_until_accepted(monkeypatch, line_processor, line, bump):
    monkeypatch.setitem(Integrator._strategies, SolverScheme.ETD_RK4, QuadraticDefectStrategy)
    integrator = _integrator(line_processor, SolverScheme.ETD_RK4, dt=0.1, defect_tolerance=1e-3)
    result = integrator.step(MadelungState(line.grid, bump), 0.0, 0.1)
    # 0.1 fails, both halves of 0.05 fail, the four steps of 0.025 pass
    assert integrator.rejections == 3
    assert np.allclose(result.z, bump * (1.0 + 0.0125 ** 2) ** 8)


def test_stability_dt_orders_the_schemes(line_processor):
    complex_dt = _integrator(line_processor).stability_dt()
    primitive_dt = _integrator(line_processor, SolverScheme.RK4_PSEUDOSPECTRAL).stability_dt()
    assert primitive_dt < complex_dt


def test_primitive_scheme_conserves_mass_and_energy(line_processor, line):
    (x,) = line.grid.centered_coordinates
    start = FluidState(line.grid, 1.0 + 0.05 * np.exp(-x ** 2 / 4.0), (np.zeros(line.grid.shape),))
    integrator = _integrator(line_processor, SolverScheme.RK4_PSEUDOSPECTRAL, dt=0.0025)
    _, final = integrator.evolve(start, 0.0, 0.5).latest()
    assert line_processor.mass(final) == pytest.approx(line_processor.mass(start), abs=1e-12)
    energy = line_processor.hamiltonian(start)
    assert abs(line_processor.hamiltonian(final) - energy) / energy < 1e-8
    assert np.max(np.abs(final.u[0])) > 0.0


def test_complex_and_primitive_forms_agree_at_second_order(normalized_model, line, bump):
    processor = NonlinearityProcessor(normalized_model, line, dealias=False)
    start = MadelungState(line.grid, bump)
    primitive_start = MadelungProcessor(normalized_model, line).from_complex(start)
    gaps = []
    for dt in (0.02, 0.01, 0.005):
        _, complex_final = _integrator(processor, dt=dt).evolve(start, 0.0, 0.5).latest()
        primitive = _integrator(processor, SolverScheme.RK4_PSEUDOSPECTRAL, dt=dt)
        _, primitive_final = primitive.evolve(primitive_start, 0.0, 0.5).latest()
        gaps.append(processor.formulation_gap(complex_final, primitive_final))
    assert gaps[0] < 1e-3
    assert np.log2(gaps[0] / gaps[1]) >= 1.9
    assert np.log2(gaps[1] / gaps[2]) >= 1.9
