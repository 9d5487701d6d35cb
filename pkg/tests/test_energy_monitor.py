import numpy as np
import pytest

from data_classes.energy_report import EnergyReport
from data_classes.fluid_state import FluidState, MadelungState
from model.trajectory_model import TrajectoryModel
from utils.energy_monitor import EnergyMonitor
from utils.madelung_processor import MadelungProcessor


@pytest.fixture
def monitor_factory(normalized_model, spectral_1d):
    madelung = MadelungProcessor(normalized_model, spectral_1d)

    def build(gamma=0.0, ceiling=1e3):
        return EnergyMonitor(normalized_model, spectral_1d, madelung, gamma, integral_ceiling=ceiling)

    return build


@pytest.fixture
def rippled(grid_1d):
    (x,) = grid_1d.coordinates
    return FluidState(grid_1d, 1.0 + 0.1 * np.cos(x), (np.zeros(grid_1d.shape),))


def test_negative_gamma_is_rejected(monitor_factory):
    with pytest.raises(ValueError):
        monitor_factory(gamma=-0.5)


def test_equilibrium_has_no_energy(monitor_factory, grid_1d):
    assert monitor_factory(gamma=1.0).weighted_energy(FluidState.equilibrium(grid_1d)) == 0.0


def test_unweighted_energy_of_a_shear_free_flow(monitor_factory, grid_1d):
    (x,) = grid_1d.coordinates
    state = FluidState(grid_1d, np.ones(grid_1d.shape), (0.1 * np.sin(x),))
    assert monitor_factory().weighted_energy(state) == pytest.approx(0.01 * np.pi)


def test_reference_state_is_subtracted(monitor_factory, rippled):
    assert monitor_factory(gamma=0.5).weighted_energy(rippled, rippled) == pytest.approx(0.0, abs=1e-20)


def test_monitor_observes_trajectory_snapshots(monitor_factory, rippled):
    monitor = monitor_factory()
    trajectory = TrajectoryModel("monitored")
    trajectory.add_observer(monitor)
    trajectory.append_snapshot(2.0, rippled)
    trajectory.append_snapshot(0.0, rippled)
    report = monitor.report()
    assert report.times == [0.0, 2.0]
    # ||Lap rho||_inf = 0.1 at every sample
    assert report.blowup_integral == pytest.approx([0.0, 0.2])
    assert report.continuation_ok
    assert report.rho_min[0] == pytest.approx(0.9)


def test_snapshot_outside_working_interval_fails_continuation(monitor_factory, grid_1d):
    monitor = monitor_factory()
    monitor.observe(0.0, MadelungState(grid_1d, np.zeros(grid_1d.shape)))
    monitor.observe(1.0, MadelungState(grid_1d, np.full(grid_1d.shape, 9.0 + 0j)))
    report = monitor.report()
    assert not report.range_ok
    assert not monitor.continuation_ok
    assert np.isnan(report.energies[1])


def test_integral_ceiling_fails_continuation(monitor_factory, rippled):
    monitor = monitor_factory(ceiling=0.05)
    monitor.observe(0.0, rippled)
    monitor.observe(1.0, rippled)
    report = monitor.report()
    assert report.range_ok
    assert not report.integral_ok
    assert report.to_rows()[-1]["continuation_ok"] is False


def test_replay_and_reset(monitor_factory, rippled):
    trajectory = TrajectoryModel()
    for t in (0.0, 0.5, 1.0):
        trajectory.append_snapshot(t, rippled)
    monitor = monitor_factory()
    report = monitor.blowup_monitor(trajectory)
    assert report.blowup_integral[-1] == pytest.approx(0.1)
    monitor.reset()
    assert monitor.report().times == []


def test_complex_snapshots_feed_the_laplacian_integral(monitor_factory, grid_1d):
    (x,) = grid_1d.coordinates
    monitor = monitor_factory()
    for t in (0.0, 1.0):
        monitor.observe(t, MadelungState(grid_1d, 0.1 * np.cos(x) + 0j))
    assert monitor.report().laplacian_z_integral[-1] == pytest.approx(0.1)


def test_segments_concatenate():
    first = EnergyReport(0.0, blowup_integral=[0.0, 1.5])
    second = EnergyReport(0.0, blowup_integral=[0.0, 2.0])
    assert EnergyMonitor.concatenate([first, second, EnergyReport(0.0)]) == pytest.approx(3.5)
