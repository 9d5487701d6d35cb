import logging

import numpy as np
import pytest

from data_classes.decay_series import DecaySeries
from data_classes.experiment_plan import ExperimentPlan
from data_classes.grid import Grid
from data_classes.solver_config import SolverConfig
from enums.solver_scheme import SolverScheme
from exceptions.config_error import ConfigError
from exceptions.quadrature_not_converged import QuadratureNotConvergedError
from utils.decay_analyzer import DecayAnalyzer
from utils.littlewood_paley_manager import LittlewoodPaleyManager
from utils.madelung_processor import MadelungProcessor
from utils.nonlinearity_processor import NonlinearityProcessor
from utils.profile_manager import ProfileManager
from utils.scattering_manager import ScatteringManager
from utils.spectral_manager import SpectralManager

FINAL_TIME = 2.0


@pytest.fixture
def plan():
    return ExperimentPlan(final_times=[FINAL_TIME, 3.0], sample_count=4, s_reg=1.0,
                          quadrature_order=8, panel_width=0.5)


def _manager(model, spectral, plan, scheme=SolverScheme.STRANG_SPLIT_RK4, tolerance=1e-5):
    processor = NonlinearityProcessor(model, spectral)
    config = SolverConfig(dt=0.05, scheme=scheme, defect_tolerance=None)
    return ScatteringManager(processor, MadelungProcessor(model, spectral), DecayAnalyzer(), config, plan,
                             quadrature_tolerance=tolerance)


@pytest.fixture
def scattering(normalized_model, spectral_3d, plan):
    return _manager(normalized_model, spectral_3d, plan)


@pytest.fixture
def dipole(spectral_3d, lp_3d):
    return ProfileManager(spectral_3d, lp_3d, s_reg=1.0).gaussian_dipole(0.01, 1.5)


def test_plan_validates_final_times():
    with pytest.raises(ValueError):
        ExperimentPlan(final_times=[0.5, 2.0])
    with pytest.raises(ValueError):
        ExperimentPlan(final_times=[4.0, 2.0])


def test_plan_clips_samples_at_the_wrap_horizon():
    plan = ExperimentPlan(final_times=[8.0], sample_count=5, wrap_horizon=4.0)
    times = plan.sample_times(8.0)
    assert times[0] == pytest.approx(1.0)
    assert times[-1] == pytest.approx(4.0)
    assert plan.fit_window(8.0) == (2.0, 2.0)


def test_linear_profile_starts_at_phi(scattering, dipole):
    assert np.allclose(scattering.linear_profile_z1(dipole, 0.0), dipole.field.data)
    norm = np.linalg.norm(dipole.field.data)
    assert np.linalg.norm(scattering.linear_profile_z1(dipole, 1.7)) == pytest.approx(norm)


def test_duhamel_integral_vanishes_at_final_time(scattering, dipole):
    values = scattering.duhamel_series(dipole, FINAL_TIME, [1.0, FINAL_TIME])
    assert not values[FINAL_TIME].any()
    assert np.linalg.norm(values[1.0]) > 0


def test_duhamel_rejects_times_after_final_time(scattering, dipole):
    with pytest.raises(ValueError):
        scattering.duhamel_series(dipole, FINAL_TIME, [FINAL_TIME + 1.0])


def test_duhamel_sweep_matches_single_evaluations(scattering, dipole):
    series = scattering.duhamel_series(dipole, FINAL_TIME, [1.0, 1.5])
    assert np.allclose(series[1.5], scattering.duhamel_z2(dipole, FINAL_TIME, 1.5), atol=1e-14)


def test_zero_tolerance_fails_node_doubling(normalized_model, spectral_3d, plan, dipole):
    strict = _manager(normalized_model, spectral_3d, plan, tolerance=0.0)
    with pytest.raises(QuadratureNotConvergedError):
        strict.duhamel_z2(dipole, FINAL_TIME, 1.0)


def test_node_doubling_change_is_measured_per_time(normalized_model, spectral_3d, plan, dipole):
    loose = _manager(normalized_model, spectral_3d, plan, tolerance=1.0)
    loose.duhamel_series(dipole, FINAL_TIME, [1.0, 1.5, FINAL_TIME - 0.05])
    change = loose.last_quadrature_change
    assert 0.0 < change < 1e-5
    strict = _manager(normalized_model, spectral_3d, plan, tolerance=0.5 * change)
    with pytest.raises(QuadratureNotConvergedError):
        strict.duhamel_series(dipole, FINAL_TIME, [1.0, 1.5, FINAL_TIME - 0.05])
    relaxed = _manager(normalized_model, spectral_3d, plan, tolerance=2.0 * change)
    relaxed.duhamel_series(dipole, FINAL_TIME, [1.0, 1.5, FINAL_TIME - 0.05])
    assert relaxed.last_quadrature_change == pytest.approx(change)


def test_second_approximation_splits_exactly(line_scattering, line_dipole):
    scattering, dipole = line_scattering[0], line_dipole
    z2 = scattering.duhamel_z2(dipole, FINAL_TIME, 1.0)
    z21 = scattering.z21_direct(dipole, FINAL_TIME, 1.0)
    z22 = scattering.z22_part(dipole, FINAL_TIME, 1.0)
    assert np.linalg.norm(z2 - z21 - z22) <= 1e-10 * np.linalg.norm(z2)


def test_real_part_of_z22_by_two_paths(line_scattering, line_dipole):
    scattering, dipole = line_scattering[0], line_dipole
    direct, subtracted = scattering.re_z22_two_path(dipole, FINAL_TIME, 1.0)
    assert np.max(np.abs(direct - subtracted)) <= 1e-10 * max(np.max(np.abs(direct)), 1e-300)


def test_second_approximation_is_quadratic(scattering, dipole):
    assert scattering.homogeneity_exponent(dipole, 0.5, FINAL_TIME, 1.0) == pytest.approx(2.0, abs=0.05)


def test_second_approximation_series(scattering, dipole):
    series = scattering.second_approximation_series(dipole, FINAL_TIME, [1.0, 1.5, FINAL_TIME])
    assert set(series) == {"re_z2_l2", "re_z2_scaled", "z2_l2", "z2_hdot_alpha"}
    assert series["z2_l2"].times == [1.0, 1.5, FINAL_TIME]
    assert series["z2_l2"].values[-1] == 0.0
    assert series["re_z2_scaled"].values[0] == pytest.approx(series["re_z2_l2"].values[0])


def test_final_data_solve_runs_backward_from_final_time(scattering, dipole):
    trajectory = scattering.final_data_solve(dipole, FINAL_TIME, [1.5])
    assert trajectory.get_times() == [FINAL_TIME, 1.5, 1.0]
    _, start = trajectory.sorted_items()[-1]
    assert np.allclose(start.z, scattering.linear_profile_z1(dipole, FINAL_TIME))


def test_small_data_solution_follows_the_second_approximation(scattering, dipole):
    trajectory = scattering.final_data_solve(dipole, FINAL_TIME, [1.5])
    series, supremum = scattering.bootstrap_series(trajectory, dipole, FINAL_TIME, 1.0)
    assert len(series.times) == 3
    z = trajectory.state_at(1.0).z
    z1 = scattering.linear_profile_z1(dipole, 1.0)
    first_order = np.linalg.norm(z - z1)
    assert first_order > 0
    assert np.linalg.norm(z - z1 - scattering.duhamel_z2(dipole, FINAL_TIME, 1.0)) < 0.1 * first_order
    assert np.isfinite(supremum)


def test_diagnostic_series_follow_the_trajectory(scattering, dipole):
    trajectory = scattering.final_data_solve(dipole, FINAL_TIME, [1.5])
    density, velocity = scattering.scattering_error(trajectory, dipole)
    assert density.times == [1.0, 1.5, FINAL_TIME]
    assert velocity.values[-1] == pytest.approx(0.0, abs=1e-12)
    names = [series.name for series in scattering.remainder_series(trajectory, dipole, 1.0)]
    assert names == ["remainder_hdot1", "remainder_hdot_sreg", "ell_minus_re_z1", "ell_l2_times_linf"]


def test_cauchy_differences_pair_successive_final_times(scattering, dipole):
    trajectories = {T: scattering.final_data_solve(dipole, T, [1.5]) for T in (FINAL_TIME, 3.0)}
    rows = scattering.cauchy_differences(trajectories, [1.0, 1.5], 1.0)
    assert len(rows) == 1
    assert rows[0]["T_low"] == FINAL_TIME and rows[0]["T_high"] == 3.0
    assert rows[0]["difference"] > 0


def test_primitive_scheme_cannot_solve_final_data(normalized_model, spectral_3d, plan, dipole):
    manager = _manager(normalized_model, spectral_3d, plan, scheme=SolverScheme.RK4_PSEUDOSPECTRAL)
    with pytest.raises(ConfigError):
        manager.final_data_solve(dipole, FINAL_TIME, [])


def test_fit_uses_the_plan_window(scattering, caplog):
    series = DecaySeries("short", [1.0, 2.0], [1.0, 0.5])
    with caplog.at_level(logging.WARNING):
        scattering.fit(series, FINAL_TIME, wrap_horizon=10.0)
    assert series.fit is None
    assert series.wrap_horizon == 10.0


@pytest.fixture
def line_scattering(normalized_model, plan):
    spectral = SpectralManager(Grid.cubic(1, 256, 64.0))
    return _manager(normalized_model, spectral, plan), spectral


@pytest.fixture
def line_dipole(line_scattering):
    _, spectral = line_scattering
    return ProfileManager(spectral, LittlewoodPaleyManager(spectral), s_reg=1.0).gaussian_dipole(0.01, 2.0)


def test_vector_field_matches_its_direct_form(line_scattering):
    manager, spectral = line_scattering
    (x,) = spectral.grid.centered_coordinates
    field = np.exp(-x ** 2 / 8.0) * np.exp(0.5j * x)
    by_propagator = manager.vector_field_J(field, 1.0)
    direct = manager.vector_field_J_direct(field, 1.0)
    assert np.allclose(by_propagator[0], direct[0], atol=1e-9)


def test_vector_field_identity_constant_is_two(line_scattering):
    manager, spectral = line_scattering
    (x,) = spectral.grid.centered_coordinates
    first = np.exp(-x ** 2 / 8.0)
    second = np.exp(-(x - 1.0) ** 2 / 6.0) * np.exp(0.3j * x)
    assert manager.identity_constant(first, second, 1.0) == pytest.approx(2.0, abs=1e-6)
    with pytest.raises(ValueError):
        manager.identity_constant(first, second, 0.0)


def test_dispersive_ratios(line_scattering, line_dipole):
    manager, _ = line_scattering
    profile = line_dipole
    rows, linf = manager.dispersive_ratios(profile, [1.0, 2.0, 4.0])
    assert len(rows) == 12
    assert all(row["ratio"] == pytest.approx(1.0) for row in rows if row["p"] == 2.0)
    assert all(row["ratio"] <= 1.0 + 1e-9 for row in rows if np.isinf(row["p"]))
    assert linf.values == sorted(linf.values, reverse=True)
