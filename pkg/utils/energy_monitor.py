import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import cumulative_trapezoid

from data_classes.energy_report import EnergyReport
from data_classes.fluid_state import FluidState, MadelungState
from exceptions.density_range_violation import DensityRangeViolation
from model.capillarity_model import CapillarityModel
from model.trajectory_model import TrajectoryModel
from observer.interfaces import IObserver
from utils.madelung_processor import MadelungProcessor
from utils.spectral_manager import SpectralManager

logger = logging.getLogger(__name__)


class EnergyMonitor(IObserver):
    """
    Online diagnostics of a trajectory: the gauge-weighted energy E_gamma, the continuation integral
    int (||Lap rho||_inf + ||div u||_inf) dt and the density range.

    Attach it to a TrajectoryModel; every appended snapshot is measured. Physical conditions set flags.
    """

    def __init__(self, model: CapillarityModel, spectral_manager: SpectralManager,
                 madelung_processor: MadelungProcessor, gamma: float, integral_ceiling: float = 1e3,
                 reference: Optional[FluidState] = None) -> None:
        """
        Args:
            model (CapillarityModel): The fluid.
            spectral_manager (SpectralManager): Spectral substrate.
            madelung_processor (MadelungProcessor): Converts complex snapshots.
            gamma (float): Derivative half-order of the weighted energy.
            integral_ceiling (float): Largest continuation integral still counted as finite.
            reference (FluidState, optional): State subtracted from v and u before weighting.
        """
        if gamma < 0:
            raise ValueError(f"gamma must be nonnegative, got {gamma}")
        self._model = model
        self._spectral = spectral_manager
        self._madelung = madelung_processor
        self._gamma = gamma
        self._ceiling = integral_ceiling
        self._reference = reference
        self._samples: List[Tuple[float, float, float, float, float, float]] = []
        self._range_ok = True

    @property
    def gamma(self) -> float:
        return self._gamma

    def reset(self) -> None:
        self._samples.clear()
        self._range_ok = True

    def weighted_energy(self, state: FluidState, reference: Optional[FluidState] = None) -> float:
        """
        E_gamma = ||phi(rho) |xi|^{2 gamma} v||^2 + ||phi(rho) |xi|^{2 gamma} u||^2 with v = grad L(rho)
        and phi the gauge weight of order gamma.

        Args:
            state (FluidState): State with rho in J.
            reference (FluidState, optional): Pair subtracted from (v, u) before the multiplier.

        Returns:
            float: The energy.

        Raises:
            DensityRangeViolation: If rho leaves J.
        """
        spectral = self._spectral
        v = spectral.gradient(self._model.ell_of_rho(state.rho))
        u = state.u
        if reference is not None:
            v = tuple(a - b for a, b in zip(v, spectral.gradient(self._model.ell_of_rho(reference.rho))))
            u = tuple(a - b for a, b in zip(u, reference.u))
        weight = self._model.gauge_phi(state.rho, self._gamma)
        total = 0.0
        for component in tuple(v) + tuple(u):
            smoothed = spectral.fractional_laplacian(component, 2.0 * self._gamma)
            total += spectral.lebesgue_norm(weight * smoothed, 2) ** 2
        return float(total)

    def update(self, publisher: TrajectoryModel) -> None:
        t, state = publisher.latest()
        self.observe(t, state)

    def observe(self, t: float, state) -> None:
        """
        Measures one snapshot, complex or primitive.
        """
        spectral = self._spectral
        laplacian_z = np.nan
        fluid: Optional[FluidState] = None
        if isinstance(state, MadelungState):
            laplacian_z = spectral.lebesgue_norm(spectral.laplacian(state.z), np.inf)
            try:
                fluid = self._madelung.from_complex(state)
            except DensityRangeViolation as error:
                logger.warning("Snapshot at t = %.6g outside J: %s", t, error)
                self._range_ok = False
        else:
            fluid = state
        if fluid is None:
            self._samples.append((t, np.nan, np.nan, np.nan, np.nan, laplacian_z))
            return
        rho_min, rho_max = float(fluid.rho.min()), float(fluid.rho.max())
        integrand = (spectral.lebesgue_norm(spectral.laplacian(fluid.rho), np.inf)
                     + spectral.lebesgue_norm(spectral.divergence(fluid.u), np.inf))
        try:
            energy = self.weighted_energy(fluid, self._reference)
        except DensityRangeViolation as error:
            logger.warning("Snapshot at t = %.6g outside J: %s", t, error)
            self._range_ok = False
            energy = np.nan
        self._samples.append((float(t), energy, integrand, rho_min, rho_max, laplacian_z))

    @property
    def continuation_ok(self) -> bool:
        return self.report().continuation_ok

    def report(self) -> EnergyReport:
        """
        Sorts the samples by time and accumulates both integrals with the trapezoid rule.
        """
        report = EnergyReport(self._gamma)
        if not self._samples:
            return report
        samples = sorted(self._samples, key=lambda sample: sample[0])
        times = np.array([s[0] for s in samples])
        integrand = np.nan_to_num(np.array([s[2] for s in samples]), nan=np.inf)
        laplacian_z = np.nan_to_num(np.array([s[5] for s in samples]), nan=0.0)
        report.times = times.tolist()
        report.energies = [s[1] for s in samples]
        report.rho_min = [s[3] for s in samples]
        report.rho_max = [s[4] for s in samples]
        if times.size > 1:
            report.blowup_integral = cumulative_trapezoid(integrand, times, initial=0.0).tolist()
            report.laplacian_z_integral = cumulative_trapezoid(laplacian_z, times, initial=0.0).tolist()
        else:
            report.blowup_integral = [0.0]
            report.laplacian_z_integral = [0.0]
        low, high = self._model.density_interval
        inside = all(np.isfinite(lo) and low <= lo and hi <= high for lo, hi in zip(report.rho_min, report.rho_max))
        report.range_ok = self._range_ok and inside
        report.integral_ok = bool(np.isfinite(report.blowup_integral[-1]) and report.blowup_integral[-1] < self._ceiling)
        return report

    def blowup_monitor(self, trajectory: TrajectoryModel) -> EnergyReport:
        """
        Replays a finished trajectory through the monitor.
        """
        self.reset()
        for t, state in zip(trajectory.get_times(), trajectory.get_states()):
            self.observe(t, state)
        return self.report()

    @staticmethod
    def concatenate(reports: Sequence[EnergyReport]) -> float:
        """Sum of the final continuation integrals of consecutive segments."""
        return float(sum(r.blowup_integral[-1] for r in reports if r.blowup_integral))
