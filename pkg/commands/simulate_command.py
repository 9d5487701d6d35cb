import logging
from typing import Any, Dict, List, Tuple

import numpy as np

from commands.interfaces import ICommand
from data_classes.energy_report import EnergyReport
from data_classes.fluid_state import MadelungState
from data_classes.profile import Profile
from data_classes.spectral_field import SpectralField
from exceptions.blowup_detected import BlowupDetectedError
from integrators.integrator import Integrator
from model.trajectory_model import TrajectoryModel
from utils.energy_monitor import EnergyMonitor
from utils.madelung_processor import MadelungProcessor
from utils.report_manager import ReportManager

logger = logging.getLogger(__name__)


class SimulateCommand(ICommand):
    def __init__(self, integrator: Integrator, madelung_processor: MadelungProcessor, energy_monitor: EnergyMonitor,
                 report_manager: ReportManager, profile: Profile, final_time: float, samples: int,
                 stop_on_failure: bool = True, write_snapshots: bool = False) -> None:
        """
        Forward evolution from z(0) = phi in the formulation of the configured scheme.

        Args:
            integrator (Integrator): Stepper; its scheme picks the primitive or the complex form.
            madelung_processor (MadelungProcessor): Converts z(0) for the primitive form.
            energy_monitor (EnergyMonitor): Observer attached to the trajectory.
            report_manager (ReportManager): Writes trajectory.csv, energy.csv and snapshots.
            profile (Profile): Initial datum phi, read as z = l + i psi.
            final_time (float): End of the run.
            samples (int): Number of recorded intervals on [0, final_time].
            stop_on_failure (bool): Abort once the continuation criterion fails.
            write_snapshots (bool): Write every recorded snapshot as a field file.
        """
        if final_time <= 0:
            raise ValueError(f"simulate needs a positive final time, got {final_time}")
        self._integrator = integrator
        self._processor = integrator.processor
        self._madelung = madelung_processor
        self._monitor = energy_monitor
        self._report_manager = report_manager
        self._profile = profile
        self._final_time = float(final_time)
        self._samples = max(1, int(samples))
        self._stop_on_failure = stop_on_failure
        self._write_snapshots = write_snapshots

    def execute(self) -> Dict[str, Any]:
        grid = self._profile.field.grid
        start = MadelungState(grid, self._profile.field.data)
        complex_form = self._integrator.config.scheme.is_complex_form()
        state = start if complex_form else self._madelung.from_complex(start)
        trajectory = TrajectoryModel(label="simulate")
        self._monitor.reset()
        trajectory.add_observer(self._monitor)
        sample_times = np.linspace(0.0, self._final_time, self._samples + 1)[1:-1]
        stop = (lambda: not self._monitor.continuation_ok) if self._stop_on_failure else None
        logger.info("Simulating %s form on [0, %g]", "complex" if complex_form else "primitive", self._final_time)
        try:
            self._integrator.evolve(state, 0.0, self._final_time, sample_times, trajectory, stop)
        except BlowupDetectedError as error:
            report = self._write_artefacts(trajectory)[1]
            raise BlowupDetectedError(str(error), report.to_dict()) from error
        rows, report = self._write_artefacts(trajectory)
        masses = np.array([row["mass"] for row in rows])
        energies = np.array([row["hamiltonian"] for row in rows])
        return {"formulation": "complex" if complex_form else "primitive",
                "scheme": self._integrator.config.scheme.name.lower(),
                "final_time": self._final_time,
                "snapshots": len(trajectory),
                "step_halvings": self._integrator.rejections,
                "mass_drift": float(np.max(np.abs(masses - masses[0]))),
                "hamiltonian_relative_drift": float(np.max(np.abs(energies - energies[0]))
                                                    / max(abs(energies[0]), 1e-300)),
                "energy": report.to_dict()}

    def _write_artefacts(self, trajectory: TrajectoryModel) -> Tuple[List[Dict[str, float]], EnergyReport]:
        report: EnergyReport = self._monitor.report()
        rows: List[Dict[str, float]] = []
        if len(trajectory):
            rows = self._processor.trajectory_diagnostics(trajectory, self._madelung)
        self._report_manager.write_table("trajectory_diagnostics", rows)
        self._report_manager.write_table("energy_report", report.to_rows())
        if self._write_snapshots:
            for index, (t, state) in enumerate(trajectory.sorted_items()):
                self._report_manager.write_snapshot(f"z_{index:04d}", self._as_field(t, state))
        return rows, report

    def _as_field(self, t: float, state) -> SpectralField:
        if isinstance(state, MadelungState):
            return SpectralField.physical(state.grid, state.z, t)
        spectral = self._processor.spectral_manager
        psi = spectral.inverse_laplacian(spectral.divergence(state.u))
        ell = self._processor.model.ell_of_rho(state.rho)
        return SpectralField.physical(state.grid, ell + 1j * np.real(psi), t)
