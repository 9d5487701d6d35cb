import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Tuple

from commands.interfaces import ICommand
from data_classes.decay_series import DecaySeries
from data_classes.energy_report import EnergyReport
from data_classes.experiment_plan import ExperimentPlan
from data_classes.profile import Profile
from exceptions.blowup_detected import BlowupDetectedError
from model.trajectory_model import TrajectoryModel
from utils.energy_monitor import EnergyMonitor
from utils.report_manager import ReportManager
from utils.scattering_manager import ScatteringManager

logger = logging.getLogger(__name__)


class ScatterCommand(ICommand):
    """
    Final-data solves for every T_n, one thread per run, followed by the bootstrap norm, the
    scattering errors, the remainder decay series and the Cauchy differences between runs.
    """

    def __init__(self, scattering_manager: ScatteringManager, profile: Profile, plan: ExperimentPlan,
                 monitor_factory: Callable[[], EnergyMonitor], report_manager: ReportManager, threads: int = 1,
                 stop_on_failure: bool = True) -> None:
        self._manager = scattering_manager
        self._profile = profile
        self._plan = plan
        self._monitor_factory = monitor_factory
        self._report_manager = report_manager
        self._threads = max(1, int(threads))
        self._stop_on_failure = stop_on_failure

    def _common_times(self) -> List[float]:
        return self._plan.sample_times(self._plan.final_times[0])

    def _solve(self, final_time: float) -> Tuple[float, TrajectoryModel, EnergyReport]:
        times = sorted(set(self._plan.sample_times(final_time)) | set(self._common_times()))
        monitor = self._monitor_factory()
        stop = (lambda: not monitor.continuation_ok) if self._stop_on_failure else None
        try:
            trajectory = self._manager.final_data_solve(self._profile, final_time, times, [monitor], stop)
        except BlowupDetectedError as error:
            raise BlowupDetectedError(f"T_n = {final_time:g}: {error}", monitor.report().to_dict()) from error
        return final_time, trajectory, monitor.report()

    def execute(self) -> Dict[str, Any]:
        finals = self._plan.final_times
        logger.info("Final-data solves for T_n = %s on %d thread(s)", finals, self._threads)
        with ThreadPoolExecutor(max_workers=self._threads) as executor:
            solved = list(executor.map(self._solve, finals))

        s_reg = self._plan.s_reg
        wrap = self._plan.wrap_horizon
        runs = []
        trajectories: Dict[float, TrajectoryModel] = {}
        for final_time, trajectory, energy in solved:
            trajectories[final_time] = trajectory
            bootstrap, supremum = self._manager.bootstrap_series(trajectory, self._profile, final_time, s_reg)
            quadrature_change = self._manager.last_quadrature_change
            density, velocity = self._manager.scattering_error(trajectory, self._profile)
            remainders = self._manager.remainder_series(trajectory, self._profile, s_reg)
            series: List[DecaySeries] = [bootstrap, density, velocity, *remainders]
            for item in series:
                self._manager.fit(item, final_time, wrap)
            prefix = f"T{final_time:g}_"
            self._report_manager.write_series(series, prefix)
            self._report_manager.write_table("series_directory", energy.to_rows(), f"{prefix}energy.csv")
            runs.append({"final_time": final_time,
                         "samples": len(trajectory),
                         "bootstrap_Z": supremum,
                         "bootstrap_max_over_min": bootstrap.max_over_min(),
                         "quadrature_change": quadrature_change,
                         "quadrature_converged": quadrature_change <= self._manager.quadrature_tolerance,
                         "series": [item.to_dict() for item in series],
                         "energy": energy.to_dict()})

        cauchy = self._manager.cauchy_differences(trajectories, self._common_times(), s_reg)
        self._report_manager.write_table("cauchy_table", cauchy, fieldnames=["T_low", "T_high", "difference"])
        differences = [row["difference"] for row in cauchy]
        return {"final_times": list(finals),
                "wrap_horizon": wrap,
                "fit_windows": {f"{t:g}": list(self._plan.fit_window(t)) for t in finals},
                "runs": runs,
                "quadrature_change": max((run["quadrature_change"] for run in runs), default=0.0),
                "quadrature_converged": all(run["quadrature_converged"] for run in runs),
                "cauchy": cauchy,
                "cauchy_decreasing": all(b < a for a, b in zip(differences, differences[1:]))}
