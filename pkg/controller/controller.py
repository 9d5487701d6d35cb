import logging
from functools import wraps
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from commands.gauge_command import GaugeCommand
from commands.interfaces import ICommand
from commands.resonance_map_command import ResonanceMapCommand
from commands.scatter_command import ScatterCommand
from commands.second_approx_command import SecondApproxCommand
from commands.selftest_command import SelfTestCommand
from commands.simulate_command import SimulateCommand
from commands.verify_besov_command import VerifyBesovCommand
from commands.verify_dispersive_command import VerifyDispersiveCommand
from controller.interfaces import IController
from data_classes.experiment_plan import ExperimentPlan
from data_classes.profile import Profile
from enums.profile_generator import ProfileGenerator
from exceptions.blowup_detected import BlowupDetectedError
from exceptions.config_error import ConfigError
from exceptions.selftest_failed import SelfTestFailedError
from input_output.file_handler import FileHandler
from integrators.integrator import Integrator
from utils.decay_analyzer import DecayAnalyzer
from utils.energy_monitor import EnergyMonitor
from utils.littlewood_paley_manager import LittlewoodPaleyManager
from utils.madelung_processor import MadelungProcessor
from utils.nonlinearity_processor import NonlinearityProcessor
from utils.profile_manager import ProfileManager
from utils.report_manager import ReportManager
from utils.resonance_manager import ResonanceManager
from utils.scattering_manager import ScatteringManager
from utils.selftest_manager import SelfTestManager
from utils.settings_manager import SettingsManager
from utils.spectral_manager import SpectralManager

logger = logging.getLogger(__name__)


class Controller(IController):
    """
    Wires the laboratory from the effective configuration and dispatches subcommands to commands.
    """

    def __init__(self, settings_manager: SettingsManager, report_manager: ReportManager,
                 file_handler: FileHandler) -> None:
        """
        Args:
            settings_manager (SettingsManager): Loaded configuration and value-object builders.
            report_manager (ReportManager): Writes report.json and the tables.
            file_handler (FileHandler): Reads user snapshots.
        """
        self._settings_manager = settings_manager
        self._report_manager = report_manager
        self._file_handler = file_handler
        settings = settings_manager

        # dependencies
        self._grid = settings.build_grid()
        self._spectral_manager = SpectralManager(self._grid, settings.threads)
        self._littlewood_paley_manager = LittlewoodPaleyManager(self._spectral_manager)
        self._model = settings.build_model()
        self._solver_config = settings.build_solver_config()
        self._madelung_processor = MadelungProcessor(self._model, self._spectral_manager)
        self._processor = NonlinearityProcessor(self._model, self._spectral_manager, self._solver_config.dealias)
        self._decay_analyzer = DecayAnalyzer()
        plan = settings.section("plan")
        monitor = settings.section("monitor")
        self._profile_manager = ProfileManager(self._spectral_manager, self._littlewood_paley_manager,
                                               float(plan["s_reg"]), float(monitor["smallness_threshold"]))

        # built on first use; selftest, gauge and resonance-map never need them
        self._profile: Optional[Profile] = None
        self._plan: Optional[ExperimentPlan] = None

        self._commands: Dict[str, Callable[[], ICommand]] = {
            "simulate": self._simulate_command,
            "scatter": self._scatter_command,
            "second-approx": self._second_approx_command,
            "verify-dispersive": self._verify_dispersive_command,
            "verify-besov": self._verify_besov_command,
            "gauge": self._gauge_command,
            "resonance-map": self._resonance_map_command,
            "selftest": self._selftest_command,
        }
        logger.info("Laboratory on a %s grid, model %s", "x".join(map(str, self._grid.points_per_axis)),
                    "unit-normalized" if self._model.unit_normalized else
                    f"c_a = {self._model.c_a:.4g}, c_g = {self._model.c_g:.4g}")

    # decorators
    def with_report(method):
        """
        Decorator writing report.json after the command ran. A blow-up still gets a report holding
        the partial energy diagnostics before the error propagates.
        """
        @wraps(method)
        def wrapper(self, name: str, command: ICommand) -> Dict[str, Any]:
            try:
                results = method(self, name, command)
            except BlowupDetectedError as error:
                self._write_report(name, {"error": error.to_record(), "energy": error.report})
                raise
            return self._write_report(name, results)
        return wrapper

    @property
    def subcommands(self) -> List[str]:
        return list(self._commands)

    @property
    def spectral_manager(self) -> SpectralManager:
        return self._spectral_manager

    @property
    def profile(self) -> Profile:
        if self._profile is None:
            self._profile = self._build_profile()
        return self._profile

    @property
    def plan(self) -> ExperimentPlan:
        if self._plan is None:
            horizon = self._spectral_manager.wrap_around_horizon(self.profile.field.data)
            logger.info("Wrap-around horizon t* = %.4g", horizon)
            self._plan = self._settings_manager.build_plan(horizon)
        return self._plan

    def run_subcommand(self, name: str) -> Dict[str, Any]:
        factory = self._commands.get(name)
        if factory is None:
            raise ConfigError(f"Unknown subcommand '{name}', expected one of {', '.join(self._commands)}")
        logger.info("Running %s", name)
        report = self._execute_command(name, factory())
        if name == "selftest" and not report["results"]["all_passed"]:
            raise SelfTestFailedError(f"Self-test checks failed: {', '.join(report['results']['failed'])}")
        return report

    @with_report
    def _execute_command(self, name: str, command: ICommand) -> Dict[str, Any]:
        return command.execute()

    def _write_report(self, name: str, results: Dict[str, Any]) -> Dict[str, Any]:
        context: Dict[str, Any] = {"model": self._model.describe(), "grid": self._grid.describe(),
                                   "solver": self._solver_config.to_dict()}
        if self._profile is not None:
            context["profile"] = self._profile.describe()
        report = self._report_manager.build_report(name, self._settings_manager.settings, results, context)
        self._report_manager.write_report(report)
        return report

    # builders

    def _build_profile(self) -> Profile:
        section = self._settings_manager.section("profile")
        generator = self._settings_manager.profile_generator()
        center = [float(c) for c in section["center"]] or None
        if center is not None and len(center) != self._grid.dim:
            raise ConfigError(f"profile.center needs {self._grid.dim} entries, got {len(center)}")
        amplitude = float(section["amplitude"])
        width = float(section["width"])
        if generator is ProfileGenerator.GAUSSIAN_DIPOLE:
            axis = int(section["axis"])
            if not 0 <= axis < self._grid.dim:
                raise ConfigError(f"profile.axis must lie in [0, {self._grid.dim}), got {axis}")
            profile = self._profile_manager.gaussian_dipole(amplitude, width, center, axis)
        elif generator is ProfileGenerator.RING_PACKET:
            profile = self._profile_manager.ring_packet(amplitude, width, float(section["wavenumber"]), center)
        else:
            path = section["snapshot"]
            if not path:
                raise ConfigError("profile.snapshot must name a .field file for the user_snapshot generator")
            field = self._file_handler.read_snapshot(path)
            if field.grid != self._grid:
                raise ConfigError(f"Snapshot {path} lives on {field.grid.describe()}, "
                                  f"the configured grid is {self._grid.describe()}")
            profile = self._profile_manager.from_snapshot(field, path)
        norms = profile.norms
        logger.info("Profile %s: epsilon_0 = %.4g (%s)", generator.name.lower(), norms.epsilon0,
                    "admissible" if norms.admissible else "above threshold")
        return profile

    def _integrator(self) -> Integrator:
        integrator = Integrator(self._processor, self._solver_config)
        limit = integrator.stability_dt()
        if self._solver_config.dt > limit:
            logger.warning("dt = %.3g exceeds the stability estimate %.3g of %s", self._solver_config.dt, limit,
                           self._solver_config.scheme.name.lower())
        return integrator

    def _energy_monitor(self) -> EnergyMonitor:
        monitor = self._settings_manager.section("monitor")
        return EnergyMonitor(self._model, self._spectral_manager, self._madelung_processor,
                             float(monitor["gamma"]), float(monitor["integral_ceiling"]))

    def _scattering_manager(self) -> ScatteringManager:
        plan = self._settings_manager.section("plan")
        return ScatteringManager(self._processor, self._madelung_processor, self._decay_analyzer,
                                 self._solver_config, self.plan, float(plan["quadrature_tolerance"]),
                                 self._settings_manager.threads)

    # commands

    def _simulate_command(self) -> ICommand:
        section = self._settings_manager.section("simulate")
        output = self._settings_manager.section("output")
        return SimulateCommand(self._integrator(), self._madelung_processor, self._energy_monitor(),
                               self._report_manager, self.profile, float(section["final_time"]),
                               int(section["samples"]),
                               self._settings_manager.section("monitor")["stop_on_failure"],
                               int(output["snapshot_cadence"]) > 0)

    def _scatter_command(self) -> ICommand:
        self._integrator()  # dt check only; the backward integrator lives in the scattering manager
        return ScatterCommand(self._scattering_manager(), self.profile, self.plan, self._energy_monitor,
                              self._report_manager, self._settings_manager.threads,
                              self._settings_manager.section("monitor")["stop_on_failure"])

    def _second_approx_command(self) -> ICommand:
        plan = self._settings_manager.section("plan")
        return SecondApproxCommand(self._scattering_manager(), self._spectral_manager, self.profile, self.plan,
                                   self._report_manager, float(plan["alpha"]), float(plan["homogeneity_factor"]))

    def _verify_dispersive_command(self) -> ICommand:
        return VerifyDispersiveCommand(self._scattering_manager(), self._decay_analyzer, self.profile,
                                       self._report_manager, self.plan.wrap_horizon,
                                       int(self._settings_manager.section("plan")["dispersive_times"]))

    def _verify_besov_command(self) -> ICommand:
        rng = np.random.default_rng(self._settings_manager.rng_seed)
        return VerifyBesovCommand(self._spectral_manager, self._littlewood_paley_manager, self._report_manager, rng,
                                  int(self._settings_manager.section("selftest")["trials"]))

    def _gauge_command(self) -> ICommand:
        section = self._settings_manager.section("gauge")
        return GaugeCommand(self._model, self._report_manager, float(section["rho_min"]), float(section["rho_max"]),
                            int(section["samples"]), section["gammas"])

    def _resonance_map_command(self) -> ICommand:
        section = self._settings_manager.section("resonance")
        manager = ResonanceManager(float(section["tolerance"]), float(section["inverse_ceiling"]))
        return ResonanceMapCommand(manager, self._report_manager, self._settings_manager.resonance_symbol(),
                                   self._settings_manager.resonance_section(), float(section["extent"]),
                                   int(section["points"]), self._grid.dim)

    def _selftest_command(self) -> ICommand:
        manager = SelfTestManager(self._settings_manager.rng_seed, self._settings_manager.threads,
                                  int(self._settings_manager.section("selftest")["trials"]))
        return SelfTestCommand(manager, self._report_manager)
