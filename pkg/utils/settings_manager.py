import copy
import logging
import os
import re
from enum import Enum
from typing import Any, Dict, List, Optional, Type, TypeVar

from data_classes.experiment_plan import ExperimentPlan
from data_classes.grid import Grid
from data_classes.resonance_symbol import ResonanceSymbol
from data_classes.solver_config import SolverConfig
from enums.kappa_family import KappaFamily
from enums.pressure_family import PressureFamily
from enums.profile_generator import ProfileGenerator
from enums.resonance_label import ResonanceSection
from enums.solver_scheme import SolverScheme
from exceptions.config_error import ConfigError
from input_output.file_handler import FileHandler
from model.capillarity_laws import PowerLawCapillarity
from model.capillarity_model import CapillarityModel, TruncatedCapillarityModel
from model.pressure_laws import PolynomialPressure

logger = logging.getLogger(__name__)

E = TypeVar("E", bound=Enum)

# numeric keys that also accept null (JSON only)
NULLABLE_NUMBERS = {("solver", "defect_tolerance")}


class SettingsManager:
    """
    Loads the experiment configuration: the user file is deep-merged over the documented defaults,
    validated key by key, and turned into the laboratory's value objects.
    """

    def __init__(self, file_handler: FileHandler) -> None:
        """
        Args:
            file_handler (FileHandler): Reads the defaults and the user file.
        """
        self._file_handler = file_handler
        self._defaults: Dict[str, Any] = file_handler.read_file("experiment_defaults")
        self._settings: Dict[str, Any] = copy.deepcopy(self._defaults)
        self._source = "<defaults>"
        self._lines: List[str] = []

    @property
    def settings(self) -> Dict[str, Any]:
        """The effective configuration."""
        return self._settings

    @property
    def source(self) -> str:
        return self._source

    def load(self, config_path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """
        Reads a TOML or JSON configuration and applies CLI overrides.

        Args:
            config_path (str, optional): The user file; defaults only if None.
            overrides (Dict[str, Any], optional): Dotted keys ('output.directory') mapped to values.

        Returns:
            Dict[str, Any]: The effective configuration.

        Raises:
            ConfigError: On syntax errors, unknown keys or mistyped values, anchored at '<file>:<line>'.
        """
        settings = copy.deepcopy(self._defaults)
        if config_path:
            if not os.path.exists(config_path):
                raise ConfigError(f"{config_path}: configuration file not found")
            self._source = config_path
            with open(config_path, "r", encoding="utf-8") as file:
                self._lines = file.read().splitlines()
            try:
                user = self._file_handler.read_file(config_path)
            except ValueError as error:
                raise ConfigError(f"{config_path}: use a .toml or .json configuration ({error})") from error
            if not isinstance(user, dict):
                raise ConfigError(f"{config_path}:1: configuration must be a table of sections")
            self._merge(settings, user, self._defaults, section=None)
        for dotted, value in (overrides or {}).items():
            if value is None:
                continue
            *sections, key = dotted.split(".")
            target = settings
            for name in sections:
                target = target[name]
            target[key] = value
        self._settings = settings
        logger.info("Configuration loaded from %s", self._source)
        return settings

    def _line_of(self, key: str, section: Optional[str]) -> int:
        """
        Line number of a key, searched inside its [section] for TOML files and anywhere for JSON.
        """
        pattern = re.compile(rf'^\s*"?{re.escape(key)}"?\s*[=:]')
        current = None
        fallback = 0
        for number, line in enumerate(self._lines, start=1):
            header = re.match(r"^\s*\[([^\]]+)\]", line)
            if header:
                current = header.group(1).strip()
                continue
            if pattern.search(line):
                if current == section or section is None:
                    return number
                fallback = fallback or number
        return fallback or 1

    def _error(self, message: str, key: str, section: Optional[str]) -> ConfigError:
        return ConfigError(f"{self._source}:{self._line_of(key, section)}: {message}")

    def _merge(self, target: Dict[str, Any], user: Dict[str, Any], defaults: Dict[str, Any],
               section: Optional[str]) -> None:
        for key, value in user.items():
            where = f"[{section}]" if section else "top level"
            if key not in defaults:
                raise self._error(f"unknown key '{key}' at {where}", key, section)
            default = defaults[key]
            if isinstance(default, dict):
                if not isinstance(value, dict):
                    raise self._error(f"'{key}' must be a section", key, section)
                self._merge(target[key], value, default, key)
                continue
            target[key] = self._checked(key, value, default, section)

    def _checked(self, key: str, value: Any, default: Any, section: Optional[str]) -> Any:
        if value is None and (section, key) in NULLABLE_NUMBERS:
            return value
        expected = type(default)
        if expected is bool:
            valid = isinstance(value, bool)
        elif expected is float:
            valid = isinstance(value, (int, float)) and not isinstance(value, bool)
            value = float(value) if valid else value
        elif expected is int:
            valid = isinstance(value, int) and not isinstance(value, bool)
        elif expected is list:
            valid = isinstance(value, list)
            if valid and default:
                element = type(default[0])
                numeric = element in (int, float)
                for item in value:
                    if numeric and not (isinstance(item, (int, float)) and not isinstance(item, bool)):
                        valid = False
                    elif not numeric and not isinstance(item, element):
                        valid = False
        else:
            valid = isinstance(value, expected)
        if not valid:
            raise self._error(f"'{key}' expects {expected.__name__}, got {value!r}", key, section)
        return value

    def section(self, name: str) -> Dict[str, Any]:
        return self._settings[name]

    @property
    def rng_seed(self) -> int:
        return int(self._settings["rng_seed"])

    @property
    def threads(self) -> int:
        return max(1, int(self._settings["output"]["threads"]))

    def parse_enum(self, enum_class: Type[E], section: str, key: str) -> E:
        """
        Maps a lower-case configuration string onto an enum member.

        Raises:
            ConfigError: If the string names no member.
        """
        value = str(self._settings[section][key])
        try:
            return enum_class[value.upper().replace("-", "_")]
        except KeyError:
            choices = ", ".join(member.name.lower() for member in enum_class)
            raise self._error(f"'{key}' must be one of {choices}, got '{value}'", key, section) from None

    # builders

    def build_grid(self) -> Grid:
        grid = self._settings["grid"]
        try:
            return Grid.from_axes(int(grid["dim"]), int(grid["points"]), float(grid["box_length"]))
        except ValueError as error:
            raise self._error(str(error), "points", "grid") from error

    def build_model(self) -> CapillarityModel:
        """
        Capillarity and pressure laws, the working interval J and the linear/truncated switches.
        """
        section = self._settings["model"]
        family = self.parse_enum(KappaFamily, "model", "kappa_family")
        pressure_family = self.parse_enum(PressureFamily, "model", "pressure")
        exponent = float(section["kappa_exponent"]) if family is KappaFamily.POWER else None
        capillarity = PowerLawCapillarity(family, float(section["kappa0"]), exponent)
        try:
            pressure = PolynomialPressure(pressure_family, section["pressure_coefficients"],
                                          float(section["pressure_offset"]))
        except ConfigError as error:
            raise self._error(str(error), "pressure_coefficients", "model") from error
        interval = section["density_interval"]
        if len(interval) != 2:
            raise self._error("'density_interval' needs two values", "density_interval", "model")
        try:
            model = CapillarityModel(capillarity, pressure, (interval[0], interval[1]), section["linear_only"])
        except ValueError as error:
            raise self._error(str(error), "density_interval", "model") from error
        return TruncatedCapillarityModel(model) if section["truncated"] else model

    def build_solver_config(self) -> SolverConfig:
        section = self._settings["solver"]
        try:
            return SolverConfig(dt=float(section["dt"]),
                                scheme=self.parse_enum(SolverScheme, "solver", "scheme"),
                                dealias=section["dealias"],
                                max_step_rejections=int(section["max_step_rejections"]),
                                defect_tolerance=section["defect_tolerance"],
                                snapshot_cadence=max(1, int(self._settings["output"]["snapshot_cadence"])),
                                safety=float(section["safety"]),
                                amplitude_ceiling=float(section["amplitude_ceiling"]))
        except ValueError as error:
            raise self._error(str(error), "dt", "solver") from error

    def build_plan(self, wrap_horizon: Optional[float] = None) -> ExperimentPlan:
        section = self._settings["plan"]
        try:
            return ExperimentPlan(final_times=[float(t) for t in section["final_times"]],
                                  sample_count=int(section["sample_count"]),
                                  s_reg=float(section["s_reg"]),
                                  quadrature_order=int(section["quadrature_order"]),
                                  panel_width=float(section["panel_width"]),
                                  wrap_horizon=wrap_horizon)
        except ValueError as error:
            raise self._error(str(error), "final_times", "plan") from error

    def profile_generator(self) -> ProfileGenerator:
        return self.parse_enum(ProfileGenerator, "profile", "generator")

    def resonance_section(self) -> ResonanceSection:
        return self.parse_enum(ResonanceSection, "resonance", "section")

    def resonance_symbol(self) -> ResonanceSymbol:
        signs = str(self._settings["resonance"]["signs"])
        try:
            return ResonanceSymbol.from_signs(signs)
        except ValueError as error:
            raise self._error(str(error), "signs", "resonance") from error
