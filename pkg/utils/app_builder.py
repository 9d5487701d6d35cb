import logging
from typing import Any, Dict, Optional

from controller.controller import Controller
from input_output.file_handler import FileHandler
from utils.path_manager import PathManager
from utils.report_manager import ReportManager
from utils.settings_manager import SettingsManager

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"


class AppBuilder:
    def __init__(self, version: str, log_level: str = "INFO") -> None:
        self._version = version
        self._log_level = log_level

    def configure_logging(self) -> None:
        logging.basicConfig(level=getattr(logging, self._log_level.upper(), logging.INFO), format=LOG_FORMAT)

    def build_app(self, config_path: Optional[str] = None,
                  overrides: Optional[Dict[str, Any]] = None) -> Controller:
        """
        Builds the controller of one laboratory run.

        Args:
            config_path (str, optional): TOML or JSON experiment file; documented defaults only if None.
            overrides (Dict[str, Any], optional): Dotted configuration keys set from CLI flags.

        Returns:
            Controller: The wired controller.

        Raises:
            ConfigError: If the configuration cannot be loaded.
        """
        logger.info("######### START INIT ###########")
        logger.info("Loading configuration")
        path_manager = PathManager()
        file_handler = FileHandler(path_manager=path_manager)
        settings_manager = SettingsManager(file_handler)
        settings = settings_manager.load(config_path, overrides)
        path_manager.update_paths(settings["output"]["directory"])
        file_handler.create_directory(file_handler.resolve_path("output_directory"))

        logger.info("Creating report manager in %s", path_manager.out_directory)
        report_manager = ReportManager(file_handler, self._version, "csv" in settings["output"]["formats"])

        logger.info("Creating controller")
        controller = Controller(settings_manager, report_manager, file_handler)
        logger.info("######### END INIT ###########")
        return controller
