from abc import ABC, abstractmethod
from typing import Any, Dict, List

from commands.interfaces import ICommand


class IController(ABC):
    @abstractmethod
    def _execute_command(self, name: str, command: ICommand) -> Dict[str, Any]:
        """Executes the command of a subcommand and returns its results."""
        pass

    @property
    @abstractmethod
    def subcommands(self) -> List[str]:
        """Names accepted by run_subcommand."""
        pass

    @abstractmethod
    def run_subcommand(self, name: str) -> Dict[str, Any]:
        """
        Runs one subcommand and writes its report and artefacts.

        Args:
            name (str): The subcommand, e.g. 'scatter'.

        Returns:
            Dict[str, Any]: The report written to report.json.

        Raises:
            LaboratoryError: With the category of the failure.
        """
        pass
