from abc import ABC, abstractmethod
from typing import Any, Dict


class ICommand(ABC):
    @abstractmethod
    def execute(self) -> Dict[str, Any]:
        """
        Runs the experiment, writes its tables through the report manager and returns the
        'results' section of the report.
        """
        pass
