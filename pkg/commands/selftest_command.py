import logging
from typing import Any, Dict, List, Optional

from commands.interfaces import ICommand
from utils.report_manager import ReportManager
from utils.selftest_manager import SelfTestManager

logger = logging.getLogger(__name__)


class SelfTestCommand(ICommand):
    """Runs the invariant suites and writes one CSV row per check."""

    def __init__(self, selftest_manager: SelfTestManager, report_manager: ReportManager,
                 suites: Optional[List[str]] = None) -> None:
        self._manager = selftest_manager
        self._report_manager = report_manager
        self._suites = suites

    def execute(self) -> Dict[str, Any]:
        checks = self._manager.run(self._suites)
        rows = [check.to_dict() for check in checks]
        self._report_manager.write_table("selftest_table", rows,
                                         fieldnames=["suite", "check", "value", "bound", "passed"])
        failed = [f"{check.suite}.{check.name}" for check in checks if not check.passed]
        logger.info("Self-test: %d of %d checks passed", len(rows) - len(failed), len(rows))
        return {"checks": rows, "total": len(rows), "failed": failed, "all_passed": not failed}
