from typing import Any, Dict

from commands.interfaces import ICommand
from data_classes.resonance_symbol import ResonanceSymbol
from enums.resonance_label import ResonanceSection
from utils.report_manager import ReportManager
from utils.resonance_manager import ResonanceManager


class ResonanceMapCommand(ICommand):
    def __init__(self, resonance_manager: ResonanceManager, report_manager: ReportManager, symbol: ResonanceSymbol,
                 section: ResonanceSection, extent: float, points: int, dim: int) -> None:
        self._manager = resonance_manager
        self._report_manager = report_manager
        self._symbol = symbol
        self._section = section
        self._extent = extent
        self._points = points
        self._dim = dim

    def execute(self) -> Dict[str, Any]:
        rows = self._manager.resonance_map(self._symbol, self._section, self._extent, self._points, self._dim)
        self._report_manager.write_table("resonance_map", rows)
        return {"signs": self._symbol.signs,
                "catalog_name": self._symbol.catalog_name,
                "section": self._section.name.lower(),
                "extent": self._extent,
                "points": len(rows),
                "label_counts": self._manager.label_counts(rows)}
