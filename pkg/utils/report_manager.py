import logging
import math
import os
from typing import Any, Dict, Iterable, List, Optional

from data_classes.decay_series import DecaySeries
from data_classes.spectral_field import SpectralField
from input_output.file_handler import FileHandler

logger = logging.getLogger(__name__)


def _plain(value: Any) -> Any:
    """Converts numpy scalars and non-finite floats into JSON-safe values."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None if math.isnan(value) else ("inf" if value > 0 else "-inf")
    return value


class ReportManager:
    """
    Writes the artefacts of one run below the output directory: report.json, CSV tables and series,
    and field snapshots. Every written path is collected for the report.
    """

    def __init__(self, file_handler: FileHandler, version: str, csv_enabled: bool = True) -> None:
        """
        Args:
            file_handler (FileHandler): Resolves '<out>' keys and writes files.
            version (str): Version string embedded in every report.
            csv_enabled (bool): Write CSV tables and series.
        """
        self._file_handler = file_handler
        self._version = version
        self._csv_enabled = csv_enabled
        self._artefacts: List[str] = []

    @property
    def version(self) -> str:
        return self._version

    @property
    def artefacts(self) -> List[str]:
        return list(self._artefacts)

    def set_csv_enabled(self, enabled: bool) -> None:
        self._csv_enabled = enabled

    def _record(self, key: str, extension: str = "") -> str:
        path = self._file_handler.resolve_path(key, extension)
        out = self._file_handler.resolve_path("output_directory")
        relative = os.path.relpath(path, out)
        if relative not in self._artefacts:
            self._artefacts.append(relative)
        return path

    def write_table(self, key: str, rows: List[Dict[str, Any]], extension: str = "",
                    fieldnames: Optional[List[str]] = None) -> Optional[str]:
        """
        Writes rows as CSV under a path key (or a directory key plus file name).
        """
        if not self._csv_enabled:
            return None
        data = {"data": [_plain(row) for row in rows]}
        if fieldnames:
            data["fieldnames"] = fieldnames
        if self._file_handler.write_file(key, data, extension):
            return self._record(key, extension)
        return None

    def write_series(self, series: Iterable[DecaySeries], prefix: str = "") -> None:
        """
        One CSV per series, 'series/<prefix><name>.csv' with columns (t, <name>).
        """
        for item in series:
            ordered = item.sorted()
            self.write_table("series_directory", ordered.to_rows(), f"{prefix}{item.name}.csv",
                             fieldnames=["t", item.name])

    def write_snapshot(self, name: str, field: SpectralField) -> Optional[str]:
        if self._file_handler.write_snapshot("snapshot_directory", field, f"{name}.field"):
            self._record("snapshot_directory", f"{name}.field")
            return self._record("snapshot_directory", f"{name}.field.meta")
        return None

    def build_report(self, subcommand: str, config: Dict[str, Any], results: Dict[str, Any],
                     context: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """
        Assembles the report record documented in report_schema.json.
        """
        report = {"version": self._version, "subcommand": subcommand, "config": config}
        report.update(context or {})
        report["results"] = results
        report["artefacts"] = self.artefacts + ["report.json"]
        return _plain(report)

    def write_report(self, report: Dict[str, Any]) -> bool:
        written = self._file_handler.write_file("report", report)
        if written:
            logger.info("Report written to %s", self._file_handler.resolve_path("report"))
        return written
