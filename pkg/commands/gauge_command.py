from typing import Any, Dict, Sequence

import numpy as np

from commands.interfaces import ICommand
from model.capillarity_model import CapillarityModel
from utils.report_manager import ReportManager


class GaugeCommand(ICommand):
    """Tabulates phi(rho), phi / sqrt(rho) and the gauge ODE residual over a density grid and gamma list."""

    def __init__(self, model: CapillarityModel, report_manager: ReportManager, rho_min: float, rho_max: float,
                 samples: int, gammas: Sequence[float]) -> None:
        if not 0 < rho_min <= rho_max:
            raise ValueError(f"Gauge table needs 0 < rho_min <= rho_max, got [{rho_min}, {rho_max}]")
        self._model = model
        self._report_manager = report_manager
        self._rho = np.linspace(rho_min, rho_max, max(1, int(samples)))
        self._gammas = [float(gamma) for gamma in gammas]

    def execute(self) -> Dict[str, Any]:
        rows = []
        worst_residual = 0.0
        worst_ratio_deviation = 0.0
        for gamma in self._gammas:
            phi = self._model.gauge_phi(self._rho, gamma)
            ratio = phi / np.sqrt(self._rho)
            residual = self._model.gauge_ode_residual(self._rho, gamma)
            worst_residual = max(worst_residual, float(np.max(np.abs(residual))))
            worst_ratio_deviation = max(worst_ratio_deviation, float(np.max(np.abs(ratio - 1.0))))
            for rho, value, scaled, error in zip(self._rho, phi, ratio, residual):
                rows.append({"gamma": gamma, "rho": float(rho), "phi": float(value),
                             "phi_over_sqrt_rho": float(scaled), "residual": float(error)})
        self._report_manager.write_table("gauge_table", rows,
                                         fieldnames=["gamma", "rho", "phi", "phi_over_sqrt_rho", "residual"])
        return {"gammas": self._gammas,
                "rho_range": [float(self._rho[0]), float(self._rho[-1])],
                "max_abs_residual": worst_residual,
                "max_abs_phi_over_sqrt_rho_minus_1": worst_ratio_deviation,
                "rows": len(rows)}
