import logging
from typing import Any, Dict

import numpy as np

from commands.interfaces import ICommand
from data_classes.profile import Profile
from utils.decay_analyzer import DecayAnalyzer
from utils.report_manager import ReportManager
from utils.scattering_manager import ScatteringManager

logger = logging.getLogger(__name__)

EXPONENTS = (2.0, 3.0, 6.0, np.inf)


class VerifyDispersiveCommand(ICommand):
    """
    Ratios ||e^{it Lap} g||_{L^p} / (t^{d/p - d/2} ||g||_{L^{p'}}) over log-spaced t in [1, t*/2]
    and the fitted L^inf decay slope, expected to be -d/2.
    """

    def __init__(self, scattering_manager: ScatteringManager, decay_analyzer: DecayAnalyzer, profile: Profile,
                 report_manager: ReportManager, wrap_horizon: float, count: int = 24) -> None:
        self._manager = scattering_manager
        self._analyzer = decay_analyzer
        self._profile = profile
        self._report_manager = report_manager
        self._wrap = wrap_horizon
        self._count = max(2, int(count))

    def execute(self) -> Dict[str, Any]:
        upper = self._wrap / 2.0 if np.isfinite(self._wrap) else 1.0
        if upper <= 1.0:
            logger.warning("Wrap-around horizon %.4g leaves no window [1, t*/2]", self._wrap)
            times = np.array([1.0])
        else:
            times = np.geomspace(1.0, upper, self._count)
        rows, supremum = self._manager.dispersive_ratios(self._profile, times, EXPONENTS)
        supremum.wrap_horizon = self._wrap
        self._analyzer.fit_series(supremum, (1.0, upper))
        self._report_manager.write_table("dispersive_table", rows, fieldnames=["t", "p", "norm", "ratio"])
        self._report_manager.write_series([supremum])

        dim = self._profile.field.grid.dim
        maxima = {}
        for p in EXPONENTS:
            ratios = [row["ratio"] for row in rows if row["p"] == p]
            maxima["inf" if np.isinf(p) else f"{p:g}"] = max(ratios, default=0.0)
        return {"window": [1.0, upper],
                "wrap_horizon": self._wrap,
                "expected_slope": -dim / 2.0,
                "linf_series": supremum.to_dict(),
                "max_ratio_per_p": maxima}
