import logging
from typing import Any, Dict

import numpy as np

from commands.interfaces import ICommand
from data_classes.experiment_plan import ExperimentPlan
from data_classes.profile import Profile
from utils.report_manager import ReportManager
from utils.scattering_manager import ScatteringManager
from utils.spectral_manager import SpectralManager

logger = logging.getLogger(__name__)

IDENTITY_CHECK_TIMES = 5


class SecondApproxCommand(ICommand):
    def __init__(self, scattering_manager: ScatteringManager, spectral_manager: SpectralManager, profile: Profile,
                 plan: ExperimentPlan, report_manager: ReportManager, alpha: float = 1.0,
                 homogeneity_factor: float = 0.5) -> None:
        """
        Second approximation z2 on [1, T] for the largest T_n, its decay fits and the identity checks
        of the z21/z22 split.

        Args:
            scattering_manager (ScatteringManager): Duhamel quadrature and fits.
            spectral_manager (SpectralManager): Norms of the differences.
            profile (Profile): The profile phi.
            plan (ExperimentPlan): Final times and sampling.
            report_manager (ReportManager): Writes the series.
            alpha (float): Order of the H_dot^alpha series.
            homogeneity_factor (float): Amplitude factor of the quadratic homogeneity check.
        """
        self._manager = scattering_manager
        self._spectral = spectral_manager
        self._profile = profile
        self._plan = plan
        self._report_manager = report_manager
        self._alpha = alpha
        self._factor = homogeneity_factor

    def _relative(self, difference: np.ndarray, reference: np.ndarray) -> float:
        scale = self._spectral.lebesgue_norm(reference, 2)
        error = self._spectral.lebesgue_norm(difference, 2)
        return float(error / scale) if scale > 0 else float(error)

    def execute(self) -> Dict[str, Any]:
        final_time = self._plan.final_times[-1]
        times = self._plan.sample_times(final_time)
        wrap = self._plan.wrap_horizon
        series = self._manager.second_approximation_series(self._profile, final_time, times, self._alpha)
        for item in series.values():
            self._manager.fit(item, final_time, wrap)
        self._report_manager.write_series(series.values())

        two_path = []
        for t in np.geomspace(1.0, times[-1], IDENTITY_CHECK_TIMES):
            direct, subtracted = self._manager.re_z22_two_path(self._profile, final_time, float(t))
            two_path.append({"t": float(t), "difference": self._spectral.lebesgue_norm(direct - subtracted, 2),
                             "relative": self._relative(direct - subtracted, direct)})

        middle = float(times[len(times) // 2])
        z2 = self._manager.duhamel_z2(self._profile, final_time, middle)
        split = (self._manager.z21_direct(self._profile, final_time, middle)
                 + self._manager.z22_part(self._profile, final_time, middle))
        exponent = self._manager.homogeneity_exponent(self._profile, self._factor, final_time, middle)

        z1 = self._manager.linear_profile_z1(self._profile, 1.0)
        constant = self._manager.identity_constant(z1, self._spectral.derivative(z1, [1] + [0] * (z1.ndim - 1)), 1.0)
        logger.info("Second approximation: homogeneity exponent %.3f, identity constant %.6f", exponent, constant)
        return {"final_time": final_time,
                "wrap_horizon": wrap,
                "alpha": self._alpha,
                "series": [item.to_dict() for item in series.values()],
                "re_z2_scaled_max_over_min": series["re_z2_scaled"].max_over_min(),
                "re_z22_two_path": two_path,
                "re_z22_two_path_max_difference": max(row["difference"] for row in two_path),
                "split_check_time": middle,
                "split_relative_difference": self._relative(z2 - split, z2),
                "homogeneity_factor": self._factor,
                "homogeneity_exponent": exponent,
                "identity_constant": constant}
