import logging
from typing import Any, Dict, List

import numpy as np

from commands.interfaces import ICommand
from data_classes.besov_index import BesovIndex
from data_classes.selftest_check import SelfTestCheck
from utils.littlewood_paley_manager import LittlewoodPaleyManager
from utils.report_manager import ReportManager
from utils.spectral_manager import SpectralManager

logger = logging.getLogger(__name__)

BERNSTEIN_LOW = 0.75 * 0.9
BERNSTEIN_HIGH = 8.0 / 3.0 * 1.1


class VerifyBesovCommand(ICommand):
    """
    Littlewood-Paley suite on the configured grid: partition of unity, block reconstruction, the
    Bony split, Bernstein ratios, the B_dot^0_{2,2} / L^2 comparison, interpolation and the
    paraproduct bound.
    """

    def __init__(self, spectral_manager: SpectralManager, littlewood_paley_manager: LittlewoodPaleyManager,
                 report_manager: ReportManager, rng: np.random.Generator, trials: int = 10) -> None:
        self._spectral = spectral_manager
        self._lp = littlewood_paley_manager
        self._report_manager = report_manager
        self._rng = rng
        self._trials = max(1, int(trials))

    def _max_mode(self) -> int:
        return max(1, min(self._spectral.grid.points_per_axis) // 4)

    def execute(self) -> Dict[str, Any]:
        spectral = self._spectral
        lp = self._lp
        reconstruction = bony = 0.0
        bernstein = []
        b022 = []
        interpolation = 0.0
        paraproduct = 0.0
        for _ in range(self._trials):
            f = spectral.random_band_limited(self._rng, self._max_mode(), mean_zero=False)
            g = spectral.random_band_limited(self._rng, self._max_mode(), mean_zero=False)
            total = sum(lp.blocks(f).values())
            reconstruction = max(reconstruction, spectral.lebesgue_norm(total - (f - spectral.mean(f)), 2)
                                 / spectral.lebesgue_norm(f, 2))
            product = f * g
            bony = max(bony, spectral.lebesgue_norm(lp.bony_decompose(f, g).reconstruct() - product, 2)
                       / spectral.lebesgue_norm(product, 2))
            for j in lp.j_range[1:-1]:
                ratio = lp.bernstein_check(lp.dyadic_block(f, j), j, 2.0, np.inf).derivative_ratio
                if ratio > 0:
                    bernstein.append(ratio)
            centred = f - spectral.mean(f)
            b022.append(lp.besov_norm(centred, BesovIndex(0.0, 2.0, 2.0)) / spectral.lebesgue_norm(centred, 2))
            theta = float(self._rng.uniform(0.1, 0.9))
            interpolation = max(interpolation, lp.interpolation_ratio(centred, 0.5, 2.0, theta))
            paraproduct = max(paraproduct, lp.paraproduct_bound_ratio(f, g))

        residual = lp.partition_residual()
        checks: List[SelfTestCheck] = [
            SelfTestCheck("besov", "partition_of_unity", residual, "<= 1e-10", residual <= 1e-10),
            SelfTestCheck("besov", "littlewood_paley_reconstruction", reconstruction, "<= 1e-10",
                          reconstruction <= 1e-10),
            SelfTestCheck("besov", "bony_reconstruction", bony, "<= 1e-10", bony <= 1e-10),
        ]
        if bernstein:
            low, high = min(bernstein), max(bernstein)
            checks.append(SelfTestCheck("besov", "bernstein_derivative_ratio_min", low, f">= {BERNSTEIN_LOW:.4g}",
                                        low >= BERNSTEIN_LOW))
            checks.append(SelfTestCheck("besov", "bernstein_derivative_ratio_max", high, f"<= {BERNSTEIN_HIGH:.4g}",
                                        high <= BERNSTEIN_HIGH))
        low, high = min(b022), max(b022)
        checks.append(SelfTestCheck("besov", "b022_over_l2_min", low, ">= 0.7071", low >= np.sqrt(0.5) - 1e-12))
        checks.append(SelfTestCheck("besov", "b022_over_l2_max", high, "<= 1", high <= 1.0 + 1e-12))
        checks.append(SelfTestCheck("besov", "interpolation_ratio", interpolation, "<= 1",
                                    interpolation <= 1.0 + 1e-12))
        checks.append(SelfTestCheck("besov", "paraproduct_bound_ratio", paraproduct, "finite",
                                    bool(np.isfinite(paraproduct))))

        rows = [check.to_dict() for check in checks]
        self._report_manager.write_table("besov_table", rows, fieldnames=["suite", "check", "value", "bound", "passed"])
        failed = [check.name for check in checks if not check.passed]
        if failed:
            logger.warning("Besov checks failed: %s", failed)
        return {"j_range": [lp.cutoffs.j_min, lp.cutoffs.j_max],
                "checks": rows,
                "all_passed": not failed}
