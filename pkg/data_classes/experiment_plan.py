from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np


@dataclass
class ExperimentPlan:
    """
    Time bookkeeping of a final-data experiment.

    Attributes:
        final_times (List[float]): Increasing sequence T_n >= 1.
        sample_count (int): Samples per run on [1, min(T_n, t*)].
        s_reg (float): Regularity index of the bootstrap norm.
        quadrature_order (int): Gauss-Legendre nodes per panel.
        panel_width (float): Maximal quadrature panel width.
        wrap_horizon (Optional[float]): Wrap-around horizon t* of the profile.
    """

    final_times: List[float] = field(default_factory=lambda: [8.0, 16.0, 32.0])
    sample_count: int = 16
    s_reg: float = 2.6
    quadrature_order: int = 8
    panel_width: float = 0.5
    wrap_horizon: Optional[float] = None

    def __post_init__(self) -> None:
        if any(t < 1 for t in self.final_times):
            raise ValueError(f"Final times must be >= 1, got {self.final_times}")
        if any(b <= a for a, b in zip(self.final_times, self.final_times[1:])):
            raise ValueError(f"Final times must increase, got {self.final_times}")

    def sample_times(self, final_time: float) -> List[float]:
        """
        Log-spaced sample times on [1, min(T_n, t*)], always ending with T_n's clipped value.

        Args:
            final_time (float): The T_n of the run.

        Returns:
            List[float]: Increasing sample times.
        """
        upper = final_time if self.wrap_horizon is None else min(final_time, self.wrap_horizon)
        upper = max(upper, 1.0)
        return [float(t) for t in np.geomspace(1.0, upper, self.sample_count)]

    def fit_window(self, final_time: float) -> Tuple[float, float]:
        """
        Fit window [2, min(T_n, t*) / 2].
        """
        upper = final_time if self.wrap_horizon is None else min(final_time, self.wrap_horizon)
        return 2.0, upper / 2.0
