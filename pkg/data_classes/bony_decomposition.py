from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class BonyDecomposition:
    """
    Paraproduct split fg = T_f g + R(f, g) + T_g f + mean(f) mean(g), in physical space.
    """

    paraproduct_fg: np.ndarray
    remainder: np.ndarray
    paraproduct_gf: np.ndarray
    zero_mode_correction: complex

    def reconstruct(self) -> np.ndarray:
        return self.paraproduct_fg + self.remainder + self.paraproduct_gf + self.zero_mode_correction
