from dataclasses import dataclass
from typing import List

import numpy as np

INNER_RADIUS = 0.75
OUTER_RADIUS = 4.0 / 3.0


def chi(radius: np.ndarray) -> np.ndarray:
    """
    Radial low-frequency bump: 1 on |xi| <= 3/4, 0 on |xi| >= 4/3, smooth in between.

    Args:
        radius (np.ndarray): Values of |xi|.

    Returns:
        np.ndarray: chi(|xi|).
    """
    radius = np.asarray(radius, dtype=float)
    t = (radius - INNER_RADIUS) / (OUTER_RADIUS - INNER_RADIUS)
    out = np.where(t <= 0, 1.0, 0.0)
    inside = (t > 0) & (t < 1)
    ti = t[inside]
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - ti * ti))
    return out


def ring_bump(radius: np.ndarray) -> np.ndarray:
    """Annular bump chi(xi / 2) - chi(xi), supported in 3/4 <= |xi| <= 8/3."""
    return chi(np.asarray(radius) / 2.0) - chi(radius)


@dataclass(frozen=True)
class DyadicCutoffs:
    """
    Block index range of the dyadic partition on a finite lattice.

    Attributes:
        j_min (int): Lowest block; chi(2^{-j_min} xi) vanishes on every nonzero lattice point.
        j_max (int): Highest block; chi(2^{-j_max-1} xi) is 1 on the whole lattice.
    """

    j_min: int
    j_max: int

    @classmethod
    def for_span(cls, xi_min: float, xi_max: float) -> "DyadicCutoffs":
        """
        Chooses the smallest block range whose rings sum to 1 on [xi_min, xi_max].

        Args:
            xi_min (float): Smallest nonzero |xi| on the lattice.
            xi_max (float): Largest |xi| on the lattice.
        """
        j_min = int(np.floor(np.log2(xi_min / OUTER_RADIUS)))
        j_max = int(np.ceil(np.log2(xi_max / INNER_RADIUS))) - 1
        return cls(j_min, j_max)

    @property
    def j_range(self) -> List[int]:
        return list(range(self.j_min, self.j_max + 1))

    def __contains__(self, j: int) -> bool:
        return self.j_min <= j <= self.j_max
