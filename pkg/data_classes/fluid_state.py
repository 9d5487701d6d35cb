from dataclasses import dataclass
from typing import Tuple

import numpy as np

from data_classes.grid import Grid


@dataclass(frozen=True, eq=False)
class FluidState:
    """
    Primitive variables on a grid.

    Attributes:
        grid (Grid): The grid.
        rho (np.ndarray): Real density.
        u (Tuple[np.ndarray, ...]): Real velocity components, one per axis.
    """

    grid: Grid
    rho: np.ndarray
    u: Tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rho", np.asarray(self.rho, dtype=float))
        object.__setattr__(self, "u", tuple(np.asarray(component, dtype=float) for component in self.u))
        if len(self.u) != self.grid.dim:
            raise ValueError(f"Velocity needs {self.grid.dim} components, got {len(self.u)}")

    @classmethod
    def equilibrium(cls, grid: Grid) -> "FluidState":
        return cls(grid, np.ones(grid.shape), tuple(np.zeros(grid.shape) for _ in range(grid.dim)))

    def copy(self) -> "FluidState":
        return FluidState(self.grid, self.rho.copy(), tuple(component.copy() for component in self.u))


@dataclass(frozen=True, eq=False)
class MadelungState:
    """
    The complex field z = l + i psi on a grid (physical representation).
    """

    grid: Grid
    z: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "z", np.asarray(self.z, dtype=np.complex128))

    @property
    def ell(self) -> np.ndarray:
        return self.z.real

    @property
    def psi(self) -> np.ndarray:
        return self.z.imag
