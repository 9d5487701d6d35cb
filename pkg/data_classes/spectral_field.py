from dataclasses import dataclass, field, replace

import numpy as np

from data_classes.grid import Grid
from enums.representation import Representation


@dataclass(frozen=True, eq=False)
class SpectralField:
    """
    A complex field on a periodic grid, carried in physical or Fourier representation.

    Attributes:
        grid (Grid): The grid the data lives on.
        data (np.ndarray): Complex array of shape grid.shape.
        representation (Representation): How data is to be read.
        time (float): Time stamp, carried into snapshots.
    """

    grid: Grid
    data: np.ndarray
    representation: Representation = field(default=Representation.PHYSICAL)
    time: float = field(default=0.0)

    def __post_init__(self) -> None:
        data = np.asarray(self.data, dtype=np.complex128)
        if data.shape != self.grid.shape:
            raise ValueError(f"Data shape {data.shape} does not match grid shape {self.grid.shape}")
        object.__setattr__(self, "data", data)

    @classmethod
    def physical(cls, grid: Grid, data: np.ndarray, time: float = 0.0) -> "SpectralField":
        return cls(grid, data, Representation.PHYSICAL, time)

    @classmethod
    def zeros(cls, grid: Grid) -> "SpectralField":
        return cls(grid, np.zeros(grid.shape, dtype=np.complex128))

    @property
    def is_physical(self) -> bool:
        return self.representation is Representation.PHYSICAL

    def with_data(self, data: np.ndarray, representation: Representation = None) -> "SpectralField":
        """
        Returns a copy carrying new data, keeping grid and time stamp.

        Args:
            data (np.ndarray): Replacement data.
            representation (Representation, optional): Replacement representation, defaults to the current one.

        Returns:
            SpectralField: The new field.
        """
        return replace(self, data=data, representation=representation or self.representation)
