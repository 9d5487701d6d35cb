from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Tuple, Union

import numpy as np


@dataclass(frozen=True)
class Grid:
    """
    Periodic grid on the box [0, L_1) x ... x [0, L_d).

    Attributes:
        dim (int): Spatial dimension, one of 1, 2, 3.
        points_per_axis (Tuple[int, ...]): Grid points per axis, each a power of two >= 8.
        box_length (Tuple[float, ...]): Period per axis.
    """

    dim: int
    points_per_axis: Tuple[int, ...]
    box_length: Tuple[float, ...]

    def __post_init__(self) -> None:
        if self.dim not in (1, 2, 3):
            raise ValueError(f"Grid dimension must be 1, 2 or 3, got {self.dim}")
        points = tuple(int(n) for n in self.points_per_axis)
        lengths = tuple(float(length) for length in self.box_length)
        if len(points) != self.dim or len(lengths) != self.dim:
            raise ValueError(
                f"Expected {self.dim} axis entries, got points={points}, lengths={lengths}")
        for n in points:
            if n < 8 or n & (n - 1):
                raise ValueError(f"Points per axis must be a power of two >= 8, got {n}")
        for length in lengths:
            if length <= 0:
                raise ValueError(f"Box length must be positive, got {length}")
        object.__setattr__(self, "points_per_axis", points)
        object.__setattr__(self, "box_length", lengths)

    @classmethod
    def cubic(cls, dim: int, points: int, length: float) -> "Grid":
        """
        Builds a grid with the same resolution and period on every axis.

        Args:
            dim (int): Spatial dimension.
            points (int): Points per axis.
            length (float): Period per axis.

        Returns:
            Grid: The grid.
        """
        return cls(dim, (points,) * dim, (length,) * dim)

    @classmethod
    def from_axes(cls, dim: int, points: Union[int, Sequence[int]], length: Union[float, Sequence[float]]) -> "Grid":
        points = (points,) * dim if isinstance(points, int) else tuple(points)
        length = (float(length),) * dim if isinstance(length, (int, float)) else tuple(length)
        return cls(dim, points, length)

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.points_per_axis

    @property
    def total_points(self) -> int:
        return int(np.prod(self.points_per_axis))

    @cached_property
    def spacing(self) -> Tuple[float, ...]:
        return tuple(length / n for length, n in zip(self.box_length, self.points_per_axis))

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))

    @property
    def volume(self) -> float:
        return float(np.prod(self.box_length))

    @cached_property
    def wavenumbers(self) -> Tuple[np.ndarray, ...]:
        """1-D lattices xi_k = 2 pi k / L, k in [-n/2, n/2), in FFT order."""
        return tuple(2.0 * np.pi * np.fft.fftfreq(n, d=h)
                     for n, h in zip(self.points_per_axis, self.spacing))

    @cached_property
    def odd_wavenumbers(self) -> Tuple[np.ndarray, ...]:
        """Wavenumbers with the Nyquist mode zeroed, used by odd-order derivatives."""
        lattices = []
        for n, k in zip(self.points_per_axis, self.wavenumbers):
            k = k.copy()
            k[n // 2] = 0.0
            lattices.append(k)
        return tuple(lattices)

    def _broadcast(self, axis: int, values: np.ndarray) -> np.ndarray:
        shape = [1] * self.dim
        shape[axis] = values.size
        return values.reshape(shape)

    @cached_property
    def wavevector(self) -> Tuple[np.ndarray, ...]:
        """Broadcastable wavevector components (full lattice)."""
        return tuple(self._broadcast(axis, k) for axis, k in enumerate(self.wavenumbers))

    @cached_property
    def odd_wavevector(self) -> Tuple[np.ndarray, ...]:
        return tuple(self._broadcast(axis, k) for axis, k in enumerate(self.odd_wavenumbers))

    @cached_property
    def xi_squared(self) -> np.ndarray:
        total = np.zeros(self.shape)
        for component in self.wavevector:
            total = total + component ** 2
        return total

    @cached_property
    def xi_norm(self) -> np.ndarray:
        return np.sqrt(self.xi_squared)

    @cached_property
    def coordinates(self) -> Tuple[np.ndarray, ...]:
        """Broadcastable physical coordinates x_j = j h."""
        return tuple(self._broadcast(axis, np.arange(n) * h)
                     for axis, (n, h) in enumerate(zip(self.points_per_axis, self.spacing)))

    @cached_property
    def centered_coordinates(self) -> Tuple[np.ndarray, ...]:
        """Coordinates measured from the box centre."""
        return tuple(x - length / 2.0 for x, length in zip(self.coordinates, self.box_length))

    @cached_property
    def centered_radius_squared(self) -> np.ndarray:
        total = np.zeros(self.shape)
        for x in self.centered_coordinates:
            total = total + x ** 2
        return total

    def describe(self) -> dict:
        return {"dim": self.dim,
                "points_per_axis": list(self.points_per_axis),
                "box_length": list(self.box_length)}
