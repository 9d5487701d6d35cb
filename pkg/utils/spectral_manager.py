import logging
from functools import cached_property
from typing import Sequence, Tuple, Union

import numpy as np
import scipy.fft

from data_classes.grid import Grid
from data_classes.spectral_field import SpectralField
from enums.representation import Representation
from exceptions.degenerate_input import DegenerateInputError
from utils.interfaces import ISpectralManager

logger = logging.getLogger(__name__)

FieldLike = Union[SpectralField, np.ndarray]

ZERO_MODE_RTOL = 1e-9


class SpectralManager(ISpectralManager):
    """
    Fourier transforms, differential operators, the free propagator and norms on one periodic grid.

    Fourier coefficients use the unitary convention f_hat = sqrt(h^d) * fftn(f, norm="ortho"),
    so the coefficient l2 norm equals the physical L2 norm exactly.
    Methods accept either a SpectralField or a physical-space array and answer in kind.
    """

    def __init__(self, grid: Grid, workers: int = 1) -> None:
        """
        Args:
            grid (Grid): The periodic grid.
            workers (int): Thread count handed to scipy.fft.
        """
        self._grid = grid
        self._workers = max(1, int(workers))
        self._scale = np.sqrt(grid.cell_volume)
        logger.debug("Spectral manager on grid %s with %d FFT workers", grid.shape, self._workers)

    @property
    def grid(self) -> Grid:
        return self._grid

    @property
    def workers(self) -> int:
        return self._workers

    # transforms

    def forward(self, data: np.ndarray) -> np.ndarray:
        """Physical array to unitary Fourier coefficients."""
        return self._scale * scipy.fft.fftn(data, norm="ortho", workers=self._workers)

    def inverse(self, coefficients: np.ndarray) -> np.ndarray:
        """Unitary Fourier coefficients to a complex physical array."""
        return scipy.fft.ifftn(coefficients, norm="ortho", workers=self._workers) / self._scale

    def to_fourier(self, field: SpectralField) -> SpectralField:
        if not field.is_physical:
            return field
        return field.with_data(self.forward(field.data), Representation.FOURIER)

    def to_physical(self, field: SpectralField) -> SpectralField:
        if field.is_physical:
            return field
        return field.with_data(self.inverse(field.data), Representation.PHYSICAL)

    def physical_data(self, field: FieldLike) -> np.ndarray:
        if isinstance(field, SpectralField):
            return self.to_physical(field).data
        return np.asarray(field)

    def coefficients(self, field: FieldLike) -> np.ndarray:
        if isinstance(field, SpectralField):
            return field.data if not field.is_physical else self.forward(field.data)
        return self.forward(np.asarray(field))

    @staticmethod
    def _answer(template: FieldLike, data: np.ndarray) -> FieldLike:
        if isinstance(template, SpectralField):
            return SpectralField(template.grid, data, Representation.PHYSICAL, template.time)
        if not np.iscomplexobj(template):
            return data.real
        return data

    def apply_multiplier(self, field: FieldLike, multiplier: np.ndarray) -> FieldLike:
        """
        Applies a Fourier multiplier and returns the result in physical space.

        Real array input gives a real array back.
        """
        return self._answer(field, self.inverse(multiplier * self.coefficients(field)))

    # differential operators

    def derivative(self, field: FieldLike, multi_index: Sequence[int]) -> FieldLike:
        """
        Applies the multiplier (i xi)^alpha.

        Args:
            field (FieldLike): Input field.
            multi_index (Sequence[int]): Derivative order per axis.

        Returns:
            FieldLike: The derivative.
        """
        if len(multi_index) != self._grid.dim:
            raise ValueError(f"Multi-index {tuple(multi_index)} does not match dimension {self._grid.dim}")
        multiplier = np.ones(self._grid.shape, dtype=np.complex128)
        for axis, order in enumerate(multi_index):
            if order == 0:
                continue
            if order % 2:
                k = self._grid.odd_wavevector[axis]
            else:
                k = self._grid.wavevector[axis]
            multiplier = multiplier * (1j * k) ** order
        return self.apply_multiplier(field, multiplier)

    def gradient(self, field: FieldLike) -> Tuple[FieldLike, ...]:
        coefficients = self.coefficients(field)
        return tuple(self._answer(field, self.inverse(1j * k * coefficients))
                     for k in self._grid.odd_wavevector)

    def divergence(self, components: Sequence[FieldLike]) -> FieldLike:
        total = 0
        for k, component in zip(self._grid.odd_wavevector, components):
            total = total + 1j * k * self.coefficients(component)
        return self._answer(components[0], self.inverse(total))

    def laplacian(self, field: FieldLike) -> FieldLike:
        return self.apply_multiplier(field, -self._grid.xi_squared)

    @cached_property
    def _inverse_symbol(self) -> np.ndarray:
        symbol = np.zeros(self._grid.shape)
        nonzero = self._grid.xi_squared > 0
        symbol[nonzero] = -1.0 / self._grid.xi_squared[nonzero]
        return symbol

    def inverse_laplacian(self, field: FieldLike) -> FieldLike:
        """Inverse Laplacian on the mean-zero subspace; the zero mode of the result is 0."""
        return self.apply_multiplier(field, self._inverse_symbol)

    def fractional_laplacian(self, field: FieldLike, order: float) -> FieldLike:
        """Applies |xi|^order, with the zero mode mapped to 0 for order > 0."""
        symbol = np.zeros(self._grid.shape)
        nonzero = self._grid.xi_norm > 0
        symbol[nonzero] = self._grid.xi_norm[nonzero] ** order
        if order == 0:
            symbol[~nonzero] = 1.0
        return self.apply_multiplier(field, symbol)

    @cached_property
    def dealias_mask(self) -> np.ndarray:
        mask = np.ones(self._grid.shape, dtype=bool)
        for axis, n in enumerate(self._grid.points_per_axis):
            index = np.abs(np.fft.fftfreq(n) * n)
            shape = [1] * self._grid.dim
            shape[axis] = n
            mask = mask & (index <= n / 3).reshape(shape)
        return mask

    def dealias(self, field: FieldLike) -> FieldLike:
        """Two-thirds rule: modes with |k_index| > n/3 on any axis are removed."""
        return self.apply_multiplier(field, self.dealias_mask)

    # propagator

    def propagator_symbol(self, t: float) -> np.ndarray:
        return np.exp(-1j * t * self._grid.xi_squared)

    def free_propagate(self, field: FieldLike, t: float) -> FieldLike:
        """
        Applies e^{it Lap}, the multiplier e^{-it|xi|^2}.

        Args:
            field (FieldLike): Input field.
            t (float): Propagation time, any sign.

        Returns:
            FieldLike: Complex propagated field (a SpectralField for SpectralField input).
        """
        if t == 0:
            return field
        data = self.inverse(self.propagator_symbol(t) * self.coefficients(field))
        if isinstance(field, SpectralField):
            return SpectralField(field.grid, data, Representation.PHYSICAL, field.time + t)
        return data

    # norms

    def zero_mode(self, field: FieldLike) -> complex:
        return complex(self.coefficients(field).flat[0])

    def mean(self, field: FieldLike) -> complex:
        return complex(np.mean(self.physical_data(field)))

    def sobolev_norm(self, field: FieldLike, s: float, homogeneous: bool = False) -> float:
        """
        H^s norm with multiplier (1 + |xi|^2)^{s/2}, or the homogeneous one with |xi|^s.

        Args:
            field (FieldLike): Input field.
            s (float): Regularity index.
            homogeneous (bool): Use |xi|^s.

        Returns:
            float: The norm.

        Raises:
            DegenerateInputError: If homogeneous, s < 0 and the zero mode does not vanish.
        """
        coefficients = self.coefficients(field)
        if s == 0:
            return float(np.linalg.norm(coefficients))
        if not homogeneous:
            weight = (1.0 + self._grid.xi_squared) ** (s / 2.0)
            return float(np.linalg.norm(weight * coefficients))
        zero = abs(coefficients.flat[0])
        if s < 0 and zero > ZERO_MODE_RTOL * max(float(np.linalg.norm(coefficients)), 1e-300):
            raise DegenerateInputError(
                f"Homogeneous H^{s} norm needs a vanishing zero mode, got |f_hat(0)| = {zero:.3e}")
        weight = np.zeros(self._grid.shape)
        nonzero = self._grid.xi_norm > 0
        weight[nonzero] = self._grid.xi_norm[nonzero] ** s
        return float(np.linalg.norm(weight * coefficients))

    def lebesgue_norm(self, field: FieldLike, p: float) -> float:
        """
        L^p norm by the periodic trapezoid rule; p = inf gives the max modulus.
        """
        if p < 1:
            raise ValueError(f"Lebesgue exponent must be >= 1, got {p}")
        modulus = np.abs(self.physical_data(field))
        if np.isinf(p):
            return float(modulus.max())
        return float((np.sum(modulus ** p) * self._grid.cell_volume) ** (1.0 / p))

    def inner_product(self, first: FieldLike, second: FieldLike) -> complex:
        return complex(np.vdot(self.physical_data(first), self.physical_data(second)) * self._grid.cell_volume)

    # bookkeeping

    @cached_property
    def mode_index_radius(self) -> np.ndarray:
        total = np.zeros(self._grid.shape)
        for axis, n in enumerate(self._grid.points_per_axis):
            shape = [1] * self._grid.dim
            shape[axis] = n
            total = total + ((np.fft.fftfreq(n) * n) ** 2).reshape(shape)
        return np.sqrt(total)

    def bandwidth(self, field: FieldLike, energy_fraction: float = 0.99) -> float:
        """
        Mode-index radius holding the given fraction of the spectral energy.
        """
        energy = np.abs(self.coefficients(field)) ** 2
        total = energy.sum()
        if total == 0:
            return 0.0
        radii = self.mode_index_radius.ravel()
        order = np.argsort(radii, kind="stable")
        cumulative = np.cumsum(energy.ravel()[order])
        position = int(np.searchsorted(cumulative, energy_fraction * total))
        return float(radii[order][min(position, radii.size - 1)])

    def wrap_around_horizon(self, field: FieldLike) -> float:
        """
        Time t* = L^2 / (4 pi m_bw) after which waves at the field's bandwidth re-enter the box.

        Returns:
            float: The horizon, infinite for a field without nonzero modes.
        """
        bandwidth = self.bandwidth(field)
        if bandwidth == 0:
            return float("inf")
        length = min(self._grid.box_length)
        return length ** 2 / (4.0 * np.pi * bandwidth)

    def random_band_limited(self, rng: np.random.Generator, max_mode: int, real: bool = False,
                            mean_zero: bool = True) -> np.ndarray:
        """
        Random field whose Fourier support is |k_index| <= max_mode on every axis.

        Args:
            rng (np.random.Generator): Seeded generator.
            max_mode (int): Largest retained mode index per axis, below n / 2.
            real (bool): Return a real array.
            mean_zero (bool): Remove the zero mode.

        Returns:
            np.ndarray: Physical-space array with unit L2 norm.
        """
        mask = np.ones(self._grid.shape, dtype=bool)
        for axis, n in enumerate(self._grid.points_per_axis):
            if max_mode >= n // 2:
                raise ValueError(f"max_mode {max_mode} must stay below the Nyquist index {n // 2}")
            shape = [1] * self._grid.dim
            shape[axis] = n
            mask = mask & (np.abs(np.fft.fftfreq(n) * n) <= max_mode).reshape(shape)
        coefficients = (rng.standard_normal(self._grid.shape) + 1j * rng.standard_normal(self._grid.shape)) * mask
        if mean_zero:
            coefficients.flat[0] = 0.0
        data = self.inverse(coefficients)
        if real:
            data = data.real
        norm = self.lebesgue_norm(data, 2)
        return data / norm if norm > 0 else data
