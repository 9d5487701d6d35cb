import logging
from typing import Dict, Optional, Sequence

import numpy as np

from data_classes.besov_index import BesovIndex
from data_classes.profile import Profile, ProfileNormReport
from data_classes.spectral_field import SpectralField
from enums.profile_generator import ProfileGenerator
from utils.littlewood_paley_manager import LittlewoodPaleyManager
from utils.spectral_manager import SpectralManager

logger = logging.getLogger(__name__)

BOUNDARY_TAIL = 1e-10


class ProfileManager:
    """
    Generates mean-zero scattering profiles and measures the smallness aggregate epsilon_0.
    """

    def __init__(self, spectral_manager: SpectralManager, littlewood_paley_manager: LittlewoodPaleyManager,
                 s_reg: float = 2.6, threshold: float = 100.0) -> None:
        """
        Args:
            spectral_manager (SpectralManager): Spectral substrate.
            littlewood_paley_manager (LittlewoodPaleyManager): Dyadic blocks for the B^1_{1,1} norm.
            s_reg (float): Regularity index; the high norm is H^{3 s_reg + 7}.
            threshold (float): epsilon_0 below which a profile counts as admissible.
        """
        self._spectral = spectral_manager
        self._lp = littlewood_paley_manager
        self._s_reg = s_reg
        self._threshold = threshold

    def _mean_free(self, data: np.ndarray) -> np.ndarray:
        coefficients = self._spectral.forward(np.asarray(data, dtype=np.complex128))
        coefficients.flat[0] = 0.0
        return self._spectral.inverse(coefficients)

    def _shifted_coordinates(self, center: Optional[Sequence[float]]):
        center = center or [0.0] * self._spectral.grid.dim
        return [x - c for x, c in zip(self._spectral.grid.centered_coordinates, center)]

    def gaussian_dipole(self, amplitude: float, width: float, center: Optional[Sequence[float]] = None,
                        axis: int = 0) -> Profile:
        """
        phi = A (x_axis / w) exp(-|x|^2 / (2 w^2)) about the box centre (plus offset), zero mode removed.

        Args:
            amplitude (float): A.
            width (float): w.
            center (Sequence[float], optional): Offset from the box centre.
            axis (int): Axis of the dipole.

        Returns:
            Profile: The profile with its norm report.
        """
        x = self._shifted_coordinates(center)
        radius_squared = sum(xi ** 2 for xi in x)
        data = amplitude * (x[axis] / width) * np.exp(-radius_squared / (2.0 * width ** 2))
        parameters = {"amplitude": amplitude, "width": width, "center": list(center or []), "axis": axis}
        return self.build(ProfileGenerator.GAUSSIAN_DIPOLE, self._mean_free(data), parameters)

    def ring_packet(self, amplitude: float, width: float, wavenumber: float,
                    center: Optional[Sequence[float]] = None) -> Profile:
        """
        Packet whose spectrum exp(-(|xi| - k0)^2 w^2 / 2) sits on the sphere |xi| = k0, centred in the box,
        scaled to max |phi| = A.
        """
        grid = self._spectral.grid
        offset = [length / 2.0 + c for length, c in zip(grid.box_length, center or [0.0] * grid.dim)]
        phase = sum(k * o for k, o in zip(grid.wavevector, offset))
        spectrum = np.exp(-((grid.xi_norm - wavenumber) ** 2) * width ** 2 / 2.0) * np.exp(-1j * phase)
        spectrum = spectrum.astype(np.complex128)
        spectrum.flat[0] = 0.0
        data = self._spectral.inverse(spectrum)
        peak = np.abs(data).max()
        data = amplitude * data / peak if peak > 0 else data
        parameters = {"amplitude": amplitude, "width": width, "wavenumber": wavenumber, "center": list(center or [])}
        return self.build(ProfileGenerator.RING_PACKET, data, parameters)

    def from_snapshot(self, field: SpectralField, source: str = "") -> Profile:
        """
        Wraps a loaded field; the zero mode is kept so admissibility is judged on the data as given.
        """
        data = self._spectral.to_physical(field).data
        return self.build(ProfileGenerator.USER_SNAPSHOT, data, {"source": source})

    def scaled(self, profile: Profile, factor: float) -> Profile:
        parameters = dict(profile.parameters)
        parameters["amplitude"] = parameters.get("amplitude", 1.0) * factor
        return self.build(profile.generator, profile.field.data * factor, parameters)

    def build(self, generator: ProfileGenerator, data: np.ndarray, parameters: Dict[str, object]) -> Profile:
        field = SpectralField.physical(self._spectral.grid, data)
        return Profile(generator, field, parameters, self.profile_norms(field))

    def boundary_tail(self, data: np.ndarray) -> float:
        """
        Largest modulus on the box faces relative to the maximal modulus.
        """
        modulus = np.abs(np.asarray(data))
        peak = modulus.max()
        if peak == 0:
            return 0.0
        tail = 0.0
        for axis in range(modulus.ndim):
            face = np.take(modulus, 0, axis=axis)
            tail = max(tail, float(face.max()))
        return tail / peak

    def profile_norms(self, field: SpectralField) -> ProfileNormReport:
        """
        The smallness aggregate: H^{3s+7} + H_dot^{-2} + B^1_{1,1} + ||x^2 phi||_{H^1}, x from the box centre.

        Args:
            field (SpectralField): The profile phi.

        Returns:
            ProfileNormReport: Ingredients and admissibility.

        Raises:
            DegenerateInputError: If the zero mode of phi does not vanish.
        """
        data = self._spectral.physical_data(field)
        high_order = 3.0 * self._s_reg + 7.0
        negative = self._spectral.sobolev_norm(data, -2.0, homogeneous=True)
        high = self._spectral.sobolev_norm(data, high_order)
        besov = self._lp.inhomogeneous_b11_norm(data)
        weighted = self._spectral.sobolev_norm(self._spectral.grid.centered_radius_squared * data, 1.0)
        tail = self.boundary_tail(data)
        if tail > BOUNDARY_TAIL:
            logger.warning("Profile tail %.2e at the box boundary; weighted norms feel the box size", tail)
        return ProfileNormReport(high_sobolev=high, negative_sobolev=negative, besov_b11=besov,
                                 weighted_h1=weighted, high_order=high_order, threshold=self._threshold,
                                 wrap_caveat=tail > BOUNDARY_TAIL)
