import logging
from typing import Sequence

import numpy as np

from data_classes.fluid_state import FluidState, MadelungState
from exceptions.non_irrotational_input import NonIrrotationalInputError
from model.capillarity_model import CapillarityModel
from utils.spectral_manager import SpectralManager

logger = logging.getLogger(__name__)

TINY = 1e-300


class MadelungProcessor:
    """
    Converts between primitive variables (rho, u) and z = L(rho) + i psi for irrotational flow.
    """

    def __init__(self, model: CapillarityModel, spectral_manager: SpectralManager,
                 curl_tolerance: float = 1e-8) -> None:
        self._model = model
        self._spectral = spectral_manager
        self._curl_tolerance = curl_tolerance

    def curl_diagnostic(self, u: Sequence[np.ndarray]) -> float:
        """
        ||curl u||_{L^2} / max(||grad u||_{L^2}, tiny); zero in one dimension.

        Args:
            u (Sequence[np.ndarray]): Velocity components.

        Returns:
            float: The relative curl.
        """
        dim = len(u)
        if dim == 1:
            return 0.0
        derivatives = [self._spectral.gradient(np.asarray(component, dtype=float)) for component in u]
        # derivatives[j][i] = d_i u_j
        gradient_norm = np.sqrt(sum(self._spectral.lebesgue_norm(derivatives[j][i], 2) ** 2
                                    for i in range(dim) for j in range(dim)))
        curl_squared = 0.0
        for i in range(dim):
            for j in range(i + 1, dim):
                curl_squared += self._spectral.lebesgue_norm(derivatives[j][i] - derivatives[i][j], 2) ** 2
        return float(np.sqrt(curl_squared) / max(gradient_norm, TINY))

    def to_complex(self, state: FluidState) -> MadelungState:
        """
        Builds z = L(rho) + i psi with grad psi = u and psi of zero mean.

        Args:
            state (FluidState): Irrotational state with rho in J.

        Returns:
            MadelungState: The complex field.

        Raises:
            NonIrrotationalInputError: If u has a mean flow or its curl diagnostic exceeds the tolerance.
            DensityRangeViolation: If rho leaves J.
        """
        velocity_norm = np.sqrt(sum(self._spectral.lebesgue_norm(component, 2) ** 2 for component in state.u))
        mean_flow = np.array([np.mean(component) for component in state.u])
        if np.linalg.norm(mean_flow) * np.sqrt(state.grid.volume) > self._curl_tolerance * max(velocity_norm, TINY):
            raise NonIrrotationalInputError(
                f"Velocity carries a mean flow {mean_flow.tolist()}, which is not a periodic gradient")
        curl = self.curl_diagnostic(state.u)
        if curl > self._curl_tolerance:
            raise NonIrrotationalInputError(f"Velocity is not irrotational: relative curl {curl:.3e}")
        ell = self._model.ell_of_rho(state.rho)
        psi = self._spectral.inverse_laplacian(self._spectral.divergence(state.u))
        return MadelungState(state.grid, ell + 1j * psi)

    def from_complex(self, mstate: MadelungState) -> FluidState:
        """
        Recovers rho = L^{-1}(Re z) and u = grad Im z.

        Raises:
            DensityRangeViolation: If Re z leaves L(J).
        """
        rho = self._model.rho_of_ell(mstate.ell)
        u = self._spectral.gradient(np.ascontiguousarray(mstate.psi))
        return FluidState(mstate.grid, rho, u)

    def potential_residual(self, state: FluidState, mstate: MadelungState) -> float:
        """||grad psi - u||_{L^2} / ||u||_{L^2}."""
        gradient = self._spectral.gradient(np.ascontiguousarray(mstate.psi))
        residual = np.sqrt(sum(self._spectral.lebesgue_norm(g - u, 2) ** 2 for g, u in zip(gradient, state.u)))
        norm = np.sqrt(sum(self._spectral.lebesgue_norm(u, 2) ** 2 for u in state.u))
        return float(residual / max(norm, TINY))
