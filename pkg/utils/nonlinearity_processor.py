import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from data_classes.fluid_state import FluidState, MadelungState
from model.capillarity_model import CapillarityModel
from model.trajectory_model import TrajectoryModel
from utils.madelung_processor import MadelungProcessor
from utils.spectral_manager import SpectralManager

logger = logging.getLogger(__name__)


class NonlinearityProcessor:
    """
    Right-hand sides of the two formulations: the nonlinearity F of dz/dt = i Lap z + F(z),
    its quadratic and cubic parts, and the primitive velocity-form system with its Korteweg term.

    When dealias is set, every product-bearing output is passed through the two-thirds rule.
    """

    def __init__(self, model: CapillarityModel, spectral_manager: SpectralManager, dealias: bool = True) -> None:
        self._model = model
        self._spectral = spectral_manager
        self._dealias = dealias

    @property
    def model(self) -> CapillarityModel:
        return self._model

    @property
    def spectral_manager(self) -> SpectralManager:
        return self._spectral

    @property
    def dealias(self) -> bool:
        return self._dealias

    def filtered(self, field: np.ndarray) -> np.ndarray:
        """Applies the two-thirds rule when dealiasing is on."""
        return self._spectral.dealias(field) if self._dealias else field

    def _real_gradients(self, z: np.ndarray) -> Tuple[Tuple[np.ndarray, ...], Tuple[np.ndarray, ...]]:
        grad_ell = self._spectral.gradient(np.ascontiguousarray(z.real))
        grad_psi = self._spectral.gradient(np.ascontiguousarray(z.imag))
        return grad_ell, grad_psi

    # complex formulation

    def full_nonlinearity(self, z: np.ndarray) -> np.ndarray:
        """
        F(z) = -grad psi . grad l + i(|grad l|^2 / 2 - |grad psi|^2 / 2 - gtilde(l)) + i atilde(l) Lap z.

        Args:
            z (np.ndarray): Complex field l + i psi.

        Returns:
            np.ndarray: F(z), identically zero for a linear-only model.

        Raises:
            DensityRangeViolation: If l leaves L(J).
        """
        z = np.asarray(z, dtype=np.complex128)
        if self._model.linear_only:
            return np.zeros_like(z)
        ell = z.real
        grad_ell, grad_psi = self._real_gradients(z)
        transport = sum(gp * gl for gp, gl in zip(grad_psi, grad_ell))
        bernoulli = 0.5 * sum(gl ** 2 for gl in grad_ell) - 0.5 * sum(gp ** 2 for gp in grad_psi)
        enthalpy = self._model.gtilde(ell)
        quasi_linear = self._model.atilde(ell) * self._spectral.laplacian(z)
        return self.filtered(-transport + 1j * (bernoulli - enthalpy) + 1j * quasi_linear)

    def scalar_right_hand_sides(self, z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        The two real equations written out separately:
        dl/dt = -Lap psi - grad psi . grad l - atilde(l) Lap psi and
        dpsi/dt = Lap l + |grad l|^2 / 2 - |grad psi|^2 / 2 + atilde(l) Lap l - gtilde(l).
        """
        z = np.asarray(z, dtype=np.complex128)
        ell = np.ascontiguousarray(z.real)
        psi = np.ascontiguousarray(z.imag)
        lap_ell = self._spectral.laplacian(ell)
        lap_psi = self._spectral.laplacian(psi)
        if self._model.linear_only:
            return -lap_psi, lap_ell
        grad_ell = self._spectral.gradient(ell)
        grad_psi = self._spectral.gradient(psi)
        atilde = self._model.atilde(ell)
        d_ell = -sum(gp * gl for gp, gl in zip(grad_psi, grad_ell)) - atilde * lap_psi
        d_psi = (0.5 * sum(gl ** 2 for gl in grad_ell) - 0.5 * sum(gp ** 2 for gp in grad_psi)
                 + atilde * lap_ell - self._model.gtilde(ell))
        if self._dealias:
            d_ell = self._spectral.dealias(d_ell)
            d_psi = self._spectral.dealias(d_psi)
        return -lap_psi + d_ell, lap_ell + d_psi

    def quadratic_part(self, z: np.ndarray, c_a: Optional[float] = None, c_g: Optional[float] = None) -> np.ndarray:
        """
        N2(z) = (i/4)(2 (grad z)^2 - c_g (z^2 + zbar^2 + 2|z|^2) + 2 c_a (z Lap z + zbar Lap z)).

        Args:
            z (np.ndarray): Complex field.
            c_a (float, optional): Override of atilde'(0).
            c_g (float, optional): Override of gtilde''(0) / 2.

        Returns:
            np.ndarray: N2(z); zero for a linear-only model.
        """
        z = np.asarray(z, dtype=np.complex128)
        if self._model.linear_only:
            return np.zeros_like(z)
        c_a = self._model.c_a if c_a is None else c_a
        c_g = self._model.c_g if c_g is None else c_g
        grad_z = self._spectral.gradient(z)
        lap_z = self._spectral.laplacian(z)
        conjugate = np.conj(z)
        square_gradient = sum(g * g for g in grad_z)
        potential = z * z + conjugate * conjugate + 2.0 * np.abs(z) ** 2
        quasi_linear = (z + conjugate) * lap_z
        return self.filtered(0.25j * (2.0 * square_gradient - c_g * potential + 2.0 * c_a * quasi_linear))

    def quadratic_part_real_form(self, z: np.ndarray, c_a: Optional[float] = None,
                                 c_g: Optional[float] = None) -> np.ndarray:
        """
        N2 in real variables: -grad psi . grad l + i(|grad l|^2 / 2 - |grad psi|^2 / 2 - c_g l^2 + c_a l Lap z).
        """
        z = np.asarray(z, dtype=np.complex128)
        if self._model.linear_only:
            return np.zeros_like(z)
        c_a = self._model.c_a if c_a is None else c_a
        c_g = self._model.c_g if c_g is None else c_g
        ell = z.real
        grad_ell, grad_psi = self._real_gradients(z)
        transport = sum(gp * gl for gp, gl in zip(grad_psi, grad_ell))
        bernoulli = 0.5 * sum(gl ** 2 for gl in grad_ell) - 0.5 * sum(gp ** 2 for gp in grad_psi)
        lap_z = self._spectral.laplacian(z)
        return self.filtered(-transport + 1j * (bernoulli - c_g * ell ** 2 + c_a * ell * lap_z))

    def cubic_remainder(self, z: np.ndarray) -> np.ndarray:
        """N3(z) = F(z) - N2(z)."""
        return self.full_nonlinearity(z) - self.quadratic_part(z)

    # primitive formulation

    def _capillary_potential(self, rho: np.ndarray) -> np.ndarray:
        grad_rho = self._spectral.gradient(rho)
        square = sum(g ** 2 for g in grad_rho)
        return self._model.kappa(rho) * self._spectral.laplacian(rho) + 0.5 * self._model.dkappa(rho) * square

    def korteweg_divergence(self, rho: np.ndarray) -> Tuple[np.ndarray, ...]:
        """
        div K(rho) = rho grad(kappa Lap rho + kappa' |grad rho|^2 / 2).

        Raises:
            DensityRangeViolation: If rho leaves J.
        """
        rho = np.asarray(rho, dtype=float)
        self._model.check_density(rho)
        gradient = self._spectral.gradient(self._capillary_potential(rho))
        return tuple(self.filtered(rho * g) for g in gradient)

    def bohm_divergence(self, rho: np.ndarray) -> Tuple[np.ndarray, ...]:
        """
        The quantum form 2 kappa0 rho grad(Lap sqrt(rho) / sqrt(rho)) of div K for kappa = kappa0 / rho.
        """
        rho = np.asarray(rho, dtype=float)
        self._model.check_density(rho)
        root = np.sqrt(rho)
        potential = self._spectral.laplacian(root) / root
        kappa0 = self._model.capillarity.kappa0
        return tuple(self.filtered(2.0 * kappa0 * rho * g) for g in self._spectral.gradient(potential))

    def primitive_right_hand_side(self, state: FluidState) -> Tuple[np.ndarray, Tuple[np.ndarray, ...]]:
        """
        drho/dt = -div(rho u), du/dt = -(u . grad) u - grad g(rho) + grad(kappa Lap rho + kappa' |grad rho|^2 / 2).

        Args:
            state (FluidState): Current state.

        Returns:
            Tuple: (drho/dt, du/dt components).

        Raises:
            DensityRangeViolation: If rho leaves J.
        """
        rho = state.rho
        self._model.check_density(rho)
        d_rho = -self._spectral.divergence([rho * u for u in state.u])
        forcing = self._capillary_potential(rho) - self._model.g_of_rho(rho)
        grad_forcing = self._spectral.gradient(forcing)
        gradients = [self._spectral.gradient(u) for u in state.u]
        d_u = []
        for i in range(state.grid.dim):
            advection = sum(state.u[j] * gradients[i][j] for j in range(state.grid.dim))
            d_u.append(self.filtered(-advection + grad_forcing[i]))
        return self.filtered(d_rho), tuple(d_u)

    def hamiltonian(self, state: FluidState) -> float:
        """
        E = int rho |u|^2 / 2 + W(rho) + kappa(rho) |grad rho|^2 / 2, W' = g, W(1) = 0.
        """
        rho = state.rho
        self._model.check_density(rho)
        kinetic = 0.5 * rho * sum(u ** 2 for u in state.u)
        capillary = 0.5 * self._model.kappa(rho) * sum(g ** 2 for g in self._spectral.gradient(rho))
        density = kinetic + self._model.potential(rho) + capillary
        return float(np.sum(density) * state.grid.cell_volume)

    def mass(self, state: FluidState) -> float:
        """int (rho - 1)."""
        return float(np.sum(state.rho - 1.0) * state.grid.cell_volume)

    def formulation_gap(self, mstate: MadelungState, state: FluidState) -> float:
        """
        Relative L^2 distance between the density carried by a complex state and a primitive one.

        Both densities are projected onto the two-thirds modes first, so differences living only in
        the unresolved band (where the two forms discretize products differently) are not counted.

        Args:
            mstate (MadelungState): Result of the complex formulation.
            state (FluidState): Result of the primitive formulation on the same grid.

        Returns:
            float: ||P(rho_z - rho)||_{L^2} / ||P(rho - 1)||_{L^2}.
        """
        rho_complex = self._model.rho_of_ell(mstate.ell)
        difference = self._spectral.dealias(np.asarray(rho_complex - state.rho, dtype=float))
        deviation = self._spectral.dealias(np.asarray(state.rho - 1.0, dtype=float))
        scale = max(self._spectral.lebesgue_norm(deviation, 2), 1e-300)
        return float(self._spectral.lebesgue_norm(difference, 2) / scale)

    def trajectory_diagnostics(self, trajectory: TrajectoryModel,
                               madelung_processor: MadelungProcessor) -> List[Dict[str, float]]:
        """
        Rows (t, mass, hamiltonian, ||l||_{L^inf}, ||div u||_{L^inf}) in time order; complex
        snapshots are converted first.
        """
        rows = []
        for t, state in trajectory.sorted_items():
            if isinstance(state, MadelungState):
                ell = state.ell
                state = madelung_processor.from_complex(state)
            else:
                ell = self._model.ell_of_rho(state.rho)
            rows.append({"t": float(t), "mass": self.mass(state), "hamiltonian": self.hamiltonian(state),
                         "ell_linf": self._spectral.lebesgue_norm(ell, np.inf),
                         "div_u_linf": self._spectral.lebesgue_norm(self._spectral.divergence(state.u), np.inf)})
        return rows
