import logging
from typing import Dict

import numpy as np

from data_classes.fluid_state import FluidState, MadelungState
from data_classes.grid import Grid
from integrators.interfaces import IStepStrategy
from model.capillarity_model import CapillarityModel
from utils.nonlinearity_processor import NonlinearityProcessor

logger = logging.getLogger(__name__)

# radius of the RK4 stability region on the imaginary axis
RK4_IMAGINARY_LIMIT = 2.0 * np.sqrt(2.0)

CONTOUR_POINTS = 32
CONTOUR_RADIUS = 1.0


def _max_xi_squared(grid: Grid) -> float:
    return float(grid.xi_squared.max())


class ComplexStepStrategy(IStepStrategy):
    """
    Shared bookkeeping of schemes for dz/dt = i Lap z + F(z).
    """

    def __init__(self, processor: NonlinearityProcessor) -> None:
        self._processor = processor
        self._spectral = processor.spectral_manager

    def check(self, state: MadelungState) -> None:
        self._processor.model.check_ell(state.ell)

    def distance(self, first: MadelungState, second: MadelungState) -> float:
        return float(np.linalg.norm(first.z - second.z))

    def size(self, state: MadelungState) -> float:
        return float(np.linalg.norm(state.z))

    @staticmethod
    def stability_dt(model: CapillarityModel, grid: Grid, safety: float, amplitude_ceiling: float) -> float:
        # only the quasi-linear remainder atilde(l) Lap z is explicit
        stiffness = max(abs(model.c_a), 1.0) * amplitude_ceiling * _max_xi_squared(grid)
        return safety * RK4_IMAGINARY_LIMIT / stiffness


class StrangSplitStrategy(ComplexStepStrategy):
    """
    Half step of the free flow, classical RK4 on dz/dt = F(z), half step of the free flow.
    """

    def step(self, state: MadelungState, t: float, dt: float) -> MadelungState:
        nonlinearity = self._processor.full_nonlinearity
        z = self._spectral.free_propagate(state.z, dt / 2.0)
        k1 = nonlinearity(z)
        k2 = nonlinearity(z + 0.5 * dt * k1)
        k3 = nonlinearity(z + 0.5 * dt * k2)
        k4 = nonlinearity(z + dt * k3)
        z = z + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        return MadelungState(state.grid, self._spectral.free_propagate(z, dt / 2.0))


class EtdRk4Strategy(ComplexStepStrategy):
    """
    Fourth-order exponential time differencing for the linear part -i|xi|^2 in Fourier space,
    with phi-function coefficients from contour means.
    """

    def __init__(self, processor: NonlinearityProcessor) -> None:
        super().__init__(processor)
        self._coefficients: Dict[float, tuple] = {}

    def _coefficients_for(self, dt: float) -> tuple:
        if dt in self._coefficients:
            return self._coefficients[dt]
        xi_squared = self._spectral.grid.xi_squared
        values, inverse = np.unique(xi_squared, return_inverse=True)
        linear = -1j * values * dt
        contour = CONTOUR_RADIUS * np.exp(2j * np.pi * (np.arange(1, CONTOUR_POINTS + 1) - 0.5) / CONTOUR_POINTS)
        zc = linear[:, np.newaxis] + contour[np.newaxis, :]
        zeta = dt * ((np.exp(zc / 2.0) - 1.0) / zc).mean(axis=-1)
        alpha = dt * ((-4.0 - zc + np.exp(zc) * (4.0 - 3.0 * zc + zc ** 2)) / zc ** 3).mean(axis=-1)
        beta = dt * ((2.0 + zc + np.exp(zc) * (-2.0 + zc)) / zc ** 3).mean(axis=-1)
        gamma = dt * ((-4.0 - 3.0 * zc - zc ** 2 + np.exp(zc) * (4.0 - zc)) / zc ** 3).mean(axis=-1)
        shape = xi_squared.shape
        half_exponential = np.exp(linear / 2.0)
        coefficients = tuple(c[inverse].reshape(shape) for c in (half_exponential, zeta, alpha, beta, gamma))
        if len(self._coefficients) > 8:
            self._coefficients.clear()
        self._coefficients[dt] = coefficients
        return coefficients

    def step(self, state: MadelungState, t: float, dt: float) -> MadelungState:
        half_exponential, zeta, alpha, beta, gamma = self._coefficients_for(dt)
        spectral = self._spectral

        def nonlinearity(z_hat: np.ndarray) -> np.ndarray:
            return spectral.forward(self._processor.full_nonlinearity(spectral.inverse(z_hat)))

        z_hat = spectral.forward(state.z)
        n1 = nonlinearity(z_hat)
        a_hat = half_exponential * z_hat + zeta * n1
        n2 = nonlinearity(a_hat)
        b_hat = half_exponential * z_hat + zeta * n2
        n3 = nonlinearity(b_hat)
        c_hat = half_exponential * a_hat + zeta * (2.0 * n3 - n1)
        n4 = nonlinearity(c_hat)
        z_hat = half_exponential ** 2 * z_hat + alpha * n1 + 2.0 * beta * (n2 + n3) + gamma * n4
        return MadelungState(state.grid, spectral.inverse(z_hat))


class Rk4PrimitiveStrategy(IStepStrategy):
    """
    Classical RK4 on the primitive variables (rho, u).
    """

    def __init__(self, processor: NonlinearityProcessor) -> None:
        self._processor = processor

    def check(self, state: FluidState) -> None:
        self._processor.model.check_density(state.rho)

    def distance(self, first: FluidState, second: FluidState) -> float:
        squared = np.sum((first.rho - second.rho) ** 2)
        squared += sum(np.sum((a - b) ** 2) for a, b in zip(first.u, second.u))
        return float(np.sqrt(squared))

    def size(self, state: FluidState) -> float:
        squared = np.sum((state.rho - 1.0) ** 2) + sum(np.sum(u ** 2) for u in state.u)
        return float(np.sqrt(squared))

    @staticmethod
    def _shifted(state: FluidState, scale: float, rate) -> FluidState:
        d_rho, d_u = rate
        return FluidState(state.grid, state.rho + scale * d_rho,
                          tuple(u + scale * du for u, du in zip(state.u, d_u)))

    def step(self, state: FluidState, t: float, dt: float) -> FluidState:
        rhs = self._processor.primitive_right_hand_side
        k1 = rhs(state)
        k2 = rhs(self._shifted(state, 0.5 * dt, k1))
        k3 = rhs(self._shifted(state, 0.5 * dt, k2))
        k4 = rhs(self._shifted(state, dt, k3))
        rho = state.rho + dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        u = tuple(component + dt / 6.0 * (a + 2.0 * b + 2.0 * c + d)
                  for component, a, b, c, d in zip(state.u, k1[1], k2[1], k3[1], k4[1]))
        return FluidState(state.grid, rho, u)

    @staticmethod
    def stability_dt(model: CapillarityModel, grid: Grid, safety: float, amplitude_ceiling: float) -> float:
        # the full dispersive operator a(rho) Lap is explicit
        a_max = float(model.a(1.0)) * (1.0 + amplitude_ceiling)
        return safety * RK4_IMAGINARY_LIMIT / (a_max * _max_xi_squared(grid))
