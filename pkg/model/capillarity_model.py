import logging
from typing import Tuple

import numpy as np
from scipy.optimize import brentq, newton

from exceptions.density_range_violation import DensityRangeViolation
from model.capillarity_laws import PowerLawCapillarity
from model.interfaces import ICapillarityModel
from model.pressure_laws import PolynomialPressure

logger = logging.getLogger(__name__)

SERIES_THRESHOLD = 1e-4
INVERSE_TOLERANCE = 1e-12


class CapillarityModel(ICapillarityModel):
    """
    Constitutive bundle of one capillary fluid: kappa, a, P, g, L, L^{-1} and the composite
    functions of l = L(rho) used by the complex formulation.

    Immutable after construction.
    """

    def __init__(self, capillarity: PowerLawCapillarity, pressure: PolynomialPressure,
                 density_interval: Tuple[float, float] = (0.2, 5.0), linear_only: bool = False) -> None:
        """
        Args:
            capillarity (PowerLawCapillarity): kappa(rho).
            pressure (PolynomialPressure): P(rho) with P'(1) = 0.
            density_interval (Tuple[float, float]): Working interval J, containing 1.
            linear_only (bool): Switch the full nonlinearity off.
        """
        low, high = (float(v) for v in density_interval)
        if not 0 < low < 1 < high:
            raise ValueError(f"Working interval must satisfy 0 < min < 1 < max, got {density_interval}")
        self._capillarity = capillarity
        self._pressure = pressure
        self._interval = (low, high)
        self._linear_only = bool(linear_only)
        self._ell_interval = (float(capillarity.ell(low)), float(capillarity.ell(high)))
        self._placeholder_ell = 0.5 * self._ell_interval[1]

        self._delta = 1.0 / float(capillarity.ell_derivative(1.0, 1))
        rho1, rho2, rho3 = self._density_derivatives_at_equilibrium()
        self._rho_derivatives = (rho1, rho2, rho3)
        a1 = float(capillarity.a(1.0, 1))
        a2 = float(capillarity.a(1.0, 2))
        g2 = float(pressure.g_derivative(1.0, 2))
        g3 = float(pressure.g_derivative(1.0, 3))
        self._atilde0 = float(capillarity.a(1.0)) - 1.0
        self._c_a = a1 * rho1
        self._atilde_second = a2 * rho1 ** 2 + a1 * rho2
        self._c_g = 0.5 * g2 * rho1 ** 2
        self._gtilde_third = g3 * rho1 ** 3 + 3.0 * g2 * rho1 * rho2
        if abs(pressure.sound_speed_squared()) > 1e-10:
            logger.warning("Pressure law has P'(1) = %.3e, not zero", pressure.sound_speed_squared())

    def _density_derivatives_at_equilibrium(self) -> Tuple[float, float, float]:
        # rho(l) = L^{-1}(l): rho' = q, rho'' = q' q, rho''' = (q'' q + q'^2) q with q = 1 / L'
        law = self._capillarity
        l1 = float(law.ell_derivative(1.0, 1))
        l2 = float(law.ell_derivative(1.0, 2))
        l3 = float(law.ell_derivative(1.0, 3))
        q = 1.0 / l1
        dq = -l2 / l1 ** 2
        ddq = -l3 / l1 ** 2 + 2.0 * l2 ** 2 / l1 ** 3
        return q, dq * q, (ddq * q + dq ** 2) * q

    # properties

    @property
    def capillarity(self) -> PowerLawCapillarity:
        return self._capillarity

    @property
    def pressure_law(self) -> PolynomialPressure:
        return self._pressure

    @property
    def density_interval(self) -> Tuple[float, float]:
        return self._interval

    @property
    def ell_interval(self) -> Tuple[float, float]:
        return self._ell_interval

    @property
    def linear_only(self) -> bool:
        return self._linear_only

    @property
    def delta(self) -> float:
        """delta = (L^{-1})'(0) = kappa(1)^{-1/2}."""
        return self._delta

    @property
    def c_a(self) -> float:
        """atilde'(0) = a'(1) delta."""
        return self._c_a

    @property
    def c_g(self) -> float:
        """gtilde''(0) / 2 = P''(1) delta^2 / 2."""
        return self._c_g

    @property
    def unit_normalized(self) -> bool:
        return abs(self._c_a - 1.0) < 1e-12 and abs(self._c_g - 1.0) < 1e-12

    # range checks

    def check_density(self, rho) -> None:
        """
        Raises:
            DensityRangeViolation: If any density lies outside J.
        """
        rho = np.asarray(rho)
        low, high = self._interval
        if np.iscomplexobj(rho):
            rho = rho.real
        if rho.size and (rho.min() < low or rho.max() > high or not np.all(np.isfinite(rho))):
            raise DensityRangeViolation(
                f"Density range [{rho.min():.6g}, {rho.max():.6g}] leaves J = [{low}, {high}]")

    def check_ell(self, ell) -> None:
        """
        Raises:
            DensityRangeViolation: If any l lies outside L(J).
        """
        ell = np.asarray(ell)
        low, high = self._ell_interval
        if ell.size and (ell.min() < low or ell.max() > high or not np.all(np.isfinite(ell))):
            raise DensityRangeViolation(
                f"Range [{ell.min():.6g}, {ell.max():.6g}] of l leaves L(J) = [{low:.6g}, {high:.6g}]")

    # constitutive functions of rho

    def kappa(self, rho):
        return self._capillarity.kappa(rho)

    def dkappa(self, rho):
        return self._capillarity.dkappa(rho)

    def a(self, rho, order: int = 0):
        return self._capillarity.a(rho, order)

    def pressure(self, rho):
        return self._pressure.pressure(rho)

    def g_of_rho(self, rho):
        return self._pressure.g(rho)

    def potential(self, rho):
        return self._pressure.potential(rho)

    def ell_of_rho(self, rho):
        """
        l = L(rho).

        Raises:
            DensityRangeViolation: If rho leaves J.
        """
        self.check_density(rho)
        return self._capillarity.ell(np.asarray(rho, dtype=float))

    def rho_of_ell(self, ell):
        """
        rho = L^{-1}(l) by vectorised Newton iteration from 1 + delta l, with a Brent fallback on J.

        Raises:
            DensityRangeViolation: If l leaves L(J).
        """
        ell = np.asarray(ell, dtype=float)
        self.check_ell(ell)
        law = self._capillarity
        scalar = ell.ndim == 0
        flat = np.atleast_1d(ell).ravel()
        low, high = self._interval
        if flat.size > 1:
            guess = np.clip(1.0 + self._delta * flat, low, high)
            rho = newton(lambda r: law.ell(r) - flat,
                         guess,
                         fprime=lambda r: law.ell_derivative(r, 1),
                         tol=INVERSE_TOLERANCE, maxiter=50, disp=False)
            rho = np.asarray(rho, dtype=float)
        else:
            rho = np.full(flat.shape, np.nan)
        bad = ~np.isfinite(rho) | (rho < low) | (rho > high) | (np.abs(law.ell(np.abs(rho)) - flat) > 1e-10)
        for index in np.flatnonzero(bad):
            target = flat[index]
            rho[index] = brentq(lambda r: law.ell(r) - target, low, high, xtol=INVERSE_TOLERANCE)
        rho = rho.reshape(np.shape(ell))
        return float(rho) if scalar else rho

    def gauge_phi(self, rho, gamma: float):
        """
        phi(rho) = sqrt(rho) (a(rho) / a(1))^gamma, the solution of a/rho + 2 gamma a' - 2 a phi'/phi = 0
        with phi(1) = 1.
        """
        return np.sqrt(rho) * (self.a(rho) / self.a(1.0)) ** gamma

    def gauge_ode_residual(self, rho, gamma: float, step: float = 1e-20):
        """
        Residual of the gauge ODE with phi' from a complex-step derivative.
        """
        rho = np.asarray(rho, dtype=float)
        phi = self.gauge_phi(rho, gamma)
        dphi = np.imag(self.gauge_phi(rho + 1j * step, gamma)) / step
        a = self.a(rho)
        return a / rho + 2.0 * gamma * self.a(rho, 1) - 2.0 * a * dphi / phi

    # composite functions of l

    def atilde(self, ell):
        """atilde(l) = a(L^{-1}(l)) - 1."""
        return self.a(self.rho_of_ell(ell)) - 1.0

    def abar(self, ell):
        """
        abar(l) = (atilde(l) - atilde(0)) / l - 1, continued at 0 by its Taylor series.
        """
        ell = np.asarray(ell, dtype=float)
        series = self._c_a - 1.0 + 0.5 * self._atilde_second * ell
        small = np.abs(ell) < SERIES_THRESHOLD
        safe = np.where(small, self._placeholder_ell, ell)
        direct = (self.atilde(safe) - self._atilde0) / safe - 1.0
        return np.where(small, series, direct)

    def gtilde(self, ell):
        """gtilde(l) = g(L^{-1}(l))."""
        return self.g_of_rho(self.rho_of_ell(ell))

    def gbar(self, ell):
        """
        gbar(l) = gtilde(l) / l, with gbar(0) = 0.
        """
        ell = np.asarray(ell, dtype=float)
        series = self._c_g * ell + self._gtilde_third * ell ** 2 / 6.0
        small = np.abs(ell) < SERIES_THRESHOLD
        safe = np.where(small, self._placeholder_ell, ell)
        direct = self.gtilde(safe) / safe
        return np.where(small, series, direct)

    def lbar(self, ell):
        """
        Lbar(l) from L^{-1}(l) - 1 = delta l + Lbar(l) l.
        """
        ell = np.asarray(ell, dtype=float)
        _, rho2, rho3 = self._rho_derivatives
        series = 0.5 * rho2 * ell + rho3 * ell ** 2 / 6.0
        small = np.abs(ell) < SERIES_THRESHOLD
        safe = np.where(small, self._placeholder_ell, ell)
        direct = (self.rho_of_ell(safe) - 1.0) / safe - self._delta
        return np.where(small, series, direct)

    def describe(self) -> dict:
        description = {}
        description.update(self._capillarity.describe())
        description.update(self._pressure.describe())
        description.update({"density_interval": list(self._interval), "linear_only": self._linear_only,
                            "delta": self._delta, "c_a": self._c_a, "c_g": self._c_g,
                            "unit_normalized": self.unit_normalized})
        return description


class TruncatedCapillarityModel(CapillarityModel):
    """
    A model whose composite functions are cut at their leading order: atilde(l) = c_a l, gtilde(l) = c_g l^2.

    The rho-space functions are those of the base model, so the cubic remainder of the
    complex formulation vanishes identically.
    """

    def __init__(self, base: CapillarityModel) -> None:
        super().__init__(base.capillarity, base.pressure_law, base.density_interval, base.linear_only)

    def atilde(self, ell):
        return self.c_a * np.asarray(ell, dtype=float)

    def abar(self, ell):
        return np.full(np.shape(ell), self.c_a - 1.0)

    def gtilde(self, ell):
        return self.c_g * np.asarray(ell, dtype=float) ** 2

    def gbar(self, ell):
        return self.c_g * np.asarray(ell, dtype=float)

    def describe(self) -> dict:
        description = super().describe()
        description["truncated"] = True
        return description
