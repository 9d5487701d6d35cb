import numpy as np
from numpy.polynomial import Polynomial

from enums.pressure_family import PressureFamily
from exceptions.config_error import ConfigError


class PolynomialPressure:
    """
    Pressure P(rho) = sum_k c_k (rho - 1)**k with zero sound speed at rho = 1.

    The enthalpy g solves dP/drho = rho dg/drho with g(1) = 0; W solves W' = g with W(1) = 0.
    Writing P'(s) = sum_m b_m s**m gives the closed forms
    g = b_0 ln rho + sum_{m>=1} b_m (rho**m - 1) / m and
    W = b_0 (rho ln rho - rho + 1) + sum_{m>=1} b_m ((rho**(m+1) - 1) / (m (m+1)) - (rho - 1) / m).
    """

    def __init__(self, family: PressureFamily, coefficients=None, offset: float = 0.0) -> None:
        """
        Args:
            family (PressureFamily): Cubic default or user polynomial.
            coefficients (Sequence[float], optional): c_0, c_1, ... of the user polynomial.
            offset (float): P_0 of the cubic default.

        Raises:
            ConfigError: If the user polynomial is missing or has c_1 != 0.
        """
        if family is PressureFamily.CUBIC_DEFAULT:
            coefficients = [offset, 0.0, 0.0, 1.0]
        elif not coefficients:
            raise ConfigError("The user polynomial pressure needs coefficients")
        coefficients = [float(c) for c in coefficients]
        if len(coefficients) > 1 and abs(coefficients[1]) > 1e-14:
            raise ConfigError(f"Pressure must have zero sound speed at rho = 1, got c_1 = {coefficients[1]}")
        self.family = family
        self.coefficients = coefficients
        shifted = Polynomial(coefficients)
        self._pressure = shifted(Polynomial([-1.0, 1.0]))
        self._dpressure = self._pressure.deriv()
        self._b = np.trim_zeros(self._dpressure.coef, "b") if self._dpressure.coef.any() else np.zeros(1)

    def pressure(self, rho):
        return self._pressure(rho)

    def dpressure(self, rho, order: int = 1):
        return self._pressure.deriv(order)(rho)

    def sound_speed_squared(self) -> float:
        return float(self._dpressure(1.0))

    def g(self, rho):
        total = self._b[0] * np.log(rho)
        for m, b in enumerate(self._b[1:], start=1):
            total = total + b * (rho ** m - 1.0) / m
        return total

    def g_derivative(self, rho, order: int = 1):
        """
        g', g'' or g''' from g' = P'/rho.
        """
        p1 = self.dpressure(rho, 1)
        if order == 1:
            return p1 / rho
        p2 = self.dpressure(rho, 2)
        if order == 2:
            return p2 / rho - p1 / rho ** 2
        if order == 3:
            p3 = self.dpressure(rho, 3)
            return p3 / rho - 2.0 * p2 / rho ** 2 + 2.0 * p1 / rho ** 3
        raise ValueError(f"g derivative of order {order} is not available")

    def potential(self, rho):
        """W(rho) with W' = g and W(1) = 0."""
        total = self._b[0] * (rho * np.log(rho) - rho + 1.0)
        for m, b in enumerate(self._b[1:], start=1):
            total = total + b * ((rho ** (m + 1) - 1.0) / (m * (m + 1)) - (rho - 1.0) / m)
        return total

    def describe(self) -> dict:
        return {"pressure_family": self.family.name.lower(), "coefficients": list(self.coefficients)}
