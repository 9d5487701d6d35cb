import numpy as np

from enums.kappa_family import KappaFamily
from exceptions.config_error import ConfigError


class PowerLawCapillarity:
    """
    Capillarity coefficient kappa(rho) = kappa0 * rho**m.

    Every quantity derived from kappa is again a power law: a(rho) = sqrt(rho kappa) = sqrt(kappa0) rho**n
    and L'(rho) = sqrt(kappa / rho) = sqrt(kappa0) rho**(n - 1), with n = (m + 1) / 2.
    Inputs may be real or complex arrays.
    """

    def __init__(self, family: KappaFamily, kappa0: float = 1.0, exponent: float = None) -> None:
        """
        Args:
            family (KappaFamily): Quantum (m = -1), constant (m = 0) or power (m given).
            kappa0 (float): Positive prefactor.
            exponent (float, optional): The power m, required for the power family.

        Raises:
            ConfigError: If kappa0 is not positive or the power family has no exponent.
        """
        if kappa0 <= 0:
            raise ConfigError(f"kappa0 must be positive, got {kappa0}")
        if family is KappaFamily.QUANTUM:
            exponent = -1.0
        elif family is KappaFamily.CONSTANT:
            exponent = 0.0
        elif exponent is None:
            raise ConfigError("The power capillarity family needs an exponent")
        self.family = family
        self.kappa0 = float(kappa0)
        self.exponent = float(exponent)
        self._n = (self.exponent + 1.0) / 2.0
        self._root = np.sqrt(self.kappa0)

    def kappa(self, rho):
        return self.kappa0 * rho ** self.exponent

    def dkappa(self, rho):
        m = self.exponent
        return self.kappa0 * m * rho ** (m - 1.0)

    def a(self, rho, order: int = 0):
        """
        a(rho) = sqrt(rho kappa(rho)) or its derivative of the given order (0..3).
        """
        n = self._n
        factor = 1.0
        for k in range(order):
            factor *= n - k
        return self._root * factor * rho ** (n - order)

    def ell_derivative(self, rho, order: int = 1):
        """
        Derivative L^(order)(rho), order 1..3, of L(rho) = int_1^rho sqrt(kappa(s)/s) ds.
        """
        n = self._n
        factor = 1.0
        for k in range(order - 1):
            factor *= n - 1.0 - k
        return self._root * factor * rho ** (n - order)

    def ell(self, rho):
        """Closed form of L(rho)."""
        if self._n == 0:
            return self._root * np.log(rho)
        return self._root * (rho ** self._n - 1.0) / self._n

    def describe(self) -> dict:
        return {"kappa_family": self.family.name.lower(), "kappa0": self.kappa0, "exponent": self.exponent}
