import numpy as np
import pytest

from data_classes.grid import Grid
from enums.kappa_family import KappaFamily
from enums.pressure_family import PressureFamily
from model.capillarity_laws import PowerLawCapillarity
from model.capillarity_model import CapillarityModel
from model.pressure_laws import PolynomialPressure
from utils.littlewood_paley_manager import LittlewoodPaleyManager
from utils.madelung_processor import MadelungProcessor
from utils.nonlinearity_processor import NonlinearityProcessor
from utils.spectral_manager import SpectralManager


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def grid_1d():
    return Grid.cubic(1, 64, 2.0 * np.pi)


@pytest.fixture
def grid_3d():
    return Grid.cubic(3, 16, 16.0)


@pytest.fixture
def spectral_1d(grid_1d):
    return SpectralManager(grid_1d)


@pytest.fixture
def spectral_3d(grid_3d):
    return SpectralManager(grid_3d)


@pytest.fixture
def lp_3d(spectral_3d):
    return LittlewoodPaleyManager(spectral_3d)


@pytest.fixture
def quantum_model():
    return CapillarityModel(PowerLawCapillarity(KappaFamily.QUANTUM, 1.0),
                            PolynomialPressure(PressureFamily.CUBIC_DEFAULT, offset=1.0))


@pytest.fixture
def normalized_model():
    """kappa = rho and P = 1 + (rho - 1)^2, so c_a = c_g = 1."""
    return CapillarityModel(PowerLawCapillarity(KappaFamily.POWER, 1.0, 1.0),
                            PolynomialPressure(PressureFamily.USER_POLYNOMIAL, [1.0, 0.0, 1.0]))


@pytest.fixture
def processor_3d(normalized_model, spectral_3d):
    return NonlinearityProcessor(normalized_model, spectral_3d, dealias=False)


@pytest.fixture
def madelung_3d(normalized_model, spectral_3d):
    return MadelungProcessor(normalized_model, spectral_3d)
