import logging
from typing import Callable, Dict, List, Tuple

import numpy as np

from data_classes.experiment_plan import ExperimentPlan
from data_classes.fluid_state import FluidState, MadelungState
from data_classes.grid import Grid
from data_classes.resonance_symbol import ResonanceSymbol
from data_classes.selftest_check import SelfTestCheck
from data_classes.solver_config import SolverConfig
from enums.kappa_family import KappaFamily
from enums.pressure_family import PressureFamily
from enums.solver_scheme import IntegrationDirection, SolverScheme
from integrators.integrator import Integrator
from model.capillarity_laws import PowerLawCapillarity
from model.capillarity_model import CapillarityModel
from model.pressure_laws import PolynomialPressure
from utils.decay_analyzer import DecayAnalyzer
from utils.energy_monitor import EnergyMonitor
from utils.littlewood_paley_manager import LittlewoodPaleyManager
from utils.madelung_processor import MadelungProcessor
from utils.nonlinearity_processor import NonlinearityProcessor
from utils.profile_manager import ProfileManager
from utils.resonance_manager import ResonanceManager
from utils.scattering_manager import ScatteringManager
from utils.spectral_manager import SpectralManager

logger = logging.getLogger(__name__)


def _relative(error: float, scale: float) -> float:
    return float(error / scale) if scale > 0 else float(error)


class SelfTestManager:
    """
    Runs the invariant suites of the laboratory on small fixed grids and reports pass/fail per check.
    """

    def __init__(self, rng_seed: int, threads: int = 1, trials: int = 10) -> None:
        """
        Args:
            rng_seed (int): Seed of every randomized check.
            threads (int): FFT workers.
            trials (int): Random fields per randomized check.
        """
        self._seed = rng_seed
        self._threads = threads
        self._trials = trials
        self._grid = Grid.cubic(3, 16, 16.0)
        self._spectral = SpectralManager(self._grid, threads)
        self._suites: Dict[str, Callable[[np.random.Generator], List[SelfTestCheck]]] = {
            "spectral": self.spectral_suite,
            "besov": self.besov_suite,
            "model": self.model_suite,
            "dynamics": self.dynamics_suite,
            "integration": self.integration_suite,
            "resonance": self.resonance_suite,
            "energy": self.energy_suite,
            "vector_field": self.vector_field_suite,
        }

    @property
    def suite_names(self) -> List[str]:
        return list(self._suites)

    def run(self, names: List[str] = None) -> List[SelfTestCheck]:
        """
        Runs the named suites (all by default), each with its own generator derived from the seed.

        Returns:
            List[SelfTestCheck]: All checks in suite order.
        """
        checks: List[SelfTestCheck] = []
        for index, name in enumerate(names or self.suite_names):
            rng = np.random.default_rng([self._seed, index])
            suite_checks = self._suites[name](rng)
            failed = [c.name for c in suite_checks if not c.passed]
            logger.info("Suite %s: %d checks, %d failed %s", name, len(suite_checks), len(failed), failed or "")
            checks.extend(suite_checks)
        return checks

    @staticmethod
    def _check(suite: str, name: str, value: float, bound: float) -> SelfTestCheck:
        return SelfTestCheck(suite, name, float(value), f"<= {bound:g}", bool(np.isfinite(value) and value <= bound))

    @staticmethod
    def _at_least(suite: str, name: str, value: float, bound: float) -> SelfTestCheck:
        return SelfTestCheck(suite, name, float(value), f">= {bound:g}", bool(np.isfinite(value) and value >= bound))

    def spectral_suite(self, rng: np.random.Generator) -> List[SelfTestCheck]:
        spectral = self._spectral
        worst = {"parseval": 0.0, "round_trip": 0.0, "group_law": 0.0, "unitarity": 0.0,
                 "derivative_commutes_with_propagator": 0.0, "mixed_derivatives_commute": 0.0}
        for _ in range(self._trials):
            f = spectral.random_band_limited(rng, 5)
            norm = spectral.lebesgue_norm(f, 2)
            s, t = rng.uniform(-1.0, 1.0, size=2)
            worst["parseval"] = max(worst["parseval"],
                                    _relative(abs(norm - float(np.linalg.norm(spectral.forward(f)))), norm))
            worst["round_trip"] = max(worst["round_trip"], _relative(
                float(np.linalg.norm(spectral.inverse(spectral.forward(f)) - f)), float(np.linalg.norm(f))))
            twice = spectral.free_propagate(spectral.free_propagate(f, s), t)
            once = spectral.free_propagate(f, s + t)
            worst["group_law"] = max(worst["group_law"],
                                     _relative(float(np.linalg.norm(twice - once)), float(np.linalg.norm(f))))
            worst["unitarity"] = max(worst["unitarity"],
                                     _relative(abs(spectral.lebesgue_norm(once, 2) - norm), norm))
            derivative_first = spectral.free_propagate(spectral.derivative(f, (1, 0, 0)), t)
            propagate_first = spectral.derivative(spectral.free_propagate(f, t), (1, 0, 0))
            worst["derivative_commutes_with_propagator"] = max(
                worst["derivative_commutes_with_propagator"],
                _relative(float(np.linalg.norm(derivative_first - propagate_first)),
                          float(np.linalg.norm(derivative_first))))
            xy = spectral.derivative(spectral.derivative(f, (1, 0, 0)), (0, 1, 0))
            yx = spectral.derivative(spectral.derivative(f, (0, 1, 0)), (1, 0, 0))
            worst["mixed_derivatives_commute"] = max(
                worst["mixed_derivatives_commute"],
                _relative(float(np.linalg.norm(xy - yx)), float(np.linalg.norm(xy))))
        return [self._check("spectral", name, value, 1e-12) for name, value in worst.items()]

    def besov_suite(self, rng: np.random.Generator) -> List[SelfTestCheck]:
        spectral = self._spectral
        lp = LittlewoodPaleyManager(spectral)
        checks = [self._check("besov", "partition_of_unity", lp.partition_residual(), 1e-10)]
        reconstruction = 0.0
        bony = 0.0
        low, high = 1.0, 1.0
        for _ in range(self._trials):
            f = spectral.random_band_limited(rng, 5, mean_zero=False)
            g = spectral.random_band_limited(rng, 5, mean_zero=False)
            total = sum(lp.blocks(f).values())
            reconstruction = max(reconstruction, _relative(
                float(np.linalg.norm(total - (f - spectral.mean(f)))), float(np.linalg.norm(f))))
            parts = lp.bony_decompose(f, g)
            bony = max(bony, _relative(spectral.lebesgue_norm(parts.reconstruct() - f * g, 2),
                                       spectral.lebesgue_norm(f * g, 2)))
            j = int(rng.choice(lp.j_range[1:-1]))
            block = lp.dyadic_block(f, j)
            ratio = lp.bernstein_check(block, j, 2.0, np.inf).derivative_ratio
            if ratio > 0:
                low, high = min(low, ratio), max(high, ratio)
        checks.append(self._check("besov", "littlewood_paley_reconstruction", reconstruction, 1e-10))
        checks.append(self._check("besov", "bony_reconstruction", bony, 1e-10))
        checks.append(SelfTestCheck("besov", "bernstein_derivative_ratio_min", low, ">= 0.675", low >= 0.75 * 0.9))
        checks.append(SelfTestCheck("besov", "bernstein_derivative_ratio_max", high, "<= 2.933",
                                    high <= 8.0 / 3.0 * 1.1))
        return checks

    def model_suite(self, rng: np.random.Generator) -> List[SelfTestCheck]:
        rho = np.linspace(0.5, 2.0, 61)
        gauge = 0.0
        slope = 0.0
        inverse = 0.0
        families = [(KappaFamily.QUANTUM, None), (KappaFamily.CONSTANT, None), (KappaFamily.POWER, 1.0)]
        for family, exponent in families:
            model = CapillarityModel(PowerLawCapillarity(family, 1.0, exponent),
                                     PolynomialPressure(PressureFamily.CUBIC_DEFAULT, offset=1.0))
            for gamma in (0.0, 1.0, 2.0, 3.75):
                gauge = max(gauge, float(np.max(np.abs(model.gauge_ode_residual(rho, gamma)))))
            inverse = max(inverse, float(np.max(np.abs(model.rho_of_ell(model.ell_of_rho(rho)) - rho))))
            slope = max(slope, self._equilibrium_slope(model))
        slope = max(slope, self._equilibrium_slope(self._unit_model()))
        return [self._check("model", "gauge_ode_residual", gauge, 1e-10),
                self._check("model", "inverse_density_map", inverse, 1e-12),
                self._check("model", "gtilde_slope_at_equilibrium", slope, 1e-8)]

    @staticmethod
    def _equilibrium_slope(model: CapillarityModel, h: float = 1e-5) -> float:
        below, above = model.gtilde(np.array([-h, h]))
        return float(abs(above - below) / (2.0 * h))

    def _unit_model(self) -> CapillarityModel:
        return CapillarityModel(PowerLawCapillarity(KappaFamily.POWER, 1.0, 1.0),
                                PolynomialPressure(PressureFamily.USER_POLYNOMIAL, [1.0, 0.0, 1.0]))

    def dynamics_suite(self, rng: np.random.Generator) -> List[SelfTestCheck]:
        spectral = self._spectral
        model = self._unit_model()
        processor = NonlinearityProcessor(model, spectral, dealias=False)
        madelung = MadelungProcessor(model, spectral)
        worst = 0.0
        round_trip = 0.0
        order = np.inf
        for _ in range(self._trials):
            z = 0.1 * spectral.random_band_limited(rng, 4)
            complex_form = processor.quadratic_part(z, 1.0, 1.0)
            real_form = processor.quadratic_part_real_form(z, 1.0, 1.0)
            worst = max(worst, _relative(float(np.linalg.norm(complex_form - real_form)),
                                         float(np.linalg.norm(complex_form))))
            mstate = MadelungState(self._grid, 5.0 * z)
            back = madelung.to_complex(madelung.from_complex(mstate))
            round_trip = max(round_trip, _relative(float(np.linalg.norm(back.z - mstate.z)),
                                                   float(np.linalg.norm(mstate.z))))
            full = float(np.linalg.norm(processor.cubic_remainder(5.0 * z)))
            half = float(np.linalg.norm(processor.cubic_remainder(2.5 * z)))
            order = min(order, float(np.log2(full / half)))
        return [self._check("dynamics", "quadratic_dual_form", worst, 1e-12),
                self._check("dynamics", "madelung_round_trip", round_trip, 1e-10),
                self._at_least("dynamics", "cubic_remainder_order", order, 2.9)]

    def _line(self) -> Tuple[SpectralManager, np.ndarray]:
        spectral = SpectralManager(Grid.cubic(1, 128, 40.0), self._threads)
        (x,) = spectral.grid.centered_coordinates
        return spectral, 0.05 * np.exp(-x ** 2 / 4.0) * (1.0 + 0.5j)

    @staticmethod
    def _final(processor: NonlinearityProcessor, scheme: SolverScheme, dt: float, state, t0: float, t1: float,
               direction: IntegrationDirection = IntegrationDirection.FORWARD):
        config = SolverConfig(dt=dt, scheme=scheme, defect_tolerance=None, direction=direction)
        return Integrator(processor, config).evolve(state, t0, t1).latest()[1]

    def integration_suite(self, rng: np.random.Generator) -> List[SelfTestCheck]:
        spectral, bump = self._line()
        model = self._unit_model()
        processor = NonlinearityProcessor(model, spectral)
        strang = SolverScheme.STRANG_SPLIT_RK4
        primitive = SolverScheme.RK4_PSEUDOSPECTRAL

        (x,) = spectral.grid.centered_coordinates
        fluid = FluidState(spectral.grid, 1.0 + 0.05 * np.exp(-x ** 2 / 4.0), (np.zeros(spectral.grid.shape),))
        moved = self._final(processor, primitive, 0.0025, fluid, 0.0, 0.5)
        mass_drift = abs(processor.mass(moved) - processor.mass(fluid))
        energy = processor.hamiltonian(fluid)
        energy_drift = _relative(abs(processor.hamiltonian(moved) - energy), energy)

        start = MadelungState(spectral.grid, bump)
        middle = self._final(processor, strang, 0.02, start, 0.0, 1.0)
        back = self._final(processor, strang, 0.02, middle, 1.0, 0.0, IntegrationDirection.BACKWARD)
        reversibility = _relative(float(np.linalg.norm(back.z - bump)), float(np.linalg.norm(bump)))

        reference = self._final(processor, strang, 0.0125, start, 0.0, 1.0).z
        errors = [float(np.linalg.norm(self._final(processor, strang, dt, start, 0.0, 1.0).z - reference))
                  for dt in (0.1, 0.05)]
        strang_ratio = errors[0] / max(errors[1], 1e-300)

        plain = NonlinearityProcessor(model, spectral, dealias=False)
        primitive_start = MadelungProcessor(model, spectral).from_complex(start)
        gaps = [plain.formulation_gap(self._final(plain, strang, dt, start, 0.0, 0.5),
                                      self._final(plain, primitive, dt, primitive_start, 0.0, 0.5))
                for dt in (0.02, 0.01, 0.005)]
        dual_order = min(float(np.log2(gaps[0] / gaps[1])), float(np.log2(gaps[1] / gaps[2])))

        return [self._check("integration", "mass_drift", mass_drift, 1e-12),
                self._check("integration", "hamiltonian_drift", energy_drift, 1e-8),
                self._check("integration", "forward_backward_reversibility", reversibility, 1e-7),
                self._at_least("integration", "strang_error_ratio_under_halving", strang_ratio, 3.0),
                self._at_least("integration", "dual_formulation_order", dual_order, 1.9)]

    def resonance_suite(self, rng: np.random.Generator) -> List[SelfTestCheck]:
        manager = ResonanceManager()
        gradient_error = 0.0
        scaling_mismatch = 0
        step = 1e-6
        for signs in ("++", "+-", "-+", "--"):
            symbol = ResonanceSymbol.from_signs(signs)
            xi = rng.standard_normal((50, 3))
            eta = rng.standard_normal((50, 3))
            gradient = manager.omega_grad_eta(symbol, xi, eta)
            for axis in range(3):
                shift = np.zeros(3)
                shift[axis] = step
                difference = (manager.omega_eval(symbol, xi, eta + shift)
                              - manager.omega_eval(symbol, xi, eta - shift)) / (2.0 * step)
                gradient_error = max(gradient_error, float(np.max(np.abs(difference - gradient[:, axis])
                                                                  / (1.0 + np.abs(gradient[:, axis])))))
            labels = manager.classify_many(symbol, xi, eta)
            scaled = manager.classify_many(symbol, 7.5 * xi, 7.5 * eta)
            scaling_mismatch += int(np.count_nonzero(labels != scaled))
        return [self._check("resonance", "gradient_matches_differences", gradient_error, 1e-8),
                self._check("resonance", "labels_scale_invariant", scaling_mismatch, 0)]

    def energy_suite(self, rng: np.random.Generator) -> List[SelfTestCheck]:
        spectral = self._spectral
        model = self._unit_model()
        monitor = EnergyMonitor(model, spectral, MadelungProcessor(model, spectral), gamma=1.3)
        velocity = tuple(0.01 * spectral.random_band_limited(rng, 4, real=True) for _ in range(3))
        flat = FluidState(self._grid, np.ones(self._grid.shape), velocity)
        energy = monitor.weighted_energy(flat)
        expected = sum(spectral.sobolev_norm(u, 2.6, homogeneous=True) ** 2 for u in velocity)
        rho = 1.0 + 2.0 * spectral.random_band_limited(rng, 4, real=True)
        state = FluidState(self._grid, rho, velocity)
        shifted = FluidState(self._grid, np.roll(rho, (3, 1, 5), axis=(0, 1, 2)),
                             tuple(np.roll(u, (3, 1, 5), axis=(0, 1, 2)) for u in velocity))
        base = monitor.weighted_energy(state)
        moved = monitor.weighted_energy(shifted)
        return [self._check("energy", "flat_density_weight_collapses", _relative(abs(energy - expected), expected),
                            1e-12),
                self._check("energy", "translation_invariance", _relative(abs(base - moved), base), 1e-12)]

    def vector_field_suite(self, rng: np.random.Generator) -> List[SelfTestCheck]:
        grid = Grid.cubic(1, 256, 64.0)
        spectral = SpectralManager(grid, self._threads)
        x = grid.centered_coordinates[0]
        sigma, t = 1.0, 2.0
        initial = np.exp(-x ** 2 / (4.0 * sigma)).astype(np.complex128)
        exact = np.sqrt(sigma / (sigma + 1j * t)) * np.exp(-x ** 2 / (4.0 * (sigma + 1j * t)))
        gaussian_error = float(np.max(np.abs(spectral.free_propagate(initial, t) - exact)))
        model = self._unit_model()
        scattering = ScatteringManager(NonlinearityProcessor(model, spectral), MadelungProcessor(model, spectral),
                                       DecayAnalyzer(), SolverConfig(), ExperimentPlan())
        f = spectral.free_propagate(initial, 0.5)
        conjugated = scattering.vector_field_J(f, 0.5)[0]
        direct = scattering.vector_field_J_direct(f, 0.5)[0]
        j_error = _relative(float(np.linalg.norm(conjugated - direct)), float(np.linalg.norm(direct)))
        g = spectral.free_propagate(np.exp(-(x - 1.0) ** 2 / 3.0).astype(np.complex128), 0.5)
        constant = scattering.identity_constant(f, g, 0.5)
        plan = ExperimentPlan(final_times=[2.0, 3.0], sample_count=4, s_reg=1.0, quadrature_order=8, panel_width=0.5)
        split = ScatteringManager(NonlinearityProcessor(model, spectral), MadelungProcessor(model, spectral),
                                  DecayAnalyzer(), SolverConfig(), plan, quadrature_tolerance=1e-5)
        dipole = ProfileManager(spectral, LittlewoodPaleyManager(spectral), s_reg=1.0).gaussian_dipole(0.01, 2.0)
        z22_direct, z22_subtracted = split.re_z22_two_path(dipole, 2.0, 1.0)
        two_path = _relative(float(np.max(np.abs(z22_direct - z22_subtracted))), float(np.max(np.abs(z22_direct))))
        return [self._check("vector_field", "free_gaussian_closed_form", gaussian_error, 1e-8),
                self._check("vector_field", "conjugated_weight_matches_x_plus_2it_grad", j_error, 1e-8),
                self._check("vector_field", "identity_constant_minus_2", abs(constant - 2.0), 1e-6),
                self._check("vector_field", "re_z22_two_path", two_path, 1e-10)]
