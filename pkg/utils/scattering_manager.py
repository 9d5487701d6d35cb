import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import roots_legendre

from data_classes.decay_series import DecaySeries
from data_classes.experiment_plan import ExperimentPlan
from data_classes.fluid_state import MadelungState
from data_classes.profile import Profile
from data_classes.solver_config import SolverConfig
from enums.duhamel_integrand import DuhamelIntegrand
from enums.solver_scheme import IntegrationDirection
from exceptions.config_error import ConfigError
from exceptions.quadrature_not_converged import QuadratureNotConvergedError
from integrators.integrator import Integrator
from model.trajectory_model import TrajectoryModel
from observer.interfaces import IObserver
from utils.decay_analyzer import DecayAnalyzer
from utils.madelung_processor import MadelungProcessor
from utils.nonlinearity_processor import NonlinearityProcessor

logger = logging.getLogger(__name__)

WRAP_TAIL = 1e-6


class ScatteringManager:
    """
    Final-data construction around a free profile: z1 = e^{it Lap} phi, the Duhamel second
    approximation z2 and its split, the backward solve from T_n, and the decay diagnostics built on them.
    """

    def __init__(self, processor: NonlinearityProcessor, madelung_processor: MadelungProcessor,
                 decay_analyzer: DecayAnalyzer, solver_config: SolverConfig, plan: ExperimentPlan,
                 quadrature_tolerance: float = 1e-8, workers: int = 1) -> None:
        """
        Args:
            processor (NonlinearityProcessor): Nonlinearity of the complex formulation.
            madelung_processor (MadelungProcessor): Conversion back to (rho, u).
            decay_analyzer (DecayAnalyzer): Fits of the decay series.
            solver_config (SolverConfig): Time stepping of the backward solve.
            plan (ExperimentPlan): Quadrature order, panel width and fit windows.
            quadrature_tolerance (float): Relative bound of the node-doubling test.
            workers (int): Threads evaluating quadrature nodes of one panel.
        """
        self._processor = processor
        self._spectral = processor.spectral_manager
        self._madelung = madelung_processor
        self._analyzer = decay_analyzer
        self._solver_config = solver_config
        self._plan = plan
        self._quadrature_tolerance = quadrature_tolerance
        self._workers = max(1, int(workers))
        self._last_quadrature_change = 0.0

    @property
    def plan(self) -> ExperimentPlan:
        return self._plan

    @property
    def quadrature_tolerance(self) -> float:
        return self._quadrature_tolerance

    @property
    def last_quadrature_change(self) -> float:
        """Largest relative node-doubling change of the latest Duhamel sweep."""
        return self._last_quadrature_change

    def fit_window(self, final_time: float) -> Tuple[float, float]:
        return self._plan.fit_window(final_time)

    # free profile

    def linear_profile_z1(self, profile: Profile, t: float) -> np.ndarray:
        """z1(t) = e^{it Lap} phi."""
        return np.asarray(self._spectral.free_propagate(profile.field.data, t), dtype=np.complex128)

    def wrap_around_horizon(self, profile: Profile) -> float:
        return self._spectral.wrap_around_horizon(profile.field.data)

    # Duhamel quadrature

    def _integrand(self, kind: DuhamelIntegrand) -> Callable[[np.ndarray], np.ndarray]:
        processor = self._processor
        spectral = self._spectral
        model = processor.model

        def z22(z: np.ndarray) -> np.ndarray:
            if model.linear_only:
                return np.zeros_like(z)
            gradient_squared = sum(np.abs(g) ** 2 for g in spectral.gradient(z))
            return processor.filtered(-0.5j * (model.c_g * np.abs(z) ** 2 + model.c_a * gradient_squared))

        def z21(z: np.ndarray) -> np.ndarray:
            if model.linear_only:
                return np.zeros_like(z)
            gradient = spectral.gradient(z)
            conjugate = np.conj(z)
            flux = spectral.divergence([conjugate * g for g in gradient])
            quadratic = 0.25j * (2.0 * sum(g * g for g in gradient) - model.c_g * (z * z + conjugate * conjugate)
                                 + 2.0 * model.c_a * z * spectral.laplacian(z) + 2.0 * model.c_a * flux)
            return processor.filtered(quadratic) + processor.cubic_remainder(z)

        return {DuhamelIntegrand.FULL: processor.full_nonlinearity,
                DuhamelIntegrand.Z22: z22,
                DuhamelIntegrand.Z21: z21}[kind]

    def _sweep(self, profile_hat: np.ndarray, final_time: float, times: Sequence[float],
               integrand: Callable[[np.ndarray], np.ndarray], panel_width: float,
               executor: Optional[ThreadPoolExecutor]) -> Dict[float, np.ndarray]:
        spectral = self._spectral
        xi_squared = spectral.grid.xi_squared
        nodes, weights = roots_legendre(self._plan.quadrature_order)

        def transformed(s: float) -> np.ndarray:
            z1 = spectral.inverse(np.exp(-1j * s * xi_squared) * profile_hat)
            return np.exp(1j * s * xi_squared) * spectral.forward(integrand(z1))

        accumulated = np.zeros(spectral.grid.shape, dtype=np.complex128)
        current = float(final_time)
        results: Dict[float, np.ndarray] = {}
        for t in sorted(set(float(t) for t in times), reverse=True):
            length = current - t
            panels = int(np.ceil(length / panel_width - 1e-12)) if length > 0 else 0
            edges = np.linspace(current, t, panels + 1)
            for a, b in zip(edges[:-1], edges[1:]):
                half = (b - a) / 2.0
                s_nodes = (a + b) / 2.0 + half * nodes
                values = executor.map(transformed, s_nodes) if executor else map(transformed, s_nodes)
                for weight, value in zip(weights, values):
                    accumulated += half * weight * value
            current = t
            results[t] = spectral.inverse(spectral.propagator_symbol(t) * accumulated)
        return results

    def duhamel_series(self, profile: Profile, final_time: float, times: Iterable[float],
                       kind: DuhamelIntegrand = DuhamelIntegrand.FULL) -> Dict[float, np.ndarray]:
        """
        int_{T_n}^t e^{i(t-s) Lap} G(z1(s)) ds at every requested t, in one backward sweep of
        Gauss-Legendre panels, checked against a sweep with twice as many panels.

        Args:
            profile (Profile): The profile phi.
            final_time (float): T_n.
            times (Iterable[float]): Evaluation times inside [1, T_n].
            kind (DuhamelIntegrand): Which integrand G.

        The doubling test is relative per time: ||fine(t) - coarse(t)|| / ||fine(t)|| must stay within
        the tolerance at every t, and the largest such ratio is kept in last_quadrature_change.

        Returns:
            Dict[float, np.ndarray]: The integral per time, from the refined sweep.

        Raises:
            ValueError: If a time lies after T_n.
            QuadratureNotConvergedError: If refining changes the result at some time by more than the tolerance.
        """
        times = [float(t) for t in times]
        if any(t > final_time + 1e-12 for t in times):
            raise ValueError(f"Duhamel times must not exceed T_n = {final_time}")
        times = [min(t, final_time) for t in times]
        profile_hat = self._spectral.forward(profile.field.data)
        integrand = self._integrand(kind)
        width = self._plan.panel_width
        executor = ThreadPoolExecutor(max_workers=self._workers) if self._workers > 1 else None
        try:
            coarse = self._sweep(profile_hat, final_time, times, integrand, width, executor)
            fine = self._sweep(profile_hat, final_time, times, integrand, width / 2.0, executor)
        finally:
            if executor:
                executor.shutdown()
        worst = 0.0
        for t, value in fine.items():
            change = float(np.linalg.norm(value - coarse[t]))
            if change == 0.0:
                continue
            relative = change / max(float(np.linalg.norm(value)), 1e-300)
            worst = max(worst, relative)
            if relative > self._quadrature_tolerance:
                raise QuadratureNotConvergedError(
                    f"{kind.name} quadrature at t = {t:.6g} changed by {relative:.3e} under node doubling")
        self._last_quadrature_change = worst
        logger.debug("%s Duhamel sweep over %d times converged, worst change %.3e", kind.name, len(fine), worst)
        return fine

    def duhamel_z2(self, profile: Profile, final_time: float, t: float) -> np.ndarray:
        """z2(t) = int_{T_n}^t e^{i(t-s) Lap} (N2 + N3)(z1(s)) ds."""
        return self.duhamel_series(profile, final_time, [t])[float(min(t, final_time))]

    def z22_part(self, profile: Profile, final_time: float, t: float) -> np.ndarray:
        """z22(t) = -(i/2) int_{T_n}^t e^{i(t-s) Lap} (c_g |z1|^2 + c_a |grad z1|^2) ds."""
        return self.duhamel_series(profile, final_time, [t], DuhamelIntegrand.Z22)[float(min(t, final_time))]

    def z21_direct(self, profile: Profile, final_time: float, t: float) -> np.ndarray:
        return self.duhamel_series(profile, final_time, [t], DuhamelIntegrand.Z21)[float(min(t, final_time))]

    def re_z22_two_path(self, profile: Profile, final_time: float, t: float) -> Tuple[np.ndarray, np.ndarray]:
        """
        Re z22(t) directly and as (1/2) Im int_{T_n}^t (e^{i(t-s) Lap} - 1) R(s) ds with the real
        density R = c_g |z1|^2 + c_a |grad z1|^2, on the same quadrature nodes.

        Returns:
            Tuple[np.ndarray, np.ndarray]: (direct, subtracted) real fields.
        """
        direct = self.z22_part(profile, final_time, t).real
        spectral = self._spectral
        model = self._processor.model
        nodes, weights = roots_legendre(self._plan.quadrature_order)
        length = final_time - t
        panels = int(np.ceil(length / (self._plan.panel_width / 2.0) - 1e-12)) if length > 0 else 0
        edges = np.linspace(final_time, t, panels + 1)
        total = np.zeros(spectral.grid.shape, dtype=np.complex128)
        for a, b in zip(edges[:-1], edges[1:]):
            half = (b - a) / 2.0
            for node, weight in zip(nodes, weights):
                s = (a + b) / 2.0 + half * node
                z1 = self.linear_profile_z1(profile, s)
                density = model.c_g * np.abs(z1) ** 2 + model.c_a * sum(np.abs(g) ** 2 for g in spectral.gradient(z1))
                density = self._processor.filtered(density.astype(np.complex128))
                total += half * weight * (spectral.free_propagate(density, t - s) - density)
        if model.linear_only:
            total[...] = 0.0
        return direct, 0.5 * total.imag

    def homogeneity_exponent(self, profile: Profile, factor: float, final_time: float, t: float) -> float:
        """
        log(||z2[factor phi]|| / ||z2[phi]||) / log(factor); 2 at leading order.
        """
        scaled = Profile(profile.generator, profile.field.with_data(profile.field.data * factor), profile.parameters)
        base = np.linalg.norm(self.duhamel_z2(profile, final_time, t))
        other = np.linalg.norm(self.duhamel_z2(scaled, final_time, t))
        if base == 0 or other == 0:
            return float("nan")
        return float(np.log(other / base) / np.log(factor))

    # final-data problem

    def final_data_solve(self, profile: Profile, final_time: float, sample_times: Iterable[float],
                         observers: Sequence[IObserver] = (),
                         stop_condition: Optional[Callable[[], bool]] = None) -> TrajectoryModel:
        """
        Sets z(T_n) = e^{i T_n Lap} phi and integrates backward to t = 1.

        Args:
            profile (Profile): The profile phi.
            final_time (float): T_n >= 1.
            sample_times (Iterable[float]): Times to record inside [1, T_n].
            observers (Sequence[IObserver]): Monitors attached to the trajectory.
            stop_condition (Callable[[], bool], optional): Abort test run after every snapshot.

        Returns:
            TrajectoryModel: Snapshots from T_n down to 1.

        Raises:
            ConfigError: If the configured scheme does not integrate the complex formulation.
            BlowupDetectedError: If the stop condition fires.
        """
        if not self._solver_config.scheme.is_complex_form():
            raise ConfigError("Final-data solves need a complex-form scheme (strang_split_rk4 or etd_rk4)")
        if final_time < 1:
            raise ValueError(f"T_n must be >= 1, got {final_time}")
        if profile.norms is not None and not profile.norms.admissible:
            logger.warning("Profile epsilon_0 = %.3e is above the smallness threshold %.3e",
                           profile.norms.epsilon0, profile.norms.threshold)
        integrator = Integrator(self._processor, self._solver_config.towards(IntegrationDirection.BACKWARD))
        trajectory = TrajectoryModel(label=f"T_n={final_time:g}")
        for observer in observers:
            trajectory.add_observer(observer)
        start = MadelungState(self._spectral.grid, self.linear_profile_z1(profile, final_time))
        logger.info("Backward solve from T_n = %g to 1", final_time)
        integrator.evolve(start, final_time, 1.0, sample_times, trajectory, stop_condition)
        if integrator.rejections:
            logger.info("Backward solve needed %d step halvings", integrator.rejections)
        return trajectory

    def bootstrap_series(self, trajectory: TrajectoryModel, profile: Profile, final_time: float,
                         s_reg: float) -> Tuple[DecaySeries, float]:
        """
        t^{3/2} ||z - z1 - z2||_{H^{s_reg + 1}} along the trajectory and its supremum Z.
        """
        items = trajectory.sorted_items()
        second = self.duhamel_series(profile, final_time, [t for t, _ in items])
        series = DecaySeries("bootstrap_Z")
        for t, state in items:
            remainder = state.z - self.linear_profile_z1(profile, t) - second[float(min(t, final_time))]
            series.append(t, t ** 1.5 * self._spectral.sobolev_norm(remainder, s_reg + 1.0))
        supremum = max(series.values, default=0.0)
        return series, float(supremum)

    def scattering_error(self, trajectory: TrajectoryModel, profile: Profile) -> Tuple[DecaySeries, DecaySeries]:
        """
        ||rho - 1 - delta Re z1||_{L^2} and ||u - Im grad z1||_{L^2} along the trajectory, fitted on the window.
        """
        density = DecaySeries("density_error")
        velocity = DecaySeries("velocity_error")
        delta = self._processor.model.delta
        for t, state in trajectory.sorted_items():
            fluid = self._madelung.from_complex(state)
            z1 = self.linear_profile_z1(profile, t)
            density.append(t, self._spectral.lebesgue_norm(fluid.rho - 1.0 - delta * z1.real, 2))
            gradient = self._spectral.gradient(z1)
            velocity.append(t, np.sqrt(sum(self._spectral.lebesgue_norm(u - g.imag, 2) ** 2
                                           for u, g in zip(fluid.u, gradient))))
        return density, velocity

    def remainder_series(self, trajectory: TrajectoryModel, profile: Profile, s_reg: float) -> List[DecaySeries]:
        """
        ||z - z1||_{H_dot^1}, ||z - z1||_{H_dot^{s_reg}}, ||l - Re z1||_{L^2} and ||l||_{L^2} ||l||_{L^inf}.
        """
        first = DecaySeries("remainder_hdot1")
        regular = DecaySeries("remainder_hdot_sreg")
        real_part = DecaySeries("ell_minus_re_z1")
        product = DecaySeries("ell_l2_times_linf")
        for t, state in trajectory.sorted_items():
            difference = state.z - self.linear_profile_z1(profile, t)
            first.append(t, self._spectral.sobolev_norm(difference, 1.0, homogeneous=True))
            regular.append(t, self._spectral.sobolev_norm(difference, s_reg, homogeneous=True))
            real_part.append(t, self._spectral.lebesgue_norm(difference.real, 2))
            product.append(t, self._spectral.lebesgue_norm(state.ell, 2) * self._spectral.lebesgue_norm(state.ell, np.inf))
        return [first, regular, real_part, product]

    def second_approximation_series(self, profile: Profile, final_time: float, times: Iterable[float],
                                    alpha: float = 1.0) -> Dict[str, DecaySeries]:
        """
        ||Re z2||_{L^2}, t^{3/2} ||Re z2||_{L^2}, ||z2||_{L^2} and ||z2||_{H_dot^alpha} at the given times.
        """
        values = self.duhamel_series(profile, final_time, times)
        series = {name: DecaySeries(name) for name in ("re_z2_l2", "re_z2_scaled", "z2_l2", "z2_hdot_alpha")}
        for t in sorted(values):
            z2 = values[t]
            real_norm = self._spectral.lebesgue_norm(z2.real, 2)
            series["re_z2_l2"].append(t, real_norm)
            series["re_z2_scaled"].append(t, t ** 1.5 * real_norm)
            series["z2_l2"].append(t, self._spectral.lebesgue_norm(z2, 2))
            series["z2_hdot_alpha"].append(t, self._spectral.sobolev_norm(z2, alpha, homogeneous=True))
        return series

    def fit(self, series: DecaySeries, final_time: float, wrap_horizon: Optional[float] = None) -> DecaySeries:
        series.wrap_horizon = wrap_horizon
        self._analyzer.fit_series(series, self.fit_window(final_time))
        return series

    def cauchy_differences(self, trajectories: Dict[float, TrajectoryModel], common_times: Sequence[float],
                           s_reg: float) -> List[Dict[str, float]]:
        """
        max over the common times of ||z^{(T')} - z^{(T)}||_{H^{s_reg + 1}} for successive final times.
        """
        rows = []
        finals = sorted(trajectories)
        for low, high in zip(finals, finals[1:]):
            difference = 0.0
            for t in common_times:
                a = trajectories[low].state_at(t)
                b = trajectories[high].state_at(t)
                difference = max(difference, self._spectral.sobolev_norm(b.z - a.z, s_reg + 1.0))
            rows.append({"T_low": low, "T_high": high, "difference": float(difference)})
        return rows

    # vector field and dispersion

    def vector_field_J(self, field: np.ndarray, t: float) -> Tuple[np.ndarray, ...]:
        """
        J(t) f = e^{it Lap} (x e^{-it Lap} f) componentwise, x measured from the box centre.
        """
        spectral = self._spectral
        pulled_back = np.asarray(spectral.free_propagate(np.asarray(field, dtype=np.complex128), -t))
        modulus = np.abs(pulled_back)
        peak = modulus.max()
        if peak > 0:
            tail = max(float(np.take(modulus, 0, axis=axis).max()) for axis in range(modulus.ndim)) / peak
            if tail > WRAP_TAIL:
                logger.warning("J(t) at t = %.4g: boundary tail %.2e, the weight x wraps around", t, tail)
        return tuple(np.asarray(spectral.free_propagate(x * pulled_back, t))
                     for x in spectral.grid.centered_coordinates)

    def vector_field_J_direct(self, field: np.ndarray, t: float) -> Tuple[np.ndarray, ...]:
        """(x + 2it grad) f."""
        field = np.asarray(field, dtype=np.complex128)
        gradient = self._spectral.gradient(field)
        return tuple(x * field + 2j * t * g for x, g in zip(self._spectral.grid.centered_coordinates, gradient))

    def identity_constant(self, first: np.ndarray, second: np.ndarray, t: float) -> float:
        """
        Least-squares c with (1/(it))(conj(f) J g - g conj(J f)) = c grad(conj(f) g).
        """
        if t == 0:
            raise ValueError("The vector-field identity needs t != 0")
        jf = self.vector_field_J(first, t)
        jg = self.vector_field_J(second, t)
        left = self._spectral.gradient(np.conj(first) * second)
        right = [(np.conj(first) * b - second * np.conj(a)) / (1j * t) for a, b in zip(jf, jg)]
        numerator = sum(np.vdot(l, r) for l, r in zip(left, right))
        denominator = sum(np.vdot(l, l) for l in left)
        if abs(denominator) == 0:
            return float("nan")
        return float((numerator / denominator).real)

    def dispersive_ratios(self, profile: Profile, times: Iterable[float],
                          exponents: Sequence[float] = (2.0, 3.0, 6.0, np.inf)) -> Tuple[List[Dict[str, float]], DecaySeries]:
        """
        ||e^{it Lap} g||_{L^p} / (t^{d/p - d/2} ||g||_{L^{p'}}) per time and exponent, and the L^inf series.
        """
        spectral = self._spectral
        dim = spectral.grid.dim
        data = profile.field.data
        rows = []
        supremum = DecaySeries("linf_free")
        for t in times:
            propagated = spectral.free_propagate(data, t)
            for p in exponents:
                dual = 1.0 if np.isinf(p) else p / (p - 1.0)
                inverse_p = 0.0 if np.isinf(p) else 1.0 / p
                bound = t ** (dim * inverse_p - dim / 2.0) * spectral.lebesgue_norm(data, dual)
                value = spectral.lebesgue_norm(propagated, p)
                rows.append({"t": float(t), "p": float(p), "norm": value,
                             "ratio": value / bound if bound > 0 else 0.0})
            supremum.append(t, spectral.lebesgue_norm(propagated, np.inf))
        return rows, supremum
