import logging
from typing import Callable, Dict, Iterable, Optional, Type

import numpy as np

from data_classes.solver_config import SolverConfig
from enums.solver_scheme import IntegrationDirection, SolverScheme
from exceptions.blowup_detected import BlowupDetectedError
from exceptions.density_range_violation import DensityRangeViolation
from exceptions.step_rejected import StepRejectedError
from integrators.interfaces import IStepStrategy, State
from integrators.step_strategies import EtdRk4Strategy, Rk4PrimitiveStrategy, StrangSplitStrategy
from model.trajectory_model import TrajectoryModel
from utils.nonlinearity_processor import NonlinearityProcessor

logger = logging.getLogger(__name__)

TIME_EPSILON = 1e-12


class Integrator:
    """
    Drives one step strategy over a time interval with step-defect control and snapshot recording.
    """

    _strategies: Dict[SolverScheme, Type[IStepStrategy]] = {
        SolverScheme.STRANG_SPLIT_RK4: StrangSplitStrategy,
        SolverScheme.ETD_RK4: EtdRk4Strategy,
        SolverScheme.RK4_PSEUDOSPECTRAL: Rk4PrimitiveStrategy,
    }

    def __init__(self, processor: NonlinearityProcessor, config: SolverConfig) -> None:
        """
        Args:
            processor (NonlinearityProcessor): Right-hand sides of the model.
            config (SolverConfig): Step size, scheme and control parameters.
        """
        self._processor = processor
        self._config = config
        self._strategy = self._get_strategy(config.scheme)
        self.rejections = 0

    def _get_strategy(self, scheme: SolverScheme) -> IStepStrategy:
        strategy_class = self._strategies.get(scheme)
        if strategy_class is None:
            raise ValueError(f"No step strategy for scheme {scheme}")
        return strategy_class(self._processor)

    @property
    def processor(self) -> NonlinearityProcessor:
        return self._processor

    @property
    def config(self) -> SolverConfig:
        return self._config

    @property
    def strategy(self) -> IStepStrategy:
        return self._strategy

    def stability_dt(self) -> float:
        """
        dt_max of the configured scheme on the processor's grid.
        """
        return self._strategy.stability_dt(self._processor.model, self._processor.spectral_manager.grid,
                                           self._config.safety, self._config.amplitude_ceiling)

    def step(self, state: State, t: float, dt: float) -> State:
        """
        One controlled step: the step is compared with two half steps and halved recursively while the
        relative defect exceeds the tolerance or the state leaves the working interval.

        Args:
            state (State): State at time t.
            t (float): Current time.
            dt (float): Signed step.

        Returns:
            State: The state at t + dt.

        Raises:
            StepRejectedError: If the defect persists after max_step_rejections halvings.
            DensityRangeViolation: If the state leaves the working interval at the smallest step.
        """
        return self._controlled_step(state, t, dt, 0)

    def _controlled_step(self, state: State, t: float, dt: float, depth: int) -> State:
        strategy = self._strategy
        tolerance = self._config.defect_tolerance
        try:
            full = strategy.step(state, t, dt)
            strategy.check(full)
            if tolerance is None:
                return full
            half = strategy.step(strategy.step(state, t, dt / 2.0), t + dt / 2.0, dt / 2.0)
            strategy.check(half)
            defect = strategy.distance(full, half) / max(strategy.size(half), 1e-300)
            if defect <= tolerance:
                return half
            reason = StepRejectedError(f"relative defect {defect:.3e} above {tolerance:.1e} at t = {t:.6g}")
        except DensityRangeViolation as error:
            reason = error
        if depth >= self._config.max_step_rejections:
            logger.warning("Step at t = %.6g rejected after %d halvings: %s", t, depth, reason)
            if isinstance(reason, DensityRangeViolation):
                raise reason
            raise StepRejectedError(f"Step at t = {t:.6g} rejected after {depth} halvings: {reason}")
        self.rejections += 1
        logger.debug("Halving step %.3e at t = %.6g: %s", dt, t, reason)
        middle = self._controlled_step(state, t, dt / 2.0, depth + 1)
        return self._controlled_step(middle, t + dt / 2.0, dt / 2.0, depth + 1)

    def evolve(self, state: State, t0: float, t1: float, sample_times: Optional[Iterable[float]] = None,
               trajectory: Optional[TrajectoryModel] = None,
               stop_condition: Optional[Callable[[], bool]] = None) -> TrajectoryModel:
        """
        Integrates from t0 to t1, landing exactly on every sample time inside the interval.

        Args:
            state (State): State at t0.
            t0 (float): Start time.
            t1 (float): End time; t1 < t0 integrates backward.
            sample_times (Iterable[float], optional): Times to record besides t0 and t1.
            trajectory (TrajectoryModel, optional): Publisher receiving the snapshots.
            stop_condition (Callable[[], bool], optional): Checked after every snapshot; True aborts.

        Returns:
            TrajectoryModel: The recorded snapshots, in integration order.

        Raises:
            ValueError: If the interval orientation contradicts the configured direction.
            BlowupDetectedError: If the stop condition fires.
        """
        backward = t1 < t0
        expected = IntegrationDirection.BACKWARD if backward else IntegrationDirection.FORWARD
        if t1 != t0 and self._config.direction is not expected:
            raise ValueError(f"Interval [{t0}, {t1}] contradicts direction {self._config.direction.name}")
        trajectory = trajectory if trajectory is not None else TrajectoryModel()
        low, high = min(t0, t1), max(t0, t1)
        requested = [] if sample_times is None else sample_times
        stops = sorted({float(s) for s in requested if low < s < high}, reverse=backward)
        stops.append(float(t1))
        cadence = max(1, self._config.snapshot_cadence)

        strategy = self._strategy
        strategy.check(state)
        self._record(trajectory, t0, state, stop_condition)
        if t1 == t0:
            return trajectory
        sign = -1.0 if backward else 1.0
        dt = self._config.dt
        t = float(t0)
        span = abs(t1 - t0)
        next_report = 0.1
        for index, stop in enumerate(stops):
            while sign * (stop - t) > TIME_EPSILON:
                remaining = abs(stop - t)
                steps = int(np.ceil(remaining / dt - 1e-9))
                h = sign * remaining / steps
                state = self.step(state, t, h)
                t = t + h if steps > 1 else stop
                if span > 0 and abs(t - t0) / span >= next_report:
                    logger.info("Integrated %.0f%% of [%g, %g]", 100.0 * abs(t - t0) / span, t0, t1)
                    next_report += 0.1
            t = stop
            if stop == t1 or (index + 1) % cadence == 0:
                self._record(trajectory, t, state, stop_condition)
        return trajectory

    @staticmethod
    def _record(trajectory: TrajectoryModel, t: float, state: State,
                stop_condition: Optional[Callable[[], bool]]) -> None:
        trajectory.append_snapshot(t, state)
        if stop_condition is not None and stop_condition():
            raise BlowupDetectedError(f"Continuation criterion failed at t = {t:.6g}")
