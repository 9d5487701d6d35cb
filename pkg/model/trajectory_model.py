from typing import Dict, List, Tuple, Union

import numpy as np

from data_classes.fluid_state import FluidState, MadelungState
from model.interfaces import ITrajectoryModel

State = Union[FluidState, MadelungState]


class TrajectoryModel(ITrajectoryModel):
    """
    Snapshots of one run in the order they were produced (backward runs record decreasing times).
    """

    def __init__(self, label: str = "trajectory") -> None:
        super().__init__()
        self._label = label
        self._times: List[float] = []
        self._states: List[State] = []

    @property
    def label(self) -> str:
        return self._label

    @property
    def is_complex(self) -> bool:
        return bool(self._states) and isinstance(self._states[0], MadelungState)

    def append_snapshot(self, t: float, state: State) -> None:
        self._times.append(float(t))
        self._states.append(state)
        self.notify_observers()

    def get_times(self) -> List[float]:
        return list(self._times)

    def get_states(self) -> List[State]:
        return list(self._states)

    def latest(self) -> Tuple[float, State]:
        if not self._states:
            raise IndexError("The trajectory holds no snapshots")
        return self._times[-1], self._states[-1]

    def state_at(self, t: float) -> State:
        """
        Returns the snapshot recorded closest to t.
        """
        if not self._states:
            raise IndexError("The trajectory holds no snapshots")
        index = int(np.argmin(np.abs(np.asarray(self._times) - t)))
        return self._states[index]

    def sorted_items(self) -> List[Tuple[float, State]]:
        """Snapshots in increasing time order."""
        return sorted(zip(self._times, self._states), key=lambda item: item[0])

    def __len__(self) -> int:
        return len(self._times)

    def get_state(self) -> Dict[str, object]:
        return {"label": self._label,
                "snapshots": len(self._times),
                "kind": "complex" if self.is_complex else "primitive",
                "time_span": [min(self._times), max(self._times)] if self._times else None}
