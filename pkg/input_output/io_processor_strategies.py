from typing import Dict

from data_classes.grid import Grid
from data_classes.spectral_field import SpectralField
from enums.representation import Representation
from input_output.interfaces import IProcessorStrategy


class SnapshotProcessor(IProcessorStrategy):
    """Processes raw snapshot content into a SpectralField."""

    def __init__(self, data: Dict) -> None:
        """
        Args:
            data (Dict): Raw snapshot as read by the field strategy.
                Expected format:
                    {"data": np.ndarray, "meta": {"dim": str, "points_per_axis": str, "box_length": str,
                    "representation": str, "time": str}}
        """
        super().__init__(data)

    def process(self) -> SpectralField:
        meta = self.data["meta"]
        grid = Grid(int(meta["dim"]),
                    tuple(int(n) for n in meta["points_per_axis"].split(",")),
                    tuple(float(length) for length in meta["box_length"].split(",")))
        representation = Representation[meta["representation"].upper()]
        return SpectralField(grid, self.data["data"], representation, float(meta["time"]))

    @staticmethod
    def to_raw(field: SpectralField) -> Dict:
        """
        Inverse of process: builds the dictionary the field strategy writes.

        Args:
            field (SpectralField): Field to store.

        Returns:
            Dict: {"data": ..., "meta": ...}; floats use repr so the text round trip is exact.
        """
        grid = field.grid
        meta = {
            "dim": str(grid.dim),
            "points_per_axis": ",".join(str(n) for n in grid.points_per_axis),
            "box_length": ",".join(repr(float(length)) for length in grid.box_length),
            "representation": field.representation.name.lower(),
            "time": repr(float(field.time)),
        }
        return {"data": field.data, "meta": meta}
