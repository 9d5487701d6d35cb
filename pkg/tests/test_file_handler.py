import os

import numpy as np
import pytest

from data_classes.grid import Grid
from data_classes.spectral_field import SpectralField
from enums.representation import Representation
from exceptions.config_error import ConfigError
from input_output.file_handler import FileHandler
from utils.path_manager import ROOT_DIRECTORY, PathManager


@pytest.fixture
def handler(tmp_path):
    return FileHandler(path_manager=PathManager(out_directory=str(tmp_path)))


def test_output_keys_expand_the_placeholder(tmp_path):
    paths = PathManager(out_directory=str(tmp_path))
    assert paths.resolve_path("report") == os.path.join(str(tmp_path), "report.json")
    assert paths.resolve_path("experiment_defaults").startswith(ROOT_DIRECTORY)
    assert "selftest_table" in paths.output_keys()
    assert "experiment_defaults" not in paths.output_keys()
    paths.update_paths(str(tmp_path / "other"))
    assert paths.resolve_path("report") == os.path.join(str(tmp_path / "other"), "report.json")


def test_raw_paths_pass_through(handler, tmp_path):
    target = str(tmp_path / "plain.json")
    assert handler.resolve_path(target) == os.path.normpath(target)


def test_snapshot_round_trip(handler, rng):
    grid = Grid(2, (8, 16), (3.5, 7.25))
    data = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    field = SpectralField(grid, data, Representation.FOURIER, time=1.25)
    assert handler.write_snapshot("snapshot_directory", field, "z.field")
    loaded = handler.read_snapshot("snapshot_directory", "z.field")
    assert loaded.grid == grid
    assert loaded.representation is Representation.FOURIER
    assert loaded.time == 1.25
    assert np.array_equal(loaded.data, data.astype(np.complex64))


def test_snapshot_bytes_are_little_endian_complex64(handler, tmp_path):
    grid = Grid.cubic(1, 8, 1.0)
    data = np.arange(8) + 0.5j
    handler.write_snapshot("snapshot_directory", SpectralField.physical(grid, data), "line.field")
    path = tmp_path / "snapshots" / "line.field"
    raw = path.read_bytes()
    assert len(raw) == 8 * 8
    assert np.array_equal(np.frombuffer(raw, dtype="<f4")[:4], [0.0, 0.5, 1.0, 0.5])
    meta = (tmp_path / "snapshots" / "line.field.meta").read_text().splitlines()
    assert meta == ["dim = 1", "points_per_axis = 8", "box_length = 1.0", "representation = physical", "time = 0.0"]


def test_snapshot_meta_errors(handler, tmp_path):
    grid = Grid.cubic(1, 8, 1.0)
    handler.write_snapshot("snapshot_directory", SpectralField.zeros(grid), "bad.field")
    meta = tmp_path / "snapshots" / "bad.field.meta"
    meta.write_text("dim = 1\npoints_per_axis = 8\n")
    with pytest.raises(ConfigError):
        handler.read_snapshot("snapshot_directory", "bad.field")
    meta.write_text("dim 1\n")
    with pytest.raises(ConfigError, match=":1:"):
        handler.read_snapshot("snapshot_directory", "bad.field")
    meta.write_text("dim = 1\npoints_per_axis = 16\nbox_length = 1.0\nrepresentation = physical\ntime = 0.0\n")
    with pytest.raises(ConfigError):
        handler.read_snapshot("snapshot_directory", "bad.field")


def test_json_syntax_error_names_the_line(handler, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "grid": {\n    "dim": 3,\n  }\n}\n')
    with pytest.raises(ConfigError, match=r"broken\.json:\d+"):
        handler.read_file(str(path))


def test_csv_tables(handler):
    rows = [{"t": 1.0, "value": 0.5}, {"t": 2.0, "value": 0.25}]
    assert handler.write_file("gauge_table", {"data": rows})
    assert handler.read_file("gauge_table")["data"] == [{"t": "1.0", "value": "0.5"}, {"t": "2.0", "value": "0.25"}]
    assert handler.write_file("cauchy_table", {"data": [], "fieldnames": ["T_low", "T_high", "difference"]})
    assert handler.read_file("cauchy_table")["data"] == []
    assert not handler.write_file("besov_table", {"rows": rows})


def test_toml_is_read_only(handler, tmp_path):
    path = tmp_path / "experiment.toml"
    path.write_text("rng_seed = 3\n[grid]\ndim = 1\n")
    assert handler.read_file(str(path)) == {"rng_seed": 3, "grid": {"dim": 1}}
    assert not handler.write_file(str(tmp_path / "echo.toml"), {"rng_seed": 3})


def test_unknown_extension_is_rejected(handler, tmp_path):
    with pytest.raises(ValueError):
        handler.read_file(str(tmp_path / "notes.txt"))
