import json
import re

import pytest

from enums.kappa_family import KappaFamily
from enums.solver_scheme import SolverScheme
from exceptions.config_error import ConfigError
from input_output.file_handler import FileHandler
from model.capillarity_model import TruncatedCapillarityModel
from utils.path_manager import PathManager
from utils.settings_manager import SettingsManager


@pytest.fixture
def settings(tmp_path):
    return SettingsManager(FileHandler(path_manager=PathManager(out_directory=str(tmp_path))))


@pytest.fixture
def write_config(tmp_path):
    def write(text, name="experiment.toml"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def test_defaults_build_the_quantum_model(settings):
    settings.load()
    assert settings.source == "<defaults>"
    model = settings.build_model()
    assert model.capillarity.family is KappaFamily.QUANTUM
    assert settings.build_grid().points_per_axis == (64, 64, 64)
    assert settings.rng_seed == 20240611
    assert settings.threads == 1


def test_example_configuration(settings):
    settings.load(PathManager().resolve_path("example_config"))
    assert settings.build_model().unit_normalized
    assert settings.build_solver_config().scheme is SolverScheme.ETD_RK4
    assert settings.build_plan().final_times == [8.0, 16.0]
    assert settings.section("profile")["width"] == 2.0
    assert settings.threads == 2


def test_user_file_is_merged_over_defaults(settings, write_config):
    path = write_config("[grid]\ndim = 1\nbox_length = 40\n")
    effective = settings.load(path)
    assert effective["grid"] == {"dim": 1, "points": 64, "box_length": 40.0}
    assert isinstance(effective["grid"]["box_length"], float)
    assert effective["model"]["kappa_family"] == "quantum"


def test_unknown_key_is_anchored_at_its_line(settings, write_config):
    path = write_config("rng_seed = 1\n\n[grid]\ndim = 3\npointz = 32\n")
    with pytest.raises(ConfigError, match=re.escape(path) + r":5: unknown key 'pointz' at \[grid\]"):
        settings.load(path)


def test_unknown_section_is_rejected(settings, write_config):
    path = write_config("[grid]\ndim = 3\n\n[sover]\ndt = 0.1\n")
    with pytest.raises(ConfigError, match=r"unknown key .sover. at top level"):
        settings.load(path)


@pytest.mark.parametrize("line", ['dim = "three"', "dim = true", "dim = 2.5"])
def test_mistyped_integer_is_rejected(settings, write_config, line):
    path = write_config(f"[grid]\n{line}\n")
    with pytest.raises(ConfigError, match=r":2: 'dim' expects int"):
        settings.load(path)


def test_same_key_in_another_section_gets_its_own_line(settings, write_config):
    path = write_config('[gauge]\nsamples = 5\n\n[simulate]\nsamples = "many"\n')
    with pytest.raises(ConfigError, match=r":5: 'samples' expects int"):
        settings.load(path)


def test_list_elements_are_checked(settings, write_config):
    path = write_config('[plan]\nfinal_times = [8.0, "sixteen"]\n')
    with pytest.raises(ConfigError, match=r":2: 'final_times'"):
        settings.load(path)


def test_section_must_be_a_table(settings, write_config):
    path = write_config("grid = 3\n")
    with pytest.raises(ConfigError, match="must be a section"):
        settings.load(path)


def test_json_configuration_accepts_null_tolerance(settings, write_config):
    path = write_config(json.dumps({"solver": {"defect_tolerance": None}}, indent=2), "experiment.json")
    settings.load(path)
    assert settings.build_solver_config().defect_tolerance is None


def test_missing_and_unsupported_files(settings, write_config, tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        settings.load(str(tmp_path / "absent.toml"))
    with pytest.raises(ConfigError, match="use a .toml or .json"):
        settings.load(write_config("grid: 3\n", "experiment.yaml"))


def test_toml_syntax_error(settings, write_config):
    with pytest.raises(ConfigError):
        settings.load(write_config("[grid\ndim = 3\n"))


def test_overrides_skip_missing_values(settings):
    effective = settings.load(overrides={"output.directory": "elsewhere", "output.threads": None, "rng_seed": 5})
    assert effective["output"]["directory"] == "elsewhere"
    assert effective["output"]["threads"] == 1
    assert settings.rng_seed == 5


def test_bad_enum_value(settings, write_config):
    settings.load(write_config('[model]\nkappa_family = "plasma"\n'))
    with pytest.raises(ConfigError, match=r":2: 'kappa_family' must be one of quantum, constant, power"):
        settings.build_model()


@pytest.mark.parametrize("text, builder", [
    ("[grid]\npoints = 12\n", "build_grid"),
    ("[model]\npressure = \"user_polynomial\"\npressure_coefficients = [1.0, 0.5]\n", "build_model"),
    ("[model]\ndensity_interval = [1.5, 3.0]\n", "build_model"),
    ("[model]\ndensity_interval = [0.5]\n", "build_model"),
    ("[plan]\nfinal_times = [16.0, 8.0]\n", "build_plan"),
    ("[solver]\ndt = -0.1\n", "build_solver_config"),
    ('[resonance]\nsigns = "+x"\n', "resonance_symbol"),
])
def test_invalid_values_become_config_errors(settings, write_config, text, builder):
    settings.load(write_config(text))
    with pytest.raises(ConfigError):
        getattr(settings, builder)()


def test_truncated_switch(settings, write_config):
    settings.load(write_config("[model]\ntruncated = true\n"))
    assert isinstance(settings.build_model(), TruncatedCapillarityModel)
