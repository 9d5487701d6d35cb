import csv
import json

import pytest

from exceptions.config_error import ConfigError
from main import __version__, main
from utils.app_builder import AppBuilder

LINE_GRID = "[grid]\ndim = 1\npoints = 64\nbox_length = 40.0\n"


@pytest.fixture
def out(tmp_path):
    return tmp_path / "run"


@pytest.fixture
def config(tmp_path):
    def write(text=""):
        path = tmp_path / "experiment.toml"
        path.write_text(LINE_GRID + text)
        return str(path)

    return write


def _report(out):
    with open(out / "report.json", encoding="utf-8") as file:
        return json.load(file)


def _rows(path):
    with open(path, newline="", encoding="utf-8") as file:
        return list(csv.DictReader(file))


def test_gauge_for_the_quantum_model(config, out):
    assert main(["gauge", "--config", config(), "--out", str(out)]) == 0
    report = _report(out)
    assert report["subcommand"] == "gauge"
    assert report["version"] == __version__
    assert report["results"]["max_abs_phi_over_sqrt_rho_minus_1"] < 1e-12
    rows = _rows(out / "gauge.csv")
    assert len(rows) == 31 * 4
    assert all(abs(float(row["phi_over_sqrt_rho"]) - 1.0) < 1e-12 for row in rows)
    assert set(report["artefacts"]) == {"gauge.csv", "report.json"}


def test_resonance_map(config, out):
    text = '[resonance]\nsigns = "--"\nsection = "collinear"\nextent = 2.0\npoints = 5\n'
    assert main(["resonance-map", "--config", config(text), "--out", str(out)]) == 0
    results = _report(out)["results"]
    assert results["catalog_name"] == "Omega_3"
    assert results["section"] == "collinear"
    assert results["points"] == 25
    assert len(_rows(out / "resonance_map.csv")) == 25


def test_simulate_writes_trajectory_and_energy(config, out):
    text = "[simulate]\nfinal_time = 0.5\nsamples = 5\n\n[solver]\ndt = 0.05\ndefect_tolerance = 1e-3\n"
    assert main(["simulate", "--config", config(text), "--out", str(out), "--seed", "3"]) == 0
    report = _report(out)
    assert report["config"]["rng_seed"] == 3
    assert report["results"]["formulation"] == "complex"
    assert report["results"]["snapshots"] == 6
    assert "profile" in report
    assert len(_rows(out / "trajectory.csv")) == 6
    assert (out / "energy.csv").exists()


def test_csv_output_can_be_disabled(config, out):
    assert main(["gauge", "--config", config('[output]\nformats = ["json"]\n'), "--out", str(out)]) == 0
    assert not (out / "gauge.csv").exists()
    assert _report(out)["artefacts"] == ["report.json"]


def test_configuration_error_exit_status(config, out, capsys):
    path = config("pointz = 3\n")
    assert main(["gauge", "--config", path, "--out", str(out)]) == 2
    record = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert record["error"] == "config"
    assert f"{path}:5:" in record["message"]


def test_invalid_grid_exit_status(tmp_path, out, capsys):
    path = tmp_path / "grid.toml"
    path.write_text("[grid]\npoints = 12\n")
    assert main(["resonance-map", "--config", str(path), "--out", str(out)]) == 2
    assert json.loads(capsys.readouterr().err.strip().splitlines()[-1])["error"] == "config"


def test_unknown_subcommand_is_rejected_by_the_controller(config, out):
    controller = AppBuilder(__version__).build_app(config(), {"output.directory": str(out)})
    assert "selftest" in controller.subcommands
    with pytest.raises(ConfigError):
        controller.run_subcommand("plot")


@pytest.mark.slow
def test_scatter_on_a_line(tmp_path, out):
    path = tmp_path / "scatter.toml"
    path.write_text("[grid]\ndim = 1\npoints = 256\nbox_length = 64.0\n\n"
                    "[model]\nkappa_family = \"power\"\nkappa_exponent = 1.0\n"
                    "pressure = \"user_polynomial\"\npressure_coefficients = [1.0, 0.0, 1.0]\n\n"
                    "[plan]\nfinal_times = [2.0, 3.0]\nsample_count = 4\ns_reg = 1.0\n"
                    "quadrature_tolerance = 1e-5\n\n"
                    "[solver]\nscheme = \"etd_rk4\"\ndt = 0.05\ndefect_tolerance = 1e-3\n")
    assert main(["scatter", "--config", str(path), "--out", str(out)]) == 0
    results = _report(out)["results"]
    assert [run["final_time"] for run in results["runs"]] == [2.0, 3.0]
    assert len(results["cauchy"]) == 1
    assert all(0.0 < run["quadrature_change"] <= 1e-5 for run in results["runs"])
    assert results["quadrature_converged"]
    assert (out / "cauchy.csv").exists()


@pytest.mark.slow
def test_selftest_passes(tmp_path, out):
    path = tmp_path / "selftest.toml"
    path.write_text("[selftest]\ntrials = 3\n")
    assert main(["selftest", "--config", str(path), "--out", str(out)]) == 0
    results = _report(out)["results"]
    assert results["all_passed"]
    assert results["total"] == len(_rows(out / "selftest.csv"))
