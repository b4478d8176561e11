"""Command line subcommands and exit codes."""

import json
import logging
import math
from pathlib import Path

import pytest

from fraclap.cli import EXIT_FAILED, EXIT_INPUT, EXIT_OK, run


@pytest.fixture(autouse=True)
def reset_app_logger():
    yield
    app_logger = logging.getLogger("fraclap")
    for handler in list(app_logger.handlers):
        app_logger.removeHandler(handler)


def _output(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


def test_eval_gaussian_at_origin(capsys):
    assert run(["eval", "--preset", "gaussian", "--s", "0.5", "--point", "0,0"]) == EXIT_OK
    data = _output(capsys)
    assert data["value"] == pytest.approx(math.pi, rel=1e-5)
    assert data["form"] == "integral"
    assert set(data["zones"]) >= {"inner", "middle"}


@pytest.mark.parametrize("form", ["pv", "fourier"])
def test_eval_other_forms(capsys, form):
    args = ["eval", "--preset", "gaussian", "--s", "0.5", "--point", "0.3,0.1", "--form", form]
    assert run(args) == EXIT_OK
    first = _output(capsys)
    assert run(args[:-2]) == EXIT_OK
    assert first["value"] == pytest.approx(_output(capsys)["value"], rel=1e-5)
    if form == "fourier":
        assert first["symbol_scale"] == pytest.approx(2.0 * math.pi)


@pytest.mark.parametrize(
    "args",
    [
        ["eval", "--preset", "bump(0.8)", "--s", "0.5", "--point", "0,0", "--form", "fourier"],
        ["eval", "--preset", "teapot", "--s", "0.5", "--point", "0,0"],
        ["eval", "--preset", "gaussian", "--s", "0.5", "--point", "0,0,0"],
        ["eval", "--preset", "gaussian", "--s", "1.5", "--point", "0,0"],
        ["eval", "--preset", "gaussian", "--s", "0.5", "--point", "a,b"],
    ],
)
def test_bad_input_exits_two(capsys, args):
    assert run(args) == EXIT_INPUT
    assert capsys.readouterr().err.startswith("error: ")


def test_solve_constant_datum(capsys):
    assert run(["solve", "--preset-exterior", "constant", "--s", "0.5", "--point", "0.2,0.3"]) == EXIT_OK
    data = _output(capsys)
    assert data["value"] == pytest.approx(1.0, abs=1e-5)
    assert data["method"] == "quadrature"


def test_solve_with_walk_on_spheres(capsys):
    args = ["solve", "--preset-exterior", "halfspace-indicator", "--s", "0.5", "--point", "0,0", "--mc", "4000"]
    assert run(args) == EXIT_OK
    data = _output(capsys)
    assert data["method"] == "walk-on-spheres"
    assert data["samples"] == 4000
    assert data["value"] == pytest.approx(0.5, abs=5.0 * data["stderr"])


def test_solve_numerical_failure_exits_one(capsys):
    args = ["solve", "--preset-exterior", "constant", "--s", "0.5", "--point", "0.9999,0", "--mc", "100"]
    assert run(args) == EXIT_FAILED
    assert "acceptance" in capsys.readouterr().err


def test_seminorm_of_affine_field(capsys):
    assert run(["seminorm", "--preset", "affine", "--s", "0.5", "--seed", "3"]) == EXIT_OK
    data = _output(capsys)
    assert data["value"] > 0.0
    assert data["stderr"] > 0.0
    assert data["method"] == "mc-pair"


def test_verify_empty_grid(capsys, fixture_path: Path, tmp_path: Path):
    out = tmp_path / "empty.json"
    args = ["verify", "laplacian", "--config", str(fixture_path / "configs" / "empty-grid.toml"), "--out", str(out)]
    assert run(args) == EXIT_OK
    data = _output(capsys)
    assert data == {"report": str(out), "total": 0, "passed": 0, "failed": 0}
    assert json.loads(out.read_text())["records"] == []
    assert out.with_suffix(".csv").exists()


def test_verify_bad_config_exits_two(fixture_path: Path):
    args = ["verify", "norms", "--config", str(fixture_path / "configs" / "unknown-key.toml")]
    assert run(args) == EXIT_INPUT


def test_verify_bad_grid_override_exits_two(tmp_path: Path):
    assert run(["verify", "norms", "--orders", "0.5,1.2", "--out", str(tmp_path / "r.json")]) == EXIT_INPUT


@pytest.mark.parametrize("argv", [[], ["verify", "fourier"], ["eval", "--s", "0.5"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        run(argv)
    assert exc.value.code == 2
