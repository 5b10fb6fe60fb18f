import math

import numpy as np
import pytest

from wigner_well import (
    ConfigurationError,
    GridError,
    PhaseSpaceGrid,
    ShapeError,
    WellConfig,
    WignerField,
    make_grid,
    make_well_config,
)
from wigner_well.core import STATIONARY, evaluate_rows, resolve_threads, sin_over, sinc_half, support


@pytest.mark.parametrize("args", [(0.5, 1.0, 1.0), (1.0, 2.0, 1.0)])
def test_valid_configs(args):
    cfg = make_well_config(*args)
    assert (cfg.mass, cfg.length, cfg.hbar) == args


@pytest.mark.parametrize(
    "args",
    [(-1.0, 1.0, 1.0), (1.0, 0.0, 1.0), (1.0, 1.0, math.inf), (1.0, math.nan, 1.0), ("a", 1, 1)],
)
def test_invalid_configs(args):
    with pytest.raises(ConfigurationError):
        make_well_config(*args)


def test_config_is_immutable():
    cfg = WellConfig(0.5, 1.0, 1.0)
    with pytest.raises(AttributeError):
        cfg.mass = 2.0


def test_revival_time_of_unit_well():
    assert WellConfig(0.5, 1.0, 1.0).revival_time == pytest.approx(2 / math.pi, rel=1e-15)


def test_two_point_grid_corners():
    grid = make_grid(0, 1, 2, -1, 1, 2)
    assert list(grid.x) == [0.0, 1.0]
    assert list(grid.p) == [-1.0, 1.0]


def test_grid_spacing():
    grid = make_grid(0, 1, 101, -150, 150, 301)
    assert grid.dx == pytest.approx(0.01)
    assert grid.dp == pytest.approx(1.0)
    assert np.allclose(np.diff(grid.x), 0.01)
    assert grid.shape == (101, 301)


def test_grid_endpoints_are_exact():
    grid = make_grid(0.1, 0.7, 37, -3.3, 9.1, 53)
    assert grid.x[0] == 0.1 and grid.x[-1] == 0.7
    assert grid.p[0] == -3.3 and grid.p[-1] == 9.1


@pytest.mark.parametrize(
    "args",
    [(1, 0, 10, -1, 1, 10), (0, 1, 1, -1, 1, 10), (0, 1, 10, 1, 1, 10), (0, 1, 2.5, -1, 1, 3)],
)
def test_bad_grids(args):
    with pytest.raises(GridError):
        make_grid(*args)


def test_field_checks_shape_and_freezes_values():
    grid = make_grid(0, 1, 3, -1, 1, 4)
    with pytest.raises(ShapeError):
        WignerField(grid, np.zeros((4, 3)))
    field = WignerField(grid, np.zeros((3, 4)))
    assert field.stationary and field.timestamp == STATIONARY
    with pytest.raises(ValueError):
        field.values[0, 0] = 1.0
    with pytest.raises(ValueError):
        WignerField(grid, np.full((3, 4), np.nan))


def test_sinc_half_limit_and_branch_continuity():
    assert sinc_half(0.0) == 0.5
    for z in (1e-4 * (1 - 1e-9), 1e-4 * (1 + 1e-9), 3e-5):
        assert sinc_half(z) == pytest.approx(math.sin(z / 2) / z, rel=1e-15, abs=0)


def test_sin_over_limit():
    assert sin_over(0.0, 0.3) == pytest.approx(0.3)
    assert sin_over(2.0, 0.3) == pytest.approx(math.sin(0.6) / 2.0)


def test_support_indicator():
    assert list(support(np.array([-0.1, 0.0, 0.5, 1.0, 1.1]), 0, 1)) == [0, 0.5, 1, 0.5, 0]


def test_resolve_threads(monkeypatch):
    monkeypatch.setenv("WIGNER_WELL_THREADS", "3")
    assert resolve_threads() == 3
    assert resolve_threads(2) == 2
    monkeypatch.setenv("WIGNER_WELL_THREADS", "zero")
    with pytest.raises(ConfigurationError):
        resolve_threads()
    with pytest.raises(ConfigurationError):
        resolve_threads(0)


def test_row_evaluation_is_thread_independent():
    grid = make_grid(0, 1, 17, -2, 2, 9)

    def row(x, p):
        return np.sin(x * p) + x

    one = evaluate_rows(grid, row, 1)
    many = evaluate_rows(grid, row, 8)
    assert one.tobytes() == many.tobytes()
    assert np.array_equal(one, np.sin(np.outer(grid.x, grid.p)) + grid.x[:, None])
