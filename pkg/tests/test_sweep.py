"""Sweep tests: spec validation, degenerate grids, parallel determinism,
per-cell failure isolation, and CSV layout.
"""

import dataclasses
import math

import numpy as np
import pytest

from cavchem import reaction, sweep
from cavchem.model import FrequencyGrid
from cavchem.sweep import SweepSpec


SMALL = SweepSpec(
    axis="g_cav", axis_min=0.0, axis_max=30.0, axis_points=3,
    fpump_min=0.0, fpump_max=0.3, fpump_points=3, quantity="ratio_on_off",
)


def test_spec_defaults_valid():
    assert SweepSpec().validate() == []
    assert SMALL.validate() == []


@pytest.mark.parametrize(
    "kwargs, needle",
    [
        ({"axis": "g_nope"}, "axis"),
        ({"quantity": "ratio_off_on"}, "quantity"),
        ({"axis_min": -1.0}, "axis_min"),
        ({"axis_min": 31.0}, "axis_min"),
        ({"fpump_max": 0.5}, "pump fractions"),
        ({"fpump_min": -0.1}, "pump fractions"),
        ({"axis_points": 0}, "point counts"),
        ({"fpump_points": 0}, "point counts"),
    ],
)
def test_spec_validation_errors(kwargs, needle):
    errors = dataclasses.replace(SweepSpec(), **kwargs).validate()
    assert any(needle in e for e in errors)


def test_single_point_axes_are_valid():
    spec = dataclasses.replace(
        SweepSpec(), axis_min=27.0, axis_max=27.0, axis_points=1, fpump_points=1
    )
    assert spec.validate() == []
    assert np.array_equal(spec.axis_values(), [27.0])


def test_default_axis_ranges():
    assert sweep.default_axis_range("g_cav") == (0.0, 30.0)
    assert sweep.default_axis_range("g_rc_collective") == (0.0, 80.0)


def test_run_sweep_rejects_bad_spec(defaults, grid):
    d, r = defaults
    with pytest.raises(ValueError, match="axis"):
        sweep.run_sweep(d, r, dataclasses.replace(SMALL, axis="bad"), grid)


def test_degenerate_cell_matches_headline(defaults, grid):
    # a 1x1 sweep pinned at the default coupling and ON pump fraction must
    # reproduce the headline ON/OFF ratio exactly
    d, r = defaults
    spec = SweepSpec(
        axis="g_cav", axis_min=d.g_cav, axis_max=d.g_cav, axis_points=1,
        fpump_min=0.3, fpump_max=0.3, fpump_points=1, quantity="ratio_on_off",
    )
    result = sweep.run_sweep(d, r, spec, grid)
    headline = reaction.headline_ratios(d, r, grid)
    assert result.values.shape == (1, 1)
    assert result.values[0, 0] == headline.ratio_on_off
    assert result.omega_on_map[0, 0] == headline.omega_on


def test_zero_pump_column_is_unity(defaults, coarse_grid):
    d, r = defaults
    result = sweep.run_sweep(d, r, SMALL, coarse_grid)
    assert np.allclose(result.values[:, 0], 1.0, atol=1e-12)


def test_ratio_on_bare_uses_eta0(defaults, coarse_grid):
    d, r = defaults
    spec = dataclasses.replace(SMALL, quantity="ratio_on_bare")
    on_off = sweep.run_sweep(d, r, SMALL, coarse_grid)
    on_bare = sweep.run_sweep(d, r, spec, coarse_grid)
    eta0 = float(reaction.bare_efficiency(r, d, d.omega_r))
    # rows agree up to the constant eta_off / eta0 factor
    scale = on_bare.values[:, :1] / on_off.values[:, :1]
    assert np.allclose(on_bare.values, on_off.values * scale, rtol=1e-10)
    assert np.all(scale > 0)
    assert eta0 > 0


def test_parallel_matches_serial_exactly(defaults, coarse_grid):
    d, r = defaults
    serial = sweep.run_sweep(d, r, SMALL, coarse_grid, threads=1)
    parallel = sweep.run_sweep(d, r, SMALL, coarse_grid, threads=4)
    assert np.array_equal(serial.values, parallel.values)
    assert np.array_equal(serial.omega_on_map, parallel.omega_on_map)
    assert sweep.sweep_csv(serial) == sweep.sweep_csv(parallel)


def test_failed_cell_becomes_nan(defaults, coarse_grid, monkeypatch):
    d, r = defaults
    original = reaction.find_omega_on

    def flaky(cell_d, cell_r, grid, f_pump_ref):
        if cell_d.g_cav == 15.0:  # middle row of the 3-point axis
            raise RuntimeError("injected failure")
        return original(cell_d, cell_r, grid, f_pump_ref=f_pump_ref)

    monkeypatch.setattr(reaction, "find_omega_on", flaky)
    result = sweep.run_sweep(d, r, SMALL, coarse_grid)
    assert np.all(np.isnan(result.values[1, :]))
    assert np.all(np.isnan(result.omega_on_map[1, :]))
    assert np.all(np.isfinite(result.values[[0, 2], :]))


def test_csv_layout(defaults, coarse_grid):
    d, r = defaults
    result = sweep.run_sweep(d, r, SMALL, coarse_grid)
    lines = sweep.sweep_csv(result).strip().split("\n")
    assert lines[0].split(",")[0] == "g_cav"
    header_f = [float(x) for x in lines[0].split(",")[1:]]
    assert header_f == [0.0, 0.15, 0.3]
    assert len(lines) == 4
    first_col = [float(line.split(",")[0]) for line in lines[1:]]
    assert first_col == [0.0, 15.0, 30.0]


def test_csv_nan_is_empty_field(defaults):
    spec = dataclasses.replace(SMALL, axis_points=2, fpump_points=2)
    values = np.array([[1.0, math.nan], [2.0, 3.0]])
    omega_on = np.full((2, 2), math.nan)
    result = sweep.SweepGrid(spec, values, omega_on)
    lines = sweep.sweep_csv(result).strip().split("\n")
    assert lines[1].endswith(",")  # NaN cell serialized as empty
    assert lines[2].split(",")[1:] == ["2", "3"]
