"""2-D efficiency-ratio maps over (coupling axis) x (pump fraction) grids.

For each coupling value, the optimal probe frequency is recomputed (the
lowest polariton moves with the couplings), the OFF efficiency is evaluated
once at f_pump = 0, and every pump fraction on the axis reuses both.
Cells are independent; parallel execution assembles results in axis order so
the output is identical to a serial run.
"""

from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from cavchem import reaction
from cavchem.model import DeviceParams, FrequencyGrid, ReactionParams

AXES = ("g_cav", "g_rc_collective")
QUANTITIES = ("ratio_on_off", "ratio_on_bare")


@dataclass(frozen=True)
class SweepSpec:
    axis: str = "g_cav"
    axis_min: float = 0.0
    axis_max: float = 30.0
    axis_points: int = 31
    fpump_min: float = 0.0
    fpump_max: float = 0.3
    fpump_points: int = 31
    quantity: str = "ratio_on_off"

    def validate(self) -> list[str]:
        errors = []
        if self.axis not in AXES:
            errors.append(f"axis must be one of {AXES}")
        if self.quantity not in QUANTITIES:
            errors.append(f"quantity must be one of {QUANTITIES}")
        if self.axis_min < 0:
            errors.append("axis_min must be >= 0")
        if not self.axis_min <= self.axis_max:
            errors.append("axis_min must be <= axis_max")
        if not (0.0 <= self.fpump_min <= self.fpump_max < 0.5):
            errors.append("pump fractions must satisfy 0 <= min <= max < 0.5")
        # a 1-point axis is a degenerate but valid grid (single-cell evaluation)
        if self.axis_points < 1 or self.fpump_points < 1:
            errors.append("point counts must be >= 1")
        return errors

    def axis_values(self) -> np.ndarray:
        return np.linspace(self.axis_min, self.axis_max, self.axis_points)

    def fpump_values(self) -> np.ndarray:
        return np.linspace(self.fpump_min, self.fpump_max, self.fpump_points)


@dataclass(frozen=True)
class SweepGrid:
    spec: SweepSpec
    values: np.ndarray        # [axis_points, fpump_points]; NaN = failed cell
    omega_on_map: np.ndarray  # same layout


def default_axis_range(axis: str) -> tuple[float, float]:
    """Axis ranges over which the ratio maps are reported."""
    return (0.0, 30.0) if axis == "g_cav" else (0.0, 80.0)


def _sweep_row(
    d: DeviceParams,
    r: ReactionParams,
    spec: SweepSpec,
    grid: FrequencyGrid,
    coupling: float,
    eta0: float,
) -> tuple[np.ndarray, float]:
    """One coupling value: (ratio per pump fraction, omega_on)."""
    cell_d = dataclasses.replace(d, **{spec.axis: float(coupling)})
    omega_on = reaction.find_omega_on(cell_d, r, grid, f_pump_ref=spec.fpump_max)
    point = np.array([omega_on])
    eta_off = float(reaction.efficiency(cell_d, r, 0.0, point).values[0])
    row = np.empty(spec.fpump_points)
    for j, f in enumerate(spec.fpump_values()):
        eta_on = float(reaction.efficiency(cell_d, r, float(f), point).values[0])
        if spec.quantity == "ratio_on_off":
            row[j] = eta_on / eta_off
        else:
            row[j] = eta_on / eta0
    return row, omega_on


def run_sweep(
    d: DeviceParams,
    r: ReactionParams,
    spec: SweepSpec,
    grid: FrequencyGrid,
    threads: int = 1,
) -> SweepGrid:
    """Evaluate the requested ratio over the full coupling x pump grid.

    Failed cells are recorded as NaN without aborting the sweep.
    """
    errors = spec.validate()
    if errors:
        raise ValueError("; ".join(errors))
    eta0 = float(reaction.bare_efficiency(r, d, d.omega_r))
    axis_vals = spec.axis_values()
    values = np.full((spec.axis_points, spec.fpump_points), math.nan)
    omega_on_map = np.full((spec.axis_points, spec.fpump_points), math.nan)

    def evaluate(i: int):
        try:
            return _sweep_row(d, r, spec, grid, axis_vals[i], eta0)
        except Exception:
            return None

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(evaluate, range(spec.axis_points)))
    else:
        results = [evaluate(i) for i in range(spec.axis_points)]

    for i, result in enumerate(results):
        if result is None:
            continue
        row, omega_on = result
        values[i, :] = row
        omega_on_map[i, :] = omega_on
    return SweepGrid(spec, values, omega_on_map)


def _layout_csv(spec: SweepSpec, body: np.ndarray) -> str:
    """First row = pump-fraction axis, first column = coupling axis."""

    def fmt(x: float) -> str:
        return "" if math.isnan(x) else format(x, ".17g")

    lines = [spec.axis + "," + ",".join(format(f, ".17g") for f in spec.fpump_values())]
    for coupling, row in zip(spec.axis_values(), body):
        lines.append(
            format(coupling, ".17g") + "," + ",".join(fmt(x) for x in row)
        )
    return "\n".join(lines) + "\n"


def sweep_csv(result: SweepGrid) -> str:
    return _layout_csv(result.spec, result.values)


def omega_on_csv(result: SweepGrid) -> str:
    return _layout_csv(result.spec, result.omega_on_map)
