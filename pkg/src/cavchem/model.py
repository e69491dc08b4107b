"""Physical parameters of the two-cavity device and the isomerization channel.

All energies, couplings, and rates are in cm^-1 with hbar = 1.  Only the
experimentally fixed products g*sqrt(N) and V^2*Gamma_trans are stored;
individual molecule counts or bare couplings never enter the model.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, asdict, fields

import numpy as np

# Peak bare absorbance of the reactant OH stretch, used to calibrate the
# radiative coupling gamma_rad of the weak-coupling baseline.
BARE_PEAK_ABSORBANCE = 0.07


@dataclass(frozen=True)
class DeviceParams:
    """Frequencies, couplings, and decay rates of the coupled-cavity device."""

    omega_rc: float = 3455.0        # RC OH-stretch 0->1
    omega_cav_rc: float = 3455.0    # RC host cavity
    omega_r: float = 3402.0         # R OH-stretch 0->1
    omega_cav_r: float = 3402.0     # R host cavity
    g_rc_collective: float = 57.0   # collective RC-cavity coupling
    g_r_collective: float = 11.0    # collective R-cavity coupling
    g_cav: float = 27.0             # intercavity coupling
    delta: float = -89.0            # mechanical anharmonicity (signed)
    gamma_rc: float = 5.0           # RC linewidth
    gamma_r: float = 5.0            # R linewidth
    kappa_rc: float = 9.5           # RC cavity leak rate
    kappa_r: float = 9.5            # R cavity leak rate


@dataclass(frozen=True)
class ReactionParams:
    """Parameters of the torsional-overtone state and the isomerization step."""

    omega_p: float = 3362.0            # product-yielding overtone state
    gamma_total_p: float = 8 * 1.67    # Gamma_cis + Gamma_trans
    branch_trans: float = 0.10         # Gamma_trans / (Gamma_cis + Gamma_trans)
    v2_gamma_trans: float = 275.0      # V^2 * Gamma_trans (cm^-3)
    gamma_rad: float = BARE_PEAK_ABSORBANCE * 5.0 / 4.0  # bare radiative coupling
    gamma_nonrad: float = 5.0          # bare nonradiative linewidth

    @property
    def v_squared(self) -> float:
        """IVR coupling squared, reconstructed from the stored products."""
        return self.v2_gamma_trans / (self.branch_trans * self.gamma_total_p)


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform frequency grid in cm^-1."""

    omega_min: float = 3330.0
    omega_max: float = 3530.0
    n_points: int = 2001

    @property
    def spacing(self) -> float:
        return (self.omega_max - self.omega_min) / (self.n_points - 1)

    def omegas(self) -> np.ndarray:
        return np.linspace(self.omega_min, self.omega_max, self.n_points)


def reference_defaults() -> tuple[DeviceParams, ReactionParams]:
    """Default device and reaction parameters of the modeled HONO experiment."""
    return DeviceParams(), ReactionParams()


def default_grid() -> FrequencyGrid:
    """Default probe grid: covers the polariton manifold with 0.1 cm^-1 spacing."""
    return FrequencyGrid()


def validate(d: DeviceParams, r: ReactionParams) -> list[str]:
    """Check all parameter invariants; returns a list of violations (empty = ok)."""
    errors = []
    for name in ("omega_rc", "omega_cav_rc", "omega_r", "omega_cav_r"):
        if getattr(d, name) <= 0:
            errors.append(f"{name} must be > 0")
    for name in ("g_rc_collective", "g_r_collective", "g_cav"):
        if getattr(d, name) < 0:
            errors.append(f"{name} must be >= 0")
    for name in ("gamma_rc", "gamma_r", "kappa_rc", "kappa_r"):
        if getattr(d, name) <= 0:
            errors.append(f"{name} must be > 0")
    if r.omega_p <= 0:
        errors.append("omega_p must be > 0")
    if r.gamma_total_p <= 0:
        errors.append("gamma_total_p must be > 0")
    if not (0.0 < r.branch_trans <= 1.0):
        errors.append("branch_trans must be in (0,1]")
    if r.v2_gamma_trans <= 0:
        errors.append("v2_gamma_trans must be > 0")
    if r.gamma_rad < 0:
        errors.append("gamma_rad must be >= 0")
    if r.gamma_nonrad <= 0:
        errors.append("gamma_nonrad must be > 0")
    if not errors and not np.isfinite(r.v_squared):
        errors.append("derived v_squared must be finite")
    return errors


def validate_grid(grid: FrequencyGrid) -> list[str]:
    errors = []
    if grid.n_points < 2:
        errors.append("n_points must be >= 2")
    if not grid.omega_min < grid.omega_max:
        errors.append("omega_min must be < omega_max")
    return errors


class ConfigError(ValueError):
    """Raised for malformed or unknown fields in a JSON config document."""


def _from_section(cls, section: dict, name: str):
    known = {f.name for f in fields(cls)}
    unknown = set(section) - known
    if unknown:
        raise ConfigError(
            f"unknown field(s) in '{name}' section: {', '.join(sorted(unknown))}"
        )
    return cls(**section)


def load_config(path: str) -> tuple[DeviceParams, ReactionParams, FrequencyGrid]:
    """Read a JSON config with optional 'device', 'reaction', 'grid' objects.

    Missing fields fall back to the defaults; unknown fields are a hard error.
    """
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ConfigError("config document must be a JSON object")
    unknown = set(doc) - {"device", "reaction", "grid"}
    if unknown:
        raise ConfigError(f"unknown top-level section(s): {', '.join(sorted(unknown))}")
    d = _from_section(DeviceParams, doc.get("device", {}), "device")
    r = _from_section(ReactionParams, doc.get("reaction", {}), "reaction")
    g = _from_section(FrequencyGrid, doc.get("grid", {}), "grid")
    return d, r, g


def dump_config(d: DeviceParams, r: ReactionParams, grid: FrequencyGrid) -> dict:
    """Inverse of load_config: a JSON-serializable document with every field."""
    return {"device": asdict(d), "reaction": asdict(r), "grid": asdict(grid)}
