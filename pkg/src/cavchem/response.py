"""Frequency-domain linear response of the driven device, plus a brute-force
time-domain oracle.

The five coupled polarizations (RC01, RC12, cavRC, cavR, R) obey
    i dv/dt = (H + L) v - i*sqrt(kappa) * e_port * c_in(t),
with H the pump-dressed system matrix and L the loss matrix.  For a
monochromatic unit input c_in = exp(-i*omega*t) the steady state solves
    (omega*I - H - L) s = b,      b = -i*sqrt(kappa) at the driven cavity row.
Only |s|^2 enters observables, so the overall phase convention is irrelevant;
the time-domain oracle uses the identical drive term.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from cavchem import _kernels, hamiltonians
from cavchem.model import DeviceParams, FrequencyGrid, ReactionParams

# Row indices in the pumped basis (RC01, RC12, cavRC, cavR, R).
_IDX = {label: i for i, label in enumerate(hamiltonians.BASIS_PUMP)}


class InputPort(enum.Enum):
    R_CAVITY = "r"    # probe drive
    RC_CAVITY = "rc"  # pump-characterization drive


class SolverError(RuntimeError):
    """Internal solver failure (singular system or oracle non-convergence)."""


@dataclass(frozen=True)
class Spectrum:
    """A sampled function omega -> value on a uniform frequency grid."""

    omega: np.ndarray
    values: np.ndarray

    def to_csv(self) -> str:
        lines = ["omega_cm1,value"]
        for w, v in zip(self.omega, self.values):
            lines.append(f"{format(w, '.17g')},{format(v, '.17g')}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ResponseSet:
    """Per-frequency complex response amplitudes for one input port."""

    omega: np.ndarray
    amplitudes: np.ndarray  # [n_omega, 5] in pumped basis order
    f_pump: float
    port: InputPort

    @property
    def s_rc(self) -> np.ndarray:
        return self.amplitudes[:, _IDX["RC01"]]

    @property
    def s_rc3(self) -> np.ndarray:
        return self.amplitudes[:, _IDX["RC12"]]

    @property
    def s_cav_rc(self) -> np.ndarray:
        return self.amplitudes[:, _IDX["cavRC"]]

    @property
    def s_cav_r(self) -> np.ndarray:
        return self.amplitudes[:, _IDX["cavR"]]

    @property
    def s_r(self) -> np.ndarray:
        return self.amplitudes[:, _IDX["R"]]


def _system_matrix(d: DeviceParams, r: ReactionParams, f_pump: float) -> np.ndarray:
    h = hamiltonians.build_pump(d, f_pump).entries.astype(np.complex128)
    return h + hamiltonians.build_loss(d, r, f_pump)


def _drive_vector(d: DeviceParams, port: InputPort) -> np.ndarray:
    b = np.zeros(5, dtype=np.complex128)
    if port is InputPort.R_CAVITY:
        b[_IDX["cavR"]] = -1j * math.sqrt(d.kappa_r)
    else:
        b[_IDX["cavRC"]] = -1j * math.sqrt(d.kappa_rc)
    return b


def solve_response(
    d: DeviceParams,
    f_pump: float,
    port: InputPort,
    grid: FrequencyGrid | np.ndarray,
    r: ReactionParams | None = None,
) -> ResponseSet:
    """Steady-state response amplitudes on the grid for unit input at ``port``.

    IVR coupling is dropped from the system (its back-action is perturbatively
    small), so the reaction parameters enter only through defaults.
    Per-frequency solves are independent; sharding the grid and concatenating
    yields output identical to a serial run.
    """
    if r is None:
        r = ReactionParams()
    omegas = grid.omegas() if isinstance(grid, FrequencyGrid) else np.asarray(grid, float)
    m = _system_matrix(d, r, f_pump)
    b = _drive_vector(d, port)
    try:
        amplitudes = _kernels.resolvent_solve(m, omegas, b)
    except ZeroDivisionError as exc:  # impossible for positive decay rates
        raise SolverError(f"singular response system: {exc}") from exc
    return ResponseSet(omegas, amplitudes, f_pump, port)


def absorbance_r(resp: ResponseSet, d: DeviceParams) -> Spectrum:
    """Fraction of the input energy dissipated by the R nonradiative bath."""
    return Spectrum(resp.omega, d.gamma_r * np.abs(resp.s_r) ** 2)


def absorbance_rc(resp: ResponseSet, d: DeviceParams) -> Spectrum:
    """Fraction of the input energy dissipated by the RC nonradiative bath.

    The prefactor is gamma_RC, the rate of the dissipation channel being
    measured (equal to gamma_R for the default parameters).
    """
    return Spectrum(resp.omega, d.gamma_rc * np.abs(resp.s_rc) ** 2)


def flux_channels(resp: ResponseSet, d: DeviceParams) -> dict[str, np.ndarray]:
    """Per-frequency energy bookkeeping of the driven steady state.

    Returns each outflow channel normalized to unit input, the pump-term
    cross flow, and their total.  The off-diagonal loss entry feeds RC12
    amplitude into RC01, so the plain sum of dissipation channels over- or
    under-counts by 2*gamma_RC*sqrt(2f/(1-2f))*Re(S_RC* . S_RC3); including
    that cross term the total is exactly 1 at every frequency.  At f_pump = 0
    the cross term and the RC12 channel vanish identically.
    """
    if resp.port is InputPort.R_CAVITY:
        reflected = np.abs(1.0 + math.sqrt(d.kappa_r) * resp.s_cav_r) ** 2
        other_cavity = d.kappa_rc * np.abs(resp.s_cav_rc) ** 2
    else:
        reflected = np.abs(1.0 + math.sqrt(d.kappa_rc) * resp.s_cav_rc) ** 2
        other_cavity = d.kappa_r * np.abs(resp.s_cav_r) ** 2
    beta = math.sqrt(2.0 * resp.f_pump / (1.0 - 2.0 * resp.f_pump))
    cross = -2.0 * d.gamma_rc * beta * np.real(np.conj(resp.s_rc) * resp.s_rc3)
    channels = {
        "reflected": reflected,
        "other_cavity": other_cavity,
        "rc01": d.gamma_rc * np.abs(resp.s_rc) ** 2,
        "rc12": 3.0 * d.gamma_rc * np.abs(resp.s_rc3) ** 2,
        "r": d.gamma_r * np.abs(resp.s_r) ** 2,
        "pump_cross": cross,
    }
    channels["total"] = sum(channels.values())
    return channels


def time_domain_oracle(
    d: DeviceParams,
    f_pump: float,
    port: InputPort,
    omega_drive: float,
    r: ReactionParams | None = None,
    rtol: float = 1e-8,
    max_periods: int = 50_000,
) -> complex:
    """Steady co-rotating R amplitude from brute-force RK4 integration.

    Integrates the equations of motion with a monochromatic unit drive from
    zero initial conditions in the frame co-rotating at the drive frequency,
    with a fixed step of 1/50 of the shortest period in the system, until the
    amplitudes move by less than ``rtol`` over a 20-period window.  The result
    matches the frequency-domain S_R; this routine shares no code with the
    resolvent kernels.
    """
    if r is None:
        r = ReactionParams()
    m = _system_matrix(d, r, f_pump)
    # co-rotating frame: du/dt = i*(omega*I - m) u - sqrt(kappa)*e_port,
    # whose fixed point solves (omega*I - m) u = b with the same b as above.
    drive = -1j * _drive_vector(d, port)
    gen = 1j * (omega_drive * np.eye(5) - m)

    freqs = [
        d.omega_rc,
        d.omega_cav_rc,
        d.omega_cav_r,
        d.omega_r,
        abs(d.omega_rc + 2.0 * d.delta),
        abs(omega_drive),
    ]
    dt = (2.0 * math.pi / max(freqs)) / 50.0

    u = np.zeros(5, dtype=np.complex128)
    steps_per_window = 50 * 20
    prev = u.copy()
    for _ in range(max_periods // 20):
        for _ in range(steps_per_window):
            k1 = gen @ u + drive
            k2 = gen @ (u + 0.5 * dt * k1) + drive
            k3 = gen @ (u + 0.5 * dt * k2) + drive
            k4 = gen @ (u + dt * k3) + drive
            u = u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if np.max(np.abs(u - prev)) < rtol:
            return complex(u[_IDX["R"]])
        prev = u.copy()
    raise SolverError(
        f"time-domain oracle did not converge within {max_periods} periods"
    )
