"""Isomerization rate, quantum yield, reaction efficiency, and the bare
weak-coupling baseline.

The efficiency spectrum is the pointwise product of the probe absorbance into
R and the frequency-dependent quantum yield of the R -> P transfer step.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from cavchem import response
from cavchem.model import DeviceParams, FrequencyGrid, ReactionParams
from cavchem.response import InputPort, Spectrum

F_PUMP_ON = 0.3  # reference pump fraction for the ON state


@dataclass(frozen=True)
class EfficiencyResult:
    """Headline efficiency numbers plus the ON-state efficiency spectrum."""

    eta: Spectrum          # eta(f_pump = F_PUMP_ON, omega)
    eta_off_spectrum: Spectrum  # eta(f_pump = 0, omega)
    omega_on: float
    eta_on: float
    eta_off: float
    eta0: float
    ratio_on_off: float
    ratio_on_bare: float


def ivr_rate(r: ReactionParams, omega) -> np.ndarray | float:
    """Transition rate (cm^-1) from the R stretch at ``omega`` into P."""
    return r.v2_gamma_trans / (
        (np.asarray(omega, float) - r.omega_p) ** 2 + (r.gamma_total_p / 2.0) ** 2
    )


def quantum_yield(r: ReactionParams, d: DeviceParams, omega) -> np.ndarray | float:
    """Isomerization quantum yield gamma_{R->P}(omega) / gamma_R.

    Not clamped: the literal formula can exceed 1 near omega_P with the
    default parameters, in which case a warning is emitted.
    """
    qy = ivr_rate(r, omega) / d.gamma_r
    if np.any(np.asarray(qy) > 1.0):
        warnings.warn(
            "quantum yield exceeds 1 on the evaluated grid (near omega_p); "
            "the defining formula is applied without clamping",
            stacklevel=2,
        )
    return qy


def efficiency(
    d: DeviceParams,
    r: ReactionParams,
    f_pump: float,
    grid: FrequencyGrid | np.ndarray,
) -> Spectrum:
    """Reaction efficiency spectrum: probe absorbance into R times yield."""
    resp = response.solve_response(d, f_pump, InputPort.R_CAVITY, grid, r)
    absorb = response.absorbance_r(resp, d)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        qy = quantum_yield(r, d, absorb.omega)
    return Spectrum(absorb.omega, absorb.values * qy)


def calibrate_gamma_rad(peak_absorbance: float, gamma_nonrad: float) -> float:
    """Radiative coupling that reproduces a given bare peak absorbance."""
    return peak_absorbance * gamma_nonrad / 4.0


def bare_absorbance(r: ReactionParams, d: DeviceParams, omega) -> np.ndarray | float:
    """Lorentzian absorbance of the uncoupled R stretch, IVR neglected."""
    return (
        r.gamma_rad
        * r.gamma_nonrad
        / ((np.asarray(omega, float) - d.omega_r) ** 2 + (r.gamma_nonrad / 2.0) ** 2)
    )


def bare_efficiency(r: ReactionParams, d: DeviceParams, omega) -> np.ndarray | float:
    """Weak-coupling reaction efficiency: bare absorbance times bare yield."""
    return bare_absorbance(r, d, omega) * ivr_rate(r, omega) / r.gamma_nonrad


def validity_criterion(r: ReactionParams, d: DeviceParams) -> tuple[bool, float, float]:
    """Whether the IVR correction to the bare lineshape is negligible.

    Returns (ok, v_squared, bound): ok iff the squared IVR coupling is below
    the detuning-linewidth product of the R and P complex energies.
    """
    bound = abs((d.omega_r - r.omega_p) * (r.gamma_nonrad - r.gamma_total_p))
    v2 = r.v_squared
    return v2 < bound, v2, bound


def omega_on_window(d: DeviceParams, r: ReactionParams) -> tuple[float, float]:
    """Search window containing the lowest-polariton lineshape."""
    return r.omega_p - 2.0, d.omega_r - d.g_r_collective + 2.0


def find_omega_on(
    d: DeviceParams,
    r: ReactionParams,
    grid: FrequencyGrid,
    f_pump_ref: float = F_PUMP_ON,
) -> float:
    """Grid frequency maximizing eta(f_pump_ref, .) inside the search window.

    Ties break toward the lowest frequency.  Only grid points inside the
    window are evaluated, so the result is a point of the supplied grid.
    """
    lo, hi = omega_on_window(d, r)
    if lo > hi:
        raise ValueError(f"empty omega_on search window [{lo}, {hi}]")
    omegas = grid.omegas()
    window = omegas[(omegas >= lo) & (omegas <= hi)]
    if window.size == 0:
        raise ValueError(f"grid has no points inside the window [{lo}, {hi}]")
    eta = efficiency(d, r, f_pump_ref, window)
    return float(window[int(np.argmax(eta.values))])


def headline_ratios(
    d: DeviceParams, r: ReactionParams, grid: FrequencyGrid
) -> EfficiencyResult:
    """ON/OFF efficiencies at the optimal probe frequency and their ratios."""
    eta_on_spec = efficiency(d, r, F_PUMP_ON, grid)
    eta_off_spec = efficiency(d, r, 0.0, grid)
    omega_on = find_omega_on(d, r, grid)
    idx = int(np.argmin(np.abs(eta_on_spec.omega - omega_on)))
    eta_on = float(eta_on_spec.values[idx])
    eta_off = float(eta_off_spec.values[idx])
    eta0 = float(bare_efficiency(r, d, d.omega_r))
    return EfficiencyResult(
        eta=eta_on_spec,
        eta_off_spectrum=eta_off_spec,
        omega_on=omega_on,
        eta_on=eta_on,
        eta_off=eta_off,
        eta0=eta0,
        ratio_on_off=eta_on / eta_off,
        ratio_on_bare=eta_on / eta0,
    )
