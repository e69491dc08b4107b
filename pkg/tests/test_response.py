"""Linear-response tests: analytic limits, exact flux bookkeeping, sharding,
and agreement with the brute-force time-domain oracle.
"""

import dataclasses
import math

import numpy as np
import pytest

from cavchem import response
from cavchem.model import DeviceParams, FrequencyGrid
from cavchem.response import InputPort


def _two_mode_absorbance(d, omega):
    # single cavity (cavR) coupled to a single mode (R): closed-form absorbance
    g = d.g_r_collective
    det = (omega - d.omega_cav_r + 0.5j * d.kappa_r) * (
        omega - d.omega_r + 0.5j * d.gamma_r
    ) - g * g
    s_r = -1j * math.sqrt(d.kappa_r) * g / det
    return d.gamma_r * abs(s_r) ** 2


def test_two_mode_limit_matches_closed_form(defaults):
    d, _ = defaults
    iso = dataclasses.replace(d, g_cav=0.0, g_rc_collective=0.0)
    omegas = np.linspace(3380.0, 3425.0, 91)
    resp = response.solve_response(iso, 0.0, InputPort.R_CAVITY, omegas)
    absorb = response.absorbance_r(resp, iso)
    expected = np.array([_two_mode_absorbance(iso, w) for w in omegas])
    assert np.allclose(absorb.values, expected, rtol=1e-12)


def test_uncoupled_r_gives_zero_absorbance(defaults):
    d, _ = defaults
    iso = dataclasses.replace(d, g_r_collective=0.0, g_cav=0.0)
    resp = response.solve_response(iso, 0.0, InputPort.R_CAVITY, np.array([3402.0]))
    assert response.absorbance_r(resp, iso).values[0] == 0.0


def test_no_pump_leaves_rc12_dark(defaults):
    d, _ = defaults
    resp = response.solve_response(d, 0.0, InputPort.R_CAVITY, np.array([3390.0, 3455.0]))
    assert np.all(resp.s_rc3 == 0.0)


def test_flux_total_is_exactly_one(defaults, grid):
    d, _ = defaults
    for f_pump in (0.0, 0.1, 0.3):
        for port in (InputPort.R_CAVITY, InputPort.RC_CAVITY):
            resp = response.solve_response(d, f_pump, port, grid)
            flux = response.flux_channels(resp, d)
            assert np.max(np.abs(flux["total"] - 1.0)) < 1e-10
            if f_pump == 0.0:
                assert np.all(flux["rc12"] == 0.0)
                assert np.all(flux["pump_cross"] == 0.0)


def test_flux_channels_nonnegative_except_cross(defaults, grid):
    d, _ = defaults
    resp = response.solve_response(d, 0.3, InputPort.R_CAVITY, grid)
    flux = response.flux_channels(resp, d)
    for name in ("reflected", "other_cavity", "rc01", "rc12", "r"):
        assert np.all(flux[name] >= 0.0)


def test_far_detuned_probe_fully_reflects(defaults):
    d, _ = defaults
    resp = response.solve_response(d, 0.0, InputPort.R_CAVITY, np.array([30000.0]))
    flux = response.flux_channels(resp, d)
    assert flux["reflected"][0] == pytest.approx(1.0, abs=1e-6)


def test_sharded_grid_matches_full_solve(defaults, grid):
    d, _ = defaults
    omegas = grid.omegas()
    full = response.solve_response(d, 0.3, InputPort.R_CAVITY, omegas)
    lo = response.solve_response(d, 0.3, InputPort.R_CAVITY, omegas[:1000])
    hi = response.solve_response(d, 0.3, InputPort.R_CAVITY, omegas[1000:])
    merged = np.concatenate([lo.amplitudes, hi.amplitudes])
    assert np.array_equal(full.amplitudes, merged)


def test_absorbance_prefactor_is_gamma_r(defaults):
    # at fixed response amplitudes the absorbance is linear in gamma_r
    d, _ = defaults
    resp = response.solve_response(d, 0.0, InputPort.R_CAVITY, np.array([3391.0]))
    a = response.absorbance_r(resp, d).values[0]
    twice = dataclasses.replace(d, gamma_r=2.0 * d.gamma_r)
    assert response.absorbance_r(resp, twice).values[0] == pytest.approx(2.0 * a)


def test_lowest_polariton_blueshifts_with_pump(defaults, grid):
    # pumping weakens the RC Rabi splitting, pushing the lowest polariton up
    d, _ = defaults
    omegas = grid.omegas()
    window = (omegas >= 3360.0) & (omegas <= 3395.0)
    peaks = []
    for f in (0.0, 0.1, 0.2, 0.3):
        resp = response.solve_response(d, f, InputPort.R_CAVITY, omegas[window])
        absorb = response.absorbance_r(resp, d)
        peaks.append(float(absorb.omega[np.argmax(absorb.values)]))
    assert peaks == sorted(peaks)
    assert peaks[-1] < peaks[0] + 20.0  # stays inside the window


@pytest.mark.parametrize("f_pump", [0.0, 0.3])
def test_time_domain_oracle_agreement(defaults, f_pump):
    d, _ = defaults
    rng = np.random.default_rng(42)
    omegas = rng.uniform(3360.0, 3440.0, size=3)
    resp = response.solve_response(d, f_pump, InputPort.R_CAVITY, omegas)
    for k, w in enumerate(omegas):
        s_r = response.time_domain_oracle(d, f_pump, InputPort.R_CAVITY, float(w))
        assert abs(s_r - resp.s_r[k]) <= 1e-6 * abs(resp.s_r[k])


def test_oracle_nonconvergence_raises(defaults):
    d, _ = defaults
    with pytest.raises(response.SolverError, match="converge"):
        response.time_domain_oracle(
            d, 0.0, InputPort.R_CAVITY, 3391.0, rtol=1e-30, max_periods=40
        )


def test_spectrum_csv_roundtrip(defaults):
    d, _ = defaults
    resp = response.solve_response(d, 0.0, InputPort.R_CAVITY, np.array([3391.0, 3402.0]))
    spec = response.absorbance_r(resp, d)
    lines = spec.to_csv().strip().split("\n")
    assert lines[0] == "omega_cm1,value"
    for line, w, v in zip(lines[1:], spec.omega, spec.values):
        w2, v2 = (float(tok) for tok in line.split(","))
        assert w2 == w and v2 == v  # 17 significant digits survive the roundtrip
