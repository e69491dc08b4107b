"""Device Hamiltonians, their diagonalization, and mixing-fraction utilities.

Basis orders are part of the public contract:
  no-pump (4x4):  RC01, cavRC, cavR, R
  pumped  (5x5):  RC01, RC12, cavRC, cavR, R
The pump fraction rescales the RC01-cavity coupling by sqrt(1 - 2 f) and
opens the RC12 excited-state-absorption channel with weight sqrt(2 f).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from cavchem import _kernels
from cavchem.model import DeviceParams, ReactionParams

BASIS_NO_PUMP = ("RC01", "cavRC", "cavR", "R")
BASIS_PUMP = ("RC01", "RC12", "cavRC", "cavR", "R")

# Species order used for gradient-marker placement (adjacent-species mixing).
MARKER_SPECIES = ("cavRC", "RC01", "R", "cavR")

F_PUMP_MAX = 0.5 - 1e-9


@dataclass(frozen=True)
class HermitianMatrix:
    """Real symmetric system matrix with its basis labels."""

    entries: np.ndarray
    basis_labels: tuple[str, ...]

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class EigenSystem:
    """Sorted eigenvalues, orthonormal eigenvectors, per-label mixing fractions."""

    eigenvalues: np.ndarray          # ascending
    eigenvectors: np.ndarray         # columns match eigenvalue order
    mixing_fractions: np.ndarray     # [state, label] squared amplitudes
    basis_labels: tuple[str, ...]

    def fractions_of(self, label: str) -> np.ndarray:
        return self.mixing_fractions[:, self.basis_labels.index(label)]


def _check_f_pump(f_pump: float) -> None:
    if not (0.0 <= f_pump < F_PUMP_MAX):
        raise ValueError(
            f"f_pump must be in [0, {F_PUMP_MAX}); got {f_pump!r} "
            "(the rescaled coupling would not be real)"
        )


def build_no_pump(d: DeviceParams) -> HermitianMatrix:
    """4x4 system matrix of the unpumped device."""
    h = np.array(
        [
            [d.omega_rc, d.g_rc_collective, 0.0, 0.0],
            [d.g_rc_collective, d.omega_cav_rc, d.g_cav, 0.0],
            [0.0, d.g_cav, d.omega_cav_r, d.g_r_collective],
            [0.0, 0.0, d.g_r_collective, d.omega_r],
        ]
    )
    return HermitianMatrix(h, BASIS_NO_PUMP)


def build_pump(d: DeviceParams, f_pump: float) -> HermitianMatrix:
    """5x5 pump-dressed system matrix (Hermitian part)."""
    _check_f_pump(f_pump)
    g01 = d.g_rc_collective * math.sqrt(1.0 - 2.0 * f_pump)
    g12 = d.g_rc_collective * math.sqrt(2.0 * f_pump)
    h = np.array(
        [
            [d.omega_rc, 0.0, g01, 0.0, 0.0],
            [0.0, d.omega_rc + 2.0 * d.delta, g12, 0.0, 0.0],
            [g01, g12, d.omega_cav_rc, d.g_cav, 0.0],
            [0.0, 0.0, d.g_cav, d.omega_cav_r, d.g_r_collective],
            [0.0, 0.0, 0.0, d.g_r_collective, d.omega_r],
        ]
    )
    return HermitianMatrix(h, BASIS_PUMP)


def build_loss(d: DeviceParams, r: ReactionParams, f_pump: float) -> np.ndarray:
    """5x5 anti-Hermitian loss matrix in the pumped basis.

    Diagonal carries the half-linewidths; the single off-diagonal entry is the
    pump-induced RC01<-RC12 feeding term i*gamma_RC*sqrt(2f/(1-2f)).
    """
    _check_f_pump(f_pump)
    loss = np.diag(
        [
            -0.5j * d.gamma_rc,
            -1.5j * d.gamma_rc,
            -0.5j * d.kappa_rc,
            -0.5j * d.kappa_r,
            -0.5j * d.gamma_r,
        ]
    )
    loss[0, 1] = 1j * d.gamma_rc * math.sqrt(2.0 * f_pump / (1.0 - 2.0 * f_pump))
    return loss


def diagonalize(h: HermitianMatrix) -> EigenSystem:
    """Eigensystem with ascending eigenvalues and per-label mixing fractions.

    Near-degenerate eigenvalues (within 1e-9 relative) are tie-broken by
    descending RC01 fraction, then by label order, for deterministic output.
    """
    vals, vecs = _kernels.jacobi_eigh(h.entries)
    fractions = vecs.T**2

    scale = max(abs(vals.max()), abs(vals.min()), 1.0)
    rc01 = h.basis_labels.index("RC01")
    order = sorted(
        range(len(vals)),
        key=lambda i: (round(vals[i] / (1e-9 * scale)), -fractions[i, rc01], i),
    )
    vals = vals[order]
    vecs = vecs[:, order]
    fractions = fractions[order, :]
    return EigenSystem(vals, vecs, fractions, h.basis_labels)


def merge_rc12(e: EigenSystem) -> EigenSystem:
    """Fold the RC12 fraction into RC01, giving a 4-label fraction set.

    Eigenvectors are carried through unchanged; only the fraction table is
    reduced.  A no-op for the 4-label case.
    """
    if "RC12" not in e.basis_labels:
        return e
    i01 = e.basis_labels.index("RC01")
    i12 = e.basis_labels.index("RC12")
    keep = [i for i in range(len(e.basis_labels)) if i != i12]
    fractions = e.mixing_fractions[:, keep].copy()
    new_i01 = keep.index(i01)
    fractions[:, new_i01] += e.mixing_fractions[:, i12]
    labels = tuple(e.basis_labels[i] for i in keep)
    return EigenSystem(e.eigenvalues, e.eigenvectors, fractions, labels)


def round_half_down(x: float) -> int:
    """Nearest integer, with odd multiples of 0.5 mapped to the lower one."""
    return math.ceil(x - 0.5)


def gradient_markers(e: EigenSystem) -> list[list[tuple[str, int]]]:
    """Per-eigenstate gradient-marker positions on a 0-100 scale.

    Species are taken in the order cavRC, RC01, R, cavR; each marker position
    averages the fractions of adjacent species (the last one pairs with 1).
    Markers at position 0 are omitted.  For 5-label systems the RC12 fraction
    is first merged into RC01.
    """
    e4 = merge_rc12(e)
    cols = [e4.basis_labels.index(lbl) for lbl in MARKER_SPECIES]
    markers = []
    for state in range(len(e4.eigenvalues)):
        f = [e4.mixing_fractions[state, c] for c in cols]
        row = []
        for i, label in enumerate(MARKER_SPECIES):
            neighbor = f[i + 1] if i < 3 else 1.0
            pos = round_half_down(100.0 * (f[i] + neighbor) / 2.0)
            if pos != 0:
                row.append((label, pos))
        markers.append(row)
    return markers


def eigensystem_csv(e: EigenSystem) -> str:
    """CSV dump: one row per eigenstate, eigenvalue then fraction per label."""
    lines = ["eigenvalue_cm1," + ",".join(f"frac_{lbl}" for lbl in e.basis_labels)]
    for i, val in enumerate(e.eigenvalues):
        cells = [format(val, ".17g")]
        cells += [format(x, ".17g") for x in e.mixing_fractions[i]]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
