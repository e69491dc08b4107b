"""Pure-Python implementations of the hot kernels.

Mirrors the compiled extension in ``_native.pyx`` operation for operation
(same pivoting rule, same cyclic rotation order) so either backend can serve
the same contracts.  Used when the extension is unavailable or when the
CAVCHEM_PURE environment variable is set.
"""

from __future__ import annotations

import math

import numpy as np


def resolvent_solve(m, omegas, b):
    """Solve (omega*I - m) x = b for every omega; see the native kernel."""
    m = np.asarray(m, dtype=np.complex128)
    omegas = np.asarray(omegas, dtype=np.float64)
    b = np.asarray(b, dtype=np.complex128)
    n = m.shape[0]
    if m.shape[1] != n or b.shape[0] != n:
        raise ValueError("shape mismatch")
    m_rows = [[complex(m[i, j]) for j in range(n)] for i in range(n)]
    b_list = [complex(x) for x in b]
    out = np.empty((omegas.shape[0], n), dtype=np.complex128)

    for k, w in enumerate(omegas):
        w = float(w)
        a = [[-m_rows[i][j] for j in range(n)] for i in range(n)]
        for i in range(n):
            a[i][i] += w
        x = list(b_list)
        for col in range(n):
            piv = col
            best = abs(a[col][col].real) + abs(a[col][col].imag)
            for i in range(col + 1, n):
                mag = abs(a[i][col].real) + abs(a[i][col].imag)
                if mag > best:
                    best = mag
                    piv = i
            if best == 0.0:
                raise ZeroDivisionError("singular resolvent system")
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                x[col], x[piv] = x[piv], x[col]
            for i in range(col + 1, n):
                factor = a[i][col] / a[col][col]
                if factor != 0:
                    for j in range(col + 1, n):
                        a[i][j] -= factor * a[col][j]
                    x[i] -= factor * x[col]
        for i in range(n - 1, -1, -1):
            s = x[i]
            for j in range(i + 1, n):
                s -= a[i][j] * x[j]
            x[i] = s / a[i][i]
        out[k, :] = x
    return out


def jacobi_eigh(h, tol_factor=1e-12, max_sweeps=100):
    """Cyclic Jacobi eigendecomposition of a small real symmetric matrix."""
    a = np.array(h, dtype=np.float64, copy=True)
    n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError("matrix must be square")
    a = [[float(a[i, j]) for j in range(n)] for i in range(n)]
    v = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]

    norm = math.sqrt(sum(a[i][j] ** 2 for i in range(n) for j in range(n)))
    if norm == 0.0:
        return np.zeros(n), np.eye(n)

    for _ in range(max_sweeps):
        off = math.sqrt(
            sum(a[i][j] ** 2 for i in range(n) for j in range(n) if i != j)
        )
        if off < tol_factor * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if apq == 0.0:
                    continue
                theta = (a[q][q] - a[p][p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for i in range(n):
                    aip, aiq = a[i][p], a[i][q]
                    a[i][p] = c * aip - s * aiq
                    a[i][q] = s * aip + c * aiq
                for i in range(n):
                    aip, aiq = a[p][i], a[q][i]
                    a[p][i] = c * aip - s * aiq
                    a[q][i] = s * aip + c * aiq
                for i in range(n):
                    aip, aiq = v[i][p], v[i][q]
                    v[i][p] = c * aip - s * aiq
                    v[i][q] = s * aip + c * aiq

    vals = np.array([a[i][i] for i in range(n)])
    vecs = np.array(v)
    order = np.argsort(vals, kind="stable")
    return vals[order], vecs[:, order]
