# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: per-frequency resolvent solves and the Jacobi eigensolver.

Semantics are mirrored exactly (same pivoting rule, same rotation order) by
the pure-Python fallback in ``_fallback.py``.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()


def resolvent_solve(object m, object omegas, object b):
    """Solve (omega*I - m) x = b for every omega.

    m : (n, n) complex matrix (Hamiltonian plus loss), b : (n,) complex drive.
    Returns an (n_omega, n) complex array of solutions, one row per frequency.
    Gaussian elimination with partial pivoting; n is small (4 or 5).
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] m_arr = np.ascontiguousarray(m, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] w_arr = np.ascontiguousarray(omegas, dtype=np.float64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] b_arr = np.ascontiguousarray(b, dtype=np.complex128)
    cdef Py_ssize_t n = m_arr.shape[0]
    cdef Py_ssize_t nw = w_arr.shape[0]
    if m_arr.shape[1] != n or b_arr.shape[0] != n:
        raise ValueError("shape mismatch")
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out = np.empty((nw, n), dtype=np.complex128)
    cdef double complex[:, :] mv = m_arr
    cdef double[:] wv = w_arr
    cdef double complex[:] bv = b_arr
    cdef double complex[:, :] ov = out

    cdef double complex a[8][8]
    cdef double complex x[8]
    cdef Py_ssize_t k, i, j, col, piv
    cdef double w, best, mag
    cdef double complex factor, tmp, s

    if n > 8:
        raise ValueError("kernel supports n <= 8")

    for k in range(nw):
        w = wv[k]
        for i in range(n):
            for j in range(n):
                a[i][j] = -mv[i, j]
            a[i][i] = a[i][i] + w
            x[i] = bv[i]
        for col in range(n):
            piv = col
            best = fabs(a[col][col].real) + fabs(a[col][col].imag)
            for i in range(col + 1, n):
                mag = fabs(a[i][col].real) + fabs(a[i][col].imag)
                if mag > best:
                    best = mag
                    piv = i
            if best == 0.0:
                raise ZeroDivisionError("singular resolvent system")
            if piv != col:
                for j in range(col, n):
                    tmp = a[col][j]
                    a[col][j] = a[piv][j]
                    a[piv][j] = tmp
                tmp = x[col]
                x[col] = x[piv]
                x[piv] = tmp
            for i in range(col + 1, n):
                factor = a[i][col] / a[col][col]
                if factor != 0:
                    for j in range(col + 1, n):
                        a[i][j] = a[i][j] - factor * a[col][j]
                    x[i] = x[i] - factor * x[col]
        for i in range(n - 1, -1, -1):
            s = x[i]
            for j in range(i + 1, n):
                s = s - a[i][j] * x[j]
            x[i] = s / a[i][i]
        for i in range(n):
            ov[k, i] = x[i]
    return out


def jacobi_eigh(object h, double tol_factor=1e-12, int max_sweeps=100):
    """Eigendecomposition of a small real symmetric matrix by cyclic Jacobi.

    Returns (eigenvalues ascending, eigenvector columns in matching order).
    Convergence: off-diagonal Frobenius norm < tol_factor * ||h||_F.
    """
    cdef cnp.ndarray[cnp.float64_t, ndim=2] h_arr = np.array(h, dtype=np.float64, copy=True, order="C")
    cdef Py_ssize_t n = h_arr.shape[0]
    if h_arr.shape[1] != n:
        raise ValueError("matrix must be square")
    cdef cnp.ndarray[cnp.float64_t, ndim=2] v_arr = np.eye(n, dtype=np.float64)
    cdef double[:, :] a = h_arr
    cdef double[:, :] v = v_arr

    cdef double norm = 0.0, off
    cdef Py_ssize_t i, j, p, q, sweep
    cdef double apq, app, aqq, theta, t, c, s, aip, aiq

    for i in range(n):
        for j in range(n):
            norm += a[i, j] * a[i, j]
    norm = sqrt(norm)
    if norm == 0.0:
        return np.zeros(n), v_arr

    for sweep in range(max_sweeps):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j] * a[i, j]
        if sqrt(off) < tol_factor * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                theta = (aqq - app) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for i in range(n):
                    aip = a[i, p]
                    aiq = a[i, q]
                    a[i, p] = c * aip - s * aiq
                    a[i, q] = s * aip + c * aiq
                for i in range(n):
                    aip = a[p, i]
                    aiq = a[q, i]
                    a[p, i] = c * aip - s * aiq
                    a[q, i] = s * aip + c * aiq
                for i in range(n):
                    aip = v[i, p]
                    aiq = v[i, q]
                    v[i, p] = c * aip - s * aiq
                    v[i, q] = s * aip + c * aiq

    vals = np.array([a[i, i] for i in range(n)])
    order = np.argsort(vals, kind="stable")
    return vals[order], v_arr[:, order]
