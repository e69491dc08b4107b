"""Kernel tests: shipped solvers against numpy and against each other.

The compiled backend and the pure-Python fallback implement the same
operation sequence, so their outputs must agree bit-for-bit wherever both
are importable.
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cavchem import _kernels
from cavchem._kernels import _fallback


def _random_symmetric(rng, n, scale=100.0):
    a = rng.standard_normal((n, n)) * scale
    return (a + a.T) / 2.0


def _random_system(rng, n):
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    m -= 1j * np.eye(n) * (1.0 + rng.random())  # keep it comfortably regular
    b = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return m, b


def test_backend_reports_itself():
    assert _kernels.BACKEND in ("native", "python")


def test_resolvent_matches_numpy():
    rng = np.random.default_rng(7)
    for n in (4, 5):
        m, b = _random_system(rng, n)
        omegas = rng.uniform(-50.0, 50.0, size=20)
        out = _kernels.resolvent_solve(m, omegas, b)
        for k, w in enumerate(omegas):
            expected = np.linalg.solve(w * np.eye(n) - m, b)
            assert np.allclose(out[k], expected, rtol=1e-10, atol=1e-12)


def test_resolvent_fallback_matches_selected_backend():
    rng = np.random.default_rng(11)
    m, b = _random_system(rng, 5)
    omegas = rng.uniform(-10.0, 10.0, size=7)
    a = _kernels.resolvent_solve(m, omegas, b)
    c = _fallback.resolvent_solve(m, omegas, b)
    assert np.array_equal(a, c)


def test_jacobi_matches_numpy_eigvalsh():
    rng = np.random.default_rng(3)
    for n in (2, 3, 4, 5):
        h = _random_symmetric(rng, n)
        vals, vecs = _kernels.jacobi_eigh(h)
        assert np.allclose(vals, np.linalg.eigvalsh(h), rtol=1e-12, atol=1e-9)
        # ascending order
        assert np.all(np.diff(vals) >= 0)
        # orthonormal columns, true eigenpairs
        assert np.allclose(vecs.T @ vecs, np.eye(n), atol=1e-12)
        assert np.allclose(h @ vecs, vecs * vals, atol=1e-9 * np.abs(h).max())


def test_jacobi_fallback_matches_selected_backend():
    rng = np.random.default_rng(5)
    h = _random_symmetric(rng, 5)
    va, ua = _kernels.jacobi_eigh(h)
    vb, ub = _fallback.jacobi_eigh(h)
    assert np.array_equal(va, vb)
    assert np.array_equal(ua, ub)


def test_jacobi_diagonal_input_is_exact():
    h = np.diag([3.0, -1.0, 2.0, 0.5])
    vals, vecs = _kernels.jacobi_eigh(h)
    assert np.array_equal(vals, np.array([-1.0, 0.5, 2.0, 3.0]))
    assert np.array_equal(np.abs(vecs), np.abs(vecs.round()))  # permutation matrix


@settings(max_examples=60, deadline=None)
@given(
    entries=st.lists(
        st.floats(min_value=-1e3, max_value=1e3, allow_nan=False),
        min_size=15,
        max_size=15,
    )
)
def test_jacobi_property_random_symmetric(entries):
    h = np.zeros((5, 5))
    iu = np.triu_indices(5)
    h[iu] = entries
    h = (h + h.T) / 2.0
    vals, vecs = _kernels.jacobi_eigh(h)
    scale = max(np.abs(h).max(), 1.0)
    assert np.allclose(np.sort(vals), vals)
    assert np.allclose(h @ vecs, vecs * vals, atol=1e-8 * scale)
    assert np.allclose(np.linalg.eigvalsh(h), vals, atol=1e-8 * scale)


@settings(max_examples=40, deadline=None)
@given(
    omega=st.floats(min_value=-1e3, max_value=1e3, allow_nan=False),
    seed=st.integers(min_value=0, max_value=2**31 - 1),
)
def test_resolvent_property_residual(omega, seed):
    rng = np.random.default_rng(seed)
    m, b = _random_system(rng, 5)
    s = _kernels.resolvent_solve(m, np.array([omega]), b)[0]
    residual = (omega * np.eye(5) - m) @ s - b
    assert np.max(np.abs(residual)) < 1e-8 * max(1.0, np.max(np.abs(s)))
