"""Numeric kernel backend selection.

The compiled extension is preferred; the pure-Python twin is used when the
extension is missing or when CAVCHEM_PURE is set to a nonempty value.
Both expose identical ``resolvent_solve`` and ``jacobi_eigh`` functions.
"""

import os

if os.environ.get("CAVCHEM_PURE"):
    from cavchem._kernels._fallback import jacobi_eigh, resolvent_solve

    BACKEND = "python"
else:
    try:
        from cavchem._kernels._native import jacobi_eigh, resolvent_solve

        BACKEND = "native"
    except ImportError:
        from cavchem._kernels._fallback import jacobi_eigh, resolvent_solve

        BACKEND = "python"

__all__ = ["resolvent_solve", "jacobi_eigh", "BACKEND"]
