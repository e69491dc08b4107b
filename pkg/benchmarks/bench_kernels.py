"""Benchmark the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeats N]

Times the two hot kernels on a realistic workload: the 5x5 complex resolvent
solved over the default 2001-point probe grid, and the Jacobi eigensolver on
the 4x4 and 5x5 device matrices.  Also asserts that both backends produce
bit-identical output on the benchmark inputs.
"""

import argparse
import time

import numpy as np

from cavchem import hamiltonians, model, response
from cavchem._kernels import _fallback
from cavchem.response import InputPort

try:
    from cavchem._kernels import _native
except ImportError:
    _native = None


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    d, r = model.reference_defaults()
    grid = model.default_grid()
    omegas = grid.omegas()
    m = response._system_matrix(d, r, 0.3)
    b = response._drive_vector(d, InputPort.R_CAVITY)
    h4 = hamiltonians.build_no_pump(d).entries
    h5 = hamiltonians.build_pump(d, 0.3).entries

    backends = [("python", _fallback)]
    if _native is not None:
        backends.insert(0, ("native", _native))
    else:
        print("compiled extension not importable; timing the fallback only")

    results = {}
    print(f"workload: resolvent over {omegas.size} frequencies; "
          f"Jacobi on 4x4 and 5x5 (best of {args.repeats})")
    for name, mod in backends:
        t_res, amps = _time(lambda: mod.resolvent_solve(m, omegas, b), args.repeats)
        t_eig, _ = _time(
            lambda: (mod.jacobi_eigh(h4), mod.jacobi_eigh(h5)), args.repeats
        )
        results[name] = (t_res, t_eig, amps)
        print(f"  {name:7s} resolvent {t_res * 1e3:8.2f} ms   jacobi {t_eig * 1e6:8.1f} us")

    if len(results) == 2:
        n, p = results["native"], results["python"]
        print(f"speedup: resolvent x{p[0] / n[0]:.1f}, jacobi x{p[1] / n[1]:.1f}")
        assert np.array_equal(n[2], p[2]), "backends disagree on the benchmark solve"
        print("backends agree bit-for-bit on the resolvent output")


if __name__ == "__main__":
    main()
