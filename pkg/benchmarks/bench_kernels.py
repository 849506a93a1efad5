"""Compare the numba loop kernels with the vectorised numpy fallbacks.

    python benchmarks/bench_kernels.py            # kernel timings
    python benchmarks/bench_kernels.py --e2e      # also whole solves, both backends

Kernel timings call each implementation directly, so both run in one process.
The end-to-end part starts a child process per backend because the selection
is made at import time from SHIPWAVE_DISABLE_NUMBA.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from shipwave import _accel
from shipwave.numerics import dft, lu_solve
from shipwave.special import faddeeva_w_loops, faddeeva_w_numpy


def best(fn, repeat=5, number=1):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def row(name, size, t_loops, t_numpy):
    print(f"{name:<10} {size:>8} {t_loops * 1e3:>12.3f} {t_numpy * 1e3:>12.3f} {t_numpy / t_loops:>8.2f}")


def kernels():
    rng = np.random.default_rng(0)
    print(f"backend at import: {_accel.backend()}")
    print(f"{'kernel':<10} {'size':>8} {'loops [ms]':>12} {'numpy [ms]':>12} {'ratio':>8}")
    for n in (51, 101, 201, 401):
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) + n * np.eye(n)
        b = rng.standard_normal(n) + 0j
        lu_solve(a, b, kernel="loops")  # compile outside the timing
        row("lu_solve", n, best(lambda: lu_solve(a, b, kernel="loops")), best(lambda: lu_solve(a, b, kernel="numpy")))
    for k in (8, 12, 16):
        u = rng.standard_normal(2**k) + 0j
        dft(u, kernel="loops")
        row("dft", 2**k, best(lambda: dft(u, kernel="loops")), best(lambda: dft(u, kernel="numpy")))
    for n in (100, 10_000):
        z = rng.uniform(-20, 20, n) + 1j * rng.uniform(-5, 20, n)
        faddeeva_w_loops(z)
        row("faddeeva", n, best(lambda: faddeeva_w_loops(z)), best(lambda: faddeeva_w_numpy(z)))


_E2E = r"""
import timeit
from shipwave import backend, levin
from shipwave.clenshaw_curtis import integrate_I
levin.solve_corrected((-1, -0.5, 0.5), 100); integrate_I((-1, -0.5, 0.5), 1e-10)
tl = min(timeit.repeat(lambda: levin.solve_corrected((-1, -0.5, 0.5), 100), repeat=5, number=1))
tc = min(timeit.repeat(lambda: integrate_I((-1, -0.5, 0.5), 1e-10), repeat=5, number=1))
print(f"{backend():<6} levin m=100: {tl * 1e3:8.2f} ms   cc eps=1e-10: {tc * 1e3:8.2f} ms")
"""


def end_to_end():
    sys.stdout.flush()
    for flag in ("0", "1"):
        env = dict(os.environ, SHIPWAVE_DISABLE_NUMBA=flag)
        subprocess.run([sys.executable, "-c", _E2E], env=env, check=True)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--e2e", action="store_true", help="also time whole solves under both backends")
    args = ap.parse_args()
    if not _accel.NUMBA_ENABLED:
        print("numba disabled: the loop kernels run as plain Python", file=sys.stderr)
    kernels()
    if args.e2e:
        end_to_end()


if __name__ == "__main__":
    main()
