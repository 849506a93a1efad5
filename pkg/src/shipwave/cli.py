"""Command-line front end.

Subcommands: eval, grid, table1, compare, deriv, weights.  Exit codes: 0 ok,
2 domain error, 3 non-convergence, 4 I/O error, 5 acceptance miss.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import time
from contextlib import contextmanager
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import levin
from .clenshaw_curtis import cc_nodes, cc_weights, integrate_I
from .errors import DomainError, ShipWaveError
from .point import FieldPoint
from .wavelike import EvalConfig, eval_I, eval_I_infinity, eval_J

EXIT_OK, EXIT_DOMAIN, EXIT_NONCONV, EXIT_IO, EXIT_MISS = 0, 2, 3, 4, 5

GRID_HEADER = ["x", "y", "z", "re", "im", "err_est", "method", "n_evals", "converged", "time_us"]
EVAL_HEADER = ["x", "y", "z", "re", "im", "err_est", "method", "n_evals", "D", "theta", "converged", "time_us"]
COMPARE_HEADER = ["x", "y", "z", "levin_re", "levin_im", "levin_err", "cc_re", "cc_im", "abs_diff", "pass"]
DERIV_HEADER = ["x", "y", "z", "l1", "l2", "l3", "re", "im", "err_est", "method", "n_evals", "converged", "time_us"]

# I_inf(-1, y, z) to ten decimals
TABLE1 = {
    (-0.5, 0.5): -0.3132089735,
    (-0.1, 0.5): -0.4347821474,
    (-0.01, 0.5): -0.4093149760,
    (0.0, 0.5): -0.4039184710,
    (-0.5, 0.1): -0.4288349681,
    (-0.1, 0.1): -1.0716691716,
    (-0.01, 0.1): -2.1157417380,
    (0.0, 0.1): -2.5160949098,
    (-0.5, 0.01): -0.4349760923,
    (-0.1, 0.01): -0.9188289512,
    (-0.01, 0.01): -0.7896492217,
    (0.0, 0.01): 3.6856412628,
}
TABLE1_TOL = 1e-8


def fmt(v: float) -> str:
    """12 significant digits, scientific, dot decimal."""
    return "{:.11e}".format(v)


@dataclass(frozen=True)
class GridSpec:
    """Linearly spaced x and z axes (endpoints included) and a list of y values."""

    x_range: tuple
    nx: int
    z_range: tuple
    nz: int
    ys: tuple

    def __post_init__(self):
        if self.nx < 2 or self.nz < 2:
            raise DomainError("grid counts must be >= 2")
        for v in (*self.x_range, *self.z_range, *self.ys):
            if not math.isfinite(v):
                raise DomainError("grid ranges must be finite")
        if not self.ys:
            raise DomainError("at least one y value is needed")

    def points(self):
        """(x, y, z) triples: y outermost, then x, then z."""
        xs = np.linspace(*self.x_range, self.nx)
        zs = np.linspace(*self.z_range, self.nz)
        return [(float(x), float(y), float(z)) for y in self.ys for x in xs for z in zs]


# --------------------------------------------------------------------------
# workers (module level so they pickle)
# --------------------------------------------------------------------------


def _config(args) -> EvalConfig:
    return EvalConfig(method=args.method, eps=args.eps, m=args.M)


def _grid_row(task):
    (x, y, z), cfg, infty, y0 = task
    start = time.perf_counter()
    try:
        if infty:
            rep = eval_I_infinity(x, y + y0, z, cfg)
        else:
            rep = eval_I(FieldPoint(x, y + y0, z), cfg)
    except DomainError as exc:
        return (x, y, z, math.nan, math.nan, math.nan, "domain_error", 0, False, 0.0, str(exc))
    us = (time.perf_counter() - start) * 1e6
    return (x, y, z, rep.value.real, rep.value.imag, rep.error_estimate, rep.method, rep.eval_count, rep.converged, us, "")


def _compare_row(task):
    (x, y, z), m, eps = task
    try:
        lev = levin.solve_corrected((x, y, z), m)
        cc = integrate_I((x, y, z), eps)
    except DomainError:
        return (x, y, z, math.nan, math.nan, math.nan, math.nan, math.nan, math.nan, False)
    diff = abs(lev.value - cc.value)
    ok = cc.converged and diff <= max(lev.error_estimate, eps)
    return (x, y, z, lev.value.real, lev.value.imag, lev.error_estimate, cc.value.real, cc.value.imag, diff, ok)


def _map(fn, tasks, jobs):
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (8 * jobs))))
    return [fn(t) for t in tasks]


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------


@contextmanager
def _output(path):
    """stdout for None or "-", else the file opened for writing (before any work)."""
    if path in (None, "-"):
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="") as handle:
        yield handle


def _write_csv(handle, header, rows):
    w = csv.writer(handle, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def _cell(v):
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return fmt(v)
    return str(v)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_eval(args) -> int:
    cfg = _config(args)
    start = time.perf_counter()
    if args.infty:
        rep = eval_I_infinity(args.x, args.y + args.y0, args.z, cfg)
    else:
        rep = eval_I(FieldPoint(args.x, args.y + args.y0, args.z), cfg)
    us = 0.0 if args.no_timing else (time.perf_counter() - start) * 1e6
    row = (
        args.x, args.y + args.y0, args.z, rep.value.real, rep.value.imag, rep.error_estimate,
        rep.method, rep.eval_count, rep.d_param, rep.theta, rep.converged, us,
    )
    with _output(args.output) as out:
        _write_csv(out, EVAL_HEADER, [[_cell(v) for v in row]])
    return EXIT_OK if rep.converged else EXIT_NONCONV


def _spec(args) -> GridSpec:
    return GridSpec(tuple(args.x_range), args.nx, tuple(args.z_range), args.nz, tuple(args.y))


def cmd_grid(args) -> int:
    spec = _spec(args)
    cfg = _config(args)
    tasks = [(pt, cfg, args.infty, args.y0) for pt in spec.points()]
    with _output(args.output) as out:
        results = _map(_grid_row, tasks, args.jobs)
        rows = _grid_rows(results, args.no_timing)
        _write_csv(out, GRID_HEADER, rows)
    domain = any(r[6] == "domain_error" for r in results)
    nonconv = any(not r[8] and r[6] != "domain_error" for r in results)
    if domain:
        return EXIT_DOMAIN
    return EXIT_NONCONV if nonconv else EXIT_OK


def _grid_rows(results, no_timing):
    rows = []
    for r in results:
        cells = list(r[:10])
        if no_timing:
            cells[9] = 0.0
        rows.append([_cell(v) for v in cells])
    return rows


def cmd_compare(args) -> int:
    spec = _spec(args)
    m = args.M if args.M is not None else 100
    tasks = [(pt, m, args.eps) for pt in spec.points()]
    with _output(args.output) as out:
        results = _map(_compare_row, tasks, args.jobs)
        _write_csv(out, COMPARE_HEADER, [[_cell(v) for v in r] for r in results])
    passed = sum(1 for r in results if r[9])
    print(f"passed {passed}/{len(results)}", file=sys.stderr)
    return EXIT_OK if passed == len(results) else EXIT_MISS


def cmd_table1(args) -> int:
    cfg = _config(args)
    out = io.StringIO()
    out.write(f"{'y':>6} {'z':>6} {'computed':>16} {'reference':>16} {'abs_diff':>10}\n")
    worst = 0.0
    for (y, z), ref in TABLE1.items():
        rep = eval_I_infinity(-1.0, y, z, cfg)
        diff = abs(rep.value.real - ref)
        worst = max(worst, diff)
        flag = "" if diff <= TABLE1_TOL else "  MISS"
        out.write(f"{y:6.2f} {z:6.2f} {rep.value.real:16.10f} {ref:16.10f} {diff:10.2e}{flag}\n")
    out.write(f"max |diff| = {worst:.2e} (tolerance {TABLE1_TOL:.0e})\n")
    sys.stdout.write(out.getvalue())
    return EXIT_OK if worst <= TABLE1_TOL else EXIT_MISS


def cmd_deriv(args) -> int:
    cfg = _config(args)
    start = time.perf_counter()
    rep = eval_J(FieldPoint(args.x, args.y + args.y0, args.z), tuple(args.dir), cfg)
    us = 0.0 if args.no_timing else (time.perf_counter() - start) * 1e6
    row = (
        args.x, args.y + args.y0, args.z, *map(float, args.dir), rep.value.real, rep.value.imag,
        rep.error_estimate, rep.method, rep.eval_count, rep.converged, us,
    )
    with _output(args.output) as out:
        _write_csv(out, DERIV_HEADER, [[_cell(v) for v in row]])
    return EXIT_OK if rep.converged else EXIT_NONCONV


def cmd_weights(args) -> int:
    w = cc_weights(args.n)
    nodes = cc_nodes(args.n)
    rows = [[str(k), fmt(float(t)), fmt(float(v))] for k, (t, v) in enumerate(zip(nodes, w.weights))]
    with _output(args.output) as out:
        _write_csv(out, ["k", "node", "weight"], rows)
    print(f"sum = {fmt(float(np.sum(w.weights)))}", file=sys.stderr)
    return EXIT_OK


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def _common(p, *, eps=1e-10, method="auto"):
    p.add_argument("--method", choices=["auto", "levin", "levin-plain", "cc"], default=method)
    p.add_argument("--eps", type=float, default=eps, help="target accuracy")
    p.add_argument("-M", type=int, default=None, help="fixed Levin order (default: doubling loop)")
    p.add_argument("--y0", type=float, default=0.0, help="source depth offset added to y")
    p.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-timing", action="store_true", help="write 0 in the timing column")


def _point(p):
    p.add_argument("-x", type=float, required=True)
    p.add_argument("-y", type=float, required=True)
    p.add_argument("-z", type=float, required=True)


def _grid(p, *, z_range=(-0.25, 0.25), ys=(-0.5,)):
    p.add_argument("--x-range", type=float, nargs=2, default=(-10.0, 0.0), metavar=("X0", "X1"))
    p.add_argument("--nx", type=int, default=20)
    p.add_argument("--z-range", type=float, nargs=2, default=z_range, metavar=("Z0", "Z1"))
    p.add_argument("--nz", type=int, default=20)
    p.add_argument("--y", type=float, nargs="+", default=list(ys))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shipwave", description="Wavelike part of the Kelvin source potential.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate I (or I_inf with --infty) at one point")
    _point(p)
    _common(p)
    p.add_argument("--infty", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("grid", help="evaluate on a grid and write CSV")
    _grid(p)
    _common(p)
    p.add_argument("--infty", action="store_true")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("table1", help="reproduce the twelve I_inf(-1, y, z) benchmark values")
    _common(p, method="cc")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("compare", help="corrected Levin against CC on a grid")
    _grid(p, z_range=(-5.0, 5.0), ys=(-0.25,))
    _common(p, eps=1e-12)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("deriv", help="directional derivative grad I . l")
    _point(p)
    p.add_argument("--dir", type=float, nargs=3, required=True, metavar=("L1", "L2", "L3"))
    _common(p)
    p.set_defaults(func=cmd_deriv)

    p = sub.add_parser("weights", help="print Clenshaw-Curtis nodes and weights")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_weights)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ShipWaveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONV


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
