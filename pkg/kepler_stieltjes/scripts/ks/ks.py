#!/usr/bin/env python

"""
Solve the Kepler equation through its Kapteyn series, the Stieltjes integral representation and
resummation of the series, and cross-check every route against a root-finding oracle.

Usage:
    ks solve --eps=<eps> --M=<M> [--method=<method>] [--precision=<p>] [--order=<k>]
    ks sweep --eps=<eps> --M-min=<a> --M-max=<b> --n-points=<n> [--methods=<list>] [--precisions=<list>] [--orders=<list>] [--out=<csv>] [--svg=<svg>] [--max-workers=<n>]
    ks resum --eps=<eps> --z-mod=<r> --z-arg=<phi> [--orders=<list>] [--beta=<beta>]
    ks verify [--level=<level>]
    ks theta [--chis=<list>] [--n-points=<n>] [--out=<csv>]
    ks -h | --help
    ks --version

Options:
    --eps=<eps>             Eccentricity, 0 <= eps <= 1.
    --M=<M>                 Mean anomaly in radians.
    --method=<method>       oracle, series, integral, weniger or wynn [default: oracle].
    --precision=<p>         Precision level of the integral routes: 10, 15, 20 or 25 [default: 15].
    --order=<k>             Order of the series-type methods [default: 30].
    --M-min=<a>             Smallest mean anomaly of the sweep, in (0, 2pi).
    --M-max=<b>             Largest mean anomaly of the sweep, in (0, 2pi).
    --n-points=<n>          Number of grid points.
    --methods=<list>        Comma separated methods [default: integral].
    --precisions=<list>     Comma separated precision levels for the integral method [default: 15].
    --orders=<list>         Comma separated orders for the series-type methods [default: 1,10,20,30].
    --out=<csv>             Output CSV file, stdout when omitted.
    --svg=<svg>             Also write a log-scale error plot.
    --max-workers=<n>       Number of sweep threads (default from KS_MAX_WORKERS).
    --z-mod=<r>             Modulus of z.
    --z-arg=<phi>           Argument of z in radians.
    --beta=<beta>           Shift parameter of the delta transformation [default: 1.0].
    --level=<level>         quick or full [default: quick].
    --chis=<list>           Comma separated aspect ratios [default: 0.1,0.5,1].
    -h --help               Show this help message and exit.
    --version               Show version.

Examples:
    ks solve --eps 1 --M 0.7853981634 --method integral --precision 25
    ks sweep --eps 1 --M-min 0.05 --M-max 3.09 --n-points 50 --precisions 10,15,20,25 --svg sweep.svg
    ks resum --eps 0.9 --z-mod 10 --z-arg 1.0471975512 --orders 1,10,20,30
"""

import cmath
import math
import sys

import numpy as np
import pandas as pd
from docopt import docopt

from kepler_stieltjes import accel, config, integral_rep, kepler, stieltjes
from kepler_stieltjes.errors import DomainError, KeplerStieltjesError, OutputError
from kepler_stieltjes.logger import logger
from kepler_stieltjes.plots import write_error_plot
from kepler_stieltjes.runners import build_sweep_tasks, dispatch_sweep, reference_psi
from kepler_stieltjes.schemas import Method, SweepRecord
from kepler_stieltjes.utils import Timer, format_complex, format_complex_scaled, parse_list
from kepler_stieltjes.verify import suite_registry

TWO_PI = 2.0 * math.pi


def _to_float(name: str, text: str) -> float:
    try:
        return float(text)
    except (TypeError, ValueError):
        raise DomainError(name, text, "a real number")


def _to_list(name: str, text: str, cast=float) -> list:
    try:
        return parse_list(text, cast)
    except ValueError:
        raise DomainError(name, text, "a comma separated list")


def _to_method(text: str) -> Method:
    try:
        return Method(text)
    except ValueError:
        raise DomainError("method", text, f"one of {[m.value for m in Method]}")


def _write_csv(df: pd.DataFrame, out: str | None):
    if not out or out == "-":
        df.to_csv(sys.stdout, index=False, float_format="%.17g", lineterminator="\n")
        return
    try:
        df.to_csv(out, index=False, float_format="%.17g", lineterminator="\n")
    except OSError as e:
        raise OutputError(out, e.strerror or str(e))
    logger.info(f"Wrote {len(df)} rows to {out}")


#
# Commands
#


def cmd_solve(eps: float, M: float, method: Method, precision: int, order: int):
    orbit = kepler.make_orbit(eps)
    anomaly = kepler.mean_anomaly(M)
    level = integral_rep.precision_level(precision)

    match method:
        case Method.oracle:
            psi = kepler.solve_kepler_oracle(orbit, anomaly).psi
        case Method.integral:
            psi = anomaly.M + integral_rep.s_integral(orbit, anomaly, precision)
        case Method.series:
            psi = anomaly.M + accel.kapteyn_s_series(orbit, anomaly, tol=level["tol_abs"]).imag
        case Method.weniger | Method.wynn:
            psi = anomaly.M + accel.resum_s(orbit, anomaly, order, method).imag

    print(f"psi = {psi:.17g}")
    print(f"S = {psi - anomaly.M:.17g}")
    print(f"residual = {kepler.kepler_residual(orbit, anomaly, psi):.3e}")
    if method != Method.oracle:
        ref = reference_psi(orbit.eps, anomaly.M)
        record = SweepRecord.build(eps, anomaly.M, method, precision, psi, ref)
        print(f"oracle_psi = {ref:.17g}")
        print(f"rel_error = {record.rel_error:.3e}")


def cmd_sweep(
    eps: float,
    M_min: float,
    M_max: float,
    n_points: int,
    methods: list[Method],
    precisions: list[int],
    orders: list[int],
    out_csv: str | None,
    svg: str | None = None,
    max_workers: int = config.MAX_WORKERS,
) -> list[SweepRecord]:
    kepler.make_orbit(eps)
    if not 0.0 < M_min < M_max < TWO_PI:
        raise DomainError("M range", (M_min, M_max), "0 < M_min < M_max < 2pi")
    if n_points < 2:
        raise DomainError("n_points", n_points, "n_points >= 2")
    for p in precisions:
        integral_rep.precision_level(p)
    for k in orders:
        if k < 1:
            raise DomainError("order", k, "order >= 1")

    tasks = build_sweep_tasks(eps, M_min, M_max, n_points, methods, precisions, orders)
    with Timer() as timer:
        records = dispatch_sweep(tasks, max_workers=max_workers)
    logger.info(f"Sweep of {len(records)} rows took {timer.execution_time:.2f}s")

    df = pd.DataFrame([r.model_dump(mode="json") for r in records], columns=list(SweepRecord.model_fields))
    _write_csv(df, out_csv)
    if svg:
        write_error_plot(records, svg)
    return records


def cmd_resum(eps: float, z_mod: float, z_arg: float, orders: list[int], beta: float = config.WENIGER_BETA):
    if not orders or orders != sorted(orders) or orders[0] < 1 or orders[-1] > 200:
        raise DomainError("orders", orders, "ascending orders in [1, 200]")
    if z_mod < 0.0:
        raise DomainError("z_mod", z_mod, "z_mod >= 0")
    orbit = kepler.make_orbit(eps)
    z = z_mod * cmath.exp(1j * z_arg)

    continued = integral_rep.kapteyn_continuation(z, orbit)
    rows = [accel.table_row_index(k) for k in orders]
    sums = accel.kapteyn_partial_sums(z, orbit, accel.sums_needed(rows[-1] + 1, Method.weniger))
    table = accel.weniger_delta(sums, beta)

    print(f"eps = {eps:g}, z = {format_complex(z)}, beta = {beta:g}")
    print(f"{'order':>5}  {'partial sum':<32}  weniger delta")
    for k, j in zip(orders, rows):
        estimate = table.order(j + 1)
        shown = format_complex(estimate) if estimate is not None else "breakdown"
        print(f"{k:>5}  {format_complex_scaled(sums.sums[j]):<32}  {shown}")
    print(f"integral: {format_complex(continued.value)} (quadrature error {continued.quadrature_error:.1e})")


def cmd_verify(level: str) -> int:
    if level not in ("quick", "full"):
        raise DomainError("level", level, "quick or full")
    outcomes = suite_registry.run_level(level)
    for outcome in outcomes:
        print(outcome.to_line(), flush=True)

    failed = [o.name for o in outcomes if not o.passed]
    if failed:
        print(f"failed={','.join(failed)}")
        return 1
    return 0


def cmd_theta(chis: list[float], n_points: int, out_csv: str | None):
    if n_points < 2:
        raise DomainError("n_points", n_points, "n_points >= 2")
    t = np.linspace(0.0, 1.0, n_points)
    frames = []
    for chi in chis:
        if not 0.0 <= chi <= 1.0:
            raise DomainError("chi", chi, "0 <= chi <= 1")
        orbit = kepler.make_orbit(math.sqrt((1.0 - chi) * (1.0 + chi)))
        theta = stieltjes.theta_of_t_array(t, orbit)
        frames.append(pd.DataFrame({"chi": chi, "t": t, "theta": theta, "rho": 2.0 * theta / math.pi}))
    _write_csv(pd.concat(frames, ignore_index=True), out_csv)


#
# Entry point
#


def run(args) -> int:
    if args["solve"]:
        cmd_solve(
            _to_float("eps", args["--eps"]),
            _to_float("M", args["--M"]),
            _to_method(args["--method"]),
            int(_to_float("precision", args["--precision"])),
            int(_to_float("order", args["--order"])),
        )
    elif args["sweep"]:
        max_workers = args["--max-workers"]
        cmd_sweep(
            _to_float("eps", args["--eps"]),
            _to_float("M_min", args["--M-min"]),
            _to_float("M_max", args["--M-max"]),
            int(_to_float("n_points", args["--n-points"])),
            [_to_method(m) for m in _to_list("methods", args["--methods"], str)],
            _to_list("precisions", args["--precisions"], int),
            _to_list("orders", args["--orders"], int),
            args["--out"],
            svg=args["--svg"],
            max_workers=int(max_workers) if max_workers else config.MAX_WORKERS,
        )
    elif args["resum"]:
        cmd_resum(
            _to_float("eps", args["--eps"]),
            _to_float("z_mod", args["--z-mod"]),
            _to_float("z_arg", args["--z-arg"]),
            _to_list("orders", args["--orders"], int),
            _to_float("beta", args["--beta"]),
        )
    elif args["verify"]:
        return cmd_verify(args["--level"])
    elif args["theta"]:
        cmd_theta(
            _to_list("chis", args["--chis"]),
            int(_to_float("n_points", args["--n-points"] or "101")),
            args["--out"],
        )
    return 0


def main(argv=None) -> int:
    args = docopt(__doc__, argv=argv, version=f"{config.APP_NAME} {config.APP_VERSION}")
    try:
        return run(args)
    except KeplerStieltjesError as e:
        logger.debug("Command failed", exc_info=True)
        print(f"error: {e.message}", file=sys.stderr)
        return e.to_exit_code()


if __name__ == "__main__":
    sys.exit(main())
