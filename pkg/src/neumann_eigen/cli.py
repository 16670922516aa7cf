"""Command-line interface: ``bounds``, ``solve`` and ``sweep`` subcommands."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .problem import PRESETS
from .sweep import (
    SweepConfig,
    bounds_only,
    build_setup,
    emit_bounds,
    emit_outputs,
    run_sweep,
    solve_one,
    summary_dict,
    write_profile,
)

log = logging.getLogger("neumann_eigen")


def _sign(text: str) -> int:
    value = {"+": 1, "+1": 1, "1": 1, "plus": 1, "-": -1, "-1": -1, "minus": -1}.get(text)
    if value is None:
        raise argparse.ArgumentTypeError(f"sign must be + or -, got {text!r}")
    return value


def _eps(text: str) -> int:
    if text not in ("1", "+1", "-1"):
        raise argparse.ArgumentTypeError(f"eps must be +1 or -1, got {text!r}")
    return int(text)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", default="example-minus", choices=sorted(PRESETS))
    p.add_argument("--eps", type=_eps, default=None, help="override the preset's kernel sign")
    p.add_argument("--omega", type=float, default=None, help="override the kernel frequency")
    p.add_argument("--n-grid", type=int, default=1000)
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output directory")


def _solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--max-iter", type=int, default=1000)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="neumann-eigen",
        description="Eigenpairs of Neumann BVPs with a functional term, and their bounds.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="thresholds rho1, rho2, rho0 and the bound curve")
    _common(p)
    p.add_argument("--bound-curve-count", type=int, default=1000)

    p = sub.add_parser("solve", help="a single eigenpair and its profile")
    _common(p)
    _solver_flags(p)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--sign", type=_sign, default=1, help="+ or -")

    p = sub.add_parser("sweep", help="eigenvalues of both signs over a range of rho")
    _common(p)
    _solver_flags(p)
    p.add_argument("--rho-min", type=float, default=5e-3)
    p.add_argument("--rho-max", type=float, default=None)
    p.add_argument("--rho-count", type=int, default=15)
    p.add_argument("--bound-curve-count", type=int, default=1000)
    p.add_argument("--profiles", action="store_true", help="also write eigenfunction profiles")
    p.add_argument("--workers", type=int, default=None)
    return parser


def _fmt(x) -> str:
    return "n/a" if x is None else repr(float(x))


def _cmd_bounds(args) -> int:
    config = SweepConfig(problem=args.problem, eps=args.eps, omega=args.omega,
                         n_grid=args.n_grid, rho_count=1,
                         bound_curve_count=args.bound_curve_count, fmt=args.fmt)
    setup = build_setup(args.problem, args.n_grid, args.eps, args.omega)
    th = setup.thresholds
    print(f"problem = {args.problem}  eps = {setup.spec.eps:+d}  omega = {setup.spec.omega!r}")
    print(f"rho1 = {_fmt(th.rho1)}")
    print(f"rho2 = {_fmt(th.rho2)}")
    print(f"rho0 = {_fmt(th.rho0)}")
    if args.out:
        for path in emit_bounds(bounds_only(setup, config), args.out, args.fmt):
            log.info("wrote %s", path)
    return 0


def _cmd_solve(args) -> int:
    setup = build_setup(args.problem, args.n_grid, args.eps, args.omega)
    pair, report = solve_one(setup, args.rho, args.sign, args.tol, args.max_iter)
    print(f"rho = {pair.rho!r}  sign = {args.sign:+d}")
    print(f"lambda = {pair.lam!r}")
    print(f"iterations = {pair.iterations}  converged = {pair.converged}")
    print(f"consistency_error = {pair.consistency_error!r}")
    print(f"bvp_residual = {pair.bvp_residual!r}")
    print(f"condition = {report.active_condition}  bound = {_fmt(report.bound)}")
    if args.out:
        path = Path(args.out) / f"profile.{args.fmt}"
        meta = {"rho": pair.rho, "sign": args.sign, "lambda": pair.lam,
                "converged": pair.converged, "iterations": pair.iterations,
                "consistency_error": pair.consistency_error,
                "bvp_residual": pair.bvp_residual, "bound": report.bound}
        write_profile(path, setup.grid.nodes, pair.u, args.fmt, meta)
        log.info("wrote %s", path)
    return 0


def _cmd_sweep(args) -> int:
    config = SweepConfig(
        problem=args.problem, eps=args.eps, omega=args.omega, n_grid=args.n_grid,
        tol=args.tol, max_iter=args.max_iter, rho_min=args.rho_min, rho_max=args.rho_max,
        rho_count=args.rho_count, bound_curve_count=args.bound_curve_count,
        fmt=args.fmt, out_dir=args.out, profiles=args.profiles, workers=args.workers,
    )
    result = run_sweep(config)
    summary = summary_dict(result)
    print(f"rho0 = {_fmt(summary['rho0'])}")
    print(f"{'rho':>12} {'lambda+':>14} {'lambda-':>14} {'bound':>14}")
    for row in result.rows:
        print(f"{row.rho:12.6g} {_num(row.lambda_plus):>14} {_num(row.lambda_minus):>14}"
              f" {_num(row.bound):>14}")
    if args.out:
        for path in emit_outputs(result, args.out):
            log.info("wrote %s", path)
    return 0


def _num(x) -> str:
    return "-" if x is None else f"{x:.6g}"


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handlers = {"bounds": _cmd_bounds, "solve": _cmd_solve, "sweep": _cmd_sweep}
    try:
        return handlers[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
