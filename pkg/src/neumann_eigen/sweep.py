"""Sweep over ``rho``: thresholds, eigenpairs of both signs, bound curves, output files."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any

import numpy as np

from .grid import Grid, make_grid
from .kernel import KernelMatrix, KernelSpec, assemble
from .localization import (
    Thresholds,
    bound_curve,
    compute_rho_threshold,
    localize,
    numeric_rho_threshold,
)
from .problem import ProblemSpec, get_preset
from .solver import (
    EigenpairApprox,
    NumericalFailureError,
    SolverBreakdownError,
    SolverConfig,
    bvp_residual,
    fixed_point_solve,
)

__all__ = [
    "SweepConfig",
    "SweepRow",
    "SweepResult",
    "Setup",
    "build_setup",
    "solve_one",
    "run_sweep",
    "emit_outputs",
    "emit_bounds",
    "bounds_only",
    "summary_dict",
    "write_profile",
    "CSV_COLUMNS",
]

log = logging.getLogger(__name__)

CSV_COLUMNS = [
    "rho", "lambda_plus", "err_plus", "converged_plus",
    "lambda_minus", "err_minus", "converged_minus",
    "bound", "bvp_residual_plus", "bvp_residual_minus",
]
DEFAULT_RHO_MAX = {-1: 0.25, 1: 0.75}


@dataclass(frozen=True)
class SweepConfig:
    problem: str = "example-minus"
    eps: int | None = None
    omega: float | None = None
    n_grid: int = 1000
    tol: float = 1e-7
    max_iter: int = 1000
    rho_min: float = 5e-3
    rho_max: float | None = None
    rho_count: int = 15
    bound_curve_count: int = 1000
    fmt: str = "csv"
    out_dir: str | None = None
    profiles: bool = False
    workers: int | None = None

    def __post_init__(self):
        if self.fmt not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.fmt!r}")
        if not self.rho_min > 0:
            raise ValueError("rho_min must be positive")
        if self.rho_count < 1 or self.bound_curve_count < 1:
            raise ValueError("counts must be >= 1")
        if self.rho_max is not None:
            if self.rho_max < self.rho_min or (self.rho_max == self.rho_min and self.rho_count > 1):
                raise ValueError("rho_min must be below rho_max")


@dataclass
class SweepRow:
    rho: float
    lambda_plus: float | None
    err_plus: float | None
    converged_plus: bool
    lambda_minus: float | None
    err_minus: float | None
    converged_minus: bool
    bound: float | None
    bvp_residual_plus: float | None
    bvp_residual_minus: float | None
    u_plus: np.ndarray | None = field(default=None, repr=False)
    u_minus: np.ndarray | None = field(default=None, repr=False)


@dataclass
class SweepResult:
    rows: list[SweepRow]
    thresholds: Thresholds
    bound_rhos: np.ndarray
    bound_values: np.ndarray
    grid: Grid
    config: SweepConfig
    kernel_spec: KernelSpec


@dataclass(frozen=True, eq=False)
class Setup:
    """Problem, grid and assembled kernel shared by every row of a sweep."""

    problem: ProblemSpec
    spec: KernelSpec
    grid: Grid
    kernel: KernelMatrix
    thresholds: Thresholds


def _kernel_spec(problem: ProblemSpec, eps: int | None, omega: float | None) -> KernelSpec:
    base = problem.kernel
    if eps is None and base is None:
        raise ValueError(f"problem {problem.name!r} has no default kernel; pass eps and omega")
    e = eps if eps is not None else base.eps
    if omega is not None:
        w = omega
    elif base is not None and base.eps == e:
        w = base.omega
    else:
        w = 1.0 if e == -1 else math.pi / 2
    return KernelSpec(e, w)


def _thresholds(problem: ProblemSpec, spec: KernelSpec, kernel: KernelMatrix) -> Thresholds:
    if (problem.analytic_eps is not None and problem.kernel == spec
            and problem.analytic_eps == spec.eps):
        return compute_rho_threshold(spec.eps)
    return Thresholds(rho1=None, rho2=None, rho0=numeric_rho_threshold(problem, kernel))


def build_setup(problem: str | ProblemSpec, n_grid: int = 1000, eps: int | None = None,
                omega: float | None = None) -> Setup:
    prob = get_preset(problem) if isinstance(problem, str) else problem
    spec = _kernel_spec(prob, eps, omega)
    grid = make_grid(n_grid, prob.breakpoints)
    kernel = assemble(spec, grid)
    return Setup(prob, spec, grid, kernel, _thresholds(prob, spec, kernel))


def solve_one(setup: Setup, rho: float, sign: int, tol: float = 1e-7,
              max_iter: int = 1000) -> tuple[EigenpairApprox, Any]:
    """Single eigenpair at ``rho`` with its localization report."""
    env = setup.problem.envelope(rho)
    report = localize(rho, env, setup.kernel, setup.grid, setup.thresholds)
    max_lower = float(report.f_lower_curve.max())
    pair = fixed_point_solve(rho, SolverConfig(tol=tol, max_iter=max_iter, sign=sign),
                             setup.problem, setup.kernel, setup.grid, max_lower=max_lower)
    res = bvp_residual(pair, setup.spec, setup.problem, setup.grid)
    pair = replace(pair, bvp_residual=res.residual)
    return pair, report


def _row(setup: Setup, rho: float, tol: float, max_iter: int) -> SweepRow:
    env = setup.problem.envelope(rho)
    report = localize(rho, env, setup.kernel, setup.grid, setup.thresholds)
    max_lower = float(report.f_lower_curve.max())
    out: dict[str, Any] = {}
    for sign, tag in ((1, "plus"), (-1, "minus")):
        try:
            pair = fixed_point_solve(rho, SolverConfig(tol=tol, max_iter=max_iter, sign=sign),
                                     setup.problem, setup.kernel, setup.grid,
                                     max_lower=max_lower)
        except (SolverBreakdownError, NumericalFailureError) as exc:
            log.warning("rho=%g sign=%+d failed: %s", rho, sign, exc)
            out.update({f"lambda_{tag}": None, f"err_{tag}": None, f"converged_{tag}": False,
                        f"bvp_residual_{tag}": None, f"u_{tag}": None})
            continue
        res = bvp_residual(pair, setup.spec, setup.problem, setup.grid)
        out.update({f"lambda_{tag}": pair.lam, f"err_{tag}": pair.consistency_error,
                    f"converged_{tag}": pair.converged,
                    f"bvp_residual_{tag}": res.residual, f"u_{tag}": pair.u})
    return SweepRow(rho=rho, bound=report.bound, **out)


def run_sweep(config: SweepConfig, setup: Setup | None = None) -> SweepResult:
    """Compute thresholds, both eigenpairs at every ``rho`` and the bound curve."""
    if setup is None:
        setup = build_setup(config.problem, config.n_grid, config.eps, config.omega)
    rho_max = config.rho_max if config.rho_max is not None else DEFAULT_RHO_MAX[setup.spec.eps]
    if config.rho_count == 1:
        rhos = [float(config.rho_min)]
    else:
        if not rho_max > config.rho_min:
            raise ValueError("rho_min must be below rho_max")
        rhos = [float(r) for r in np.linspace(config.rho_min, rho_max, config.rho_count)]

    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        rows = list(pool.map(lambda r: _row(setup, r, config.tol, config.max_iter), rhos))

    return bounds_only(setup, config, rows)


def bounds_only(setup: Setup, config: SweepConfig, rows: list[SweepRow] | None = None) -> SweepResult:
    """Bound curve ``rho / max F_lower`` on points strictly inside ``(0, rho0)``."""
    bound_rhos = np.linspace(0.0, setup.thresholds.rho0, config.bound_curve_count + 2)[1:-1]
    bound_vals = bound_curve(setup.problem, setup.kernel, bound_rhos)
    return SweepResult(rows=rows or [], thresholds=setup.thresholds, bound_rhos=bound_rhos,
                       bound_values=bound_vals, grid=setup.grid, config=config,
                       kernel_spec=setup.spec)


# -- output ----------------------------------------------------------------


def _fmt(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    x = float(value)
    return "" if math.isnan(x) else repr(x)


def _jsonable(value: Any) -> Any:
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    x = float(value)
    return None if math.isnan(x) else x


def _write(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _csv_text(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _json_text(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def summary_dict(result: SweepResult) -> dict[str, Any]:
    th = result.thresholds
    return {
        "problem": result.config.problem,
        "eps": result.kernel_spec.eps,
        "omega": result.kernel_spec.omega,
        "n_grid": result.grid.n,
        "rho1": th.rho1,
        "rho2": th.rho2,
        "rho0": th.rho0,
    }


def _config_dict(config: SweepConfig) -> dict[str, Any]:
    d = asdict(config)
    d.pop("out_dir")
    d.pop("workers")
    return d


def write_profile(path: Path, t, u, fmt: str = "csv", meta: dict | None = None) -> Path:
    if fmt == "csv":
        _write(path, _csv_text(["t", "u"], zip(t, u)))
    else:
        payload = {k: _jsonable(v) for k, v in (meta or {}).items()}
        payload["t"] = [float(x) for x in t]
        payload["u"] = [float(x) for x in u]
        _write(path, _json_text(payload))
    return path


def emit_bounds(result: SweepResult, out_dir: str | Path, fmt: str = "csv") -> list[Path]:
    out = Path(out_dir)
    pairs = [(r, v, -v) for r, v in zip(result.bound_rhos, result.bound_values)]
    written = []
    if fmt == "csv":
        path = out / "bound_curve.csv"
        _write(path, _csv_text(["rho", "bound", "neg_bound"], pairs))
    else:
        path = out / "bound_curve.json"
        _write(path, _json_text([{"rho": _jsonable(r), "bound": _jsonable(b),
                                  "neg_bound": _jsonable(n)} for r, b, n in pairs]))
    written.append(path)
    path = out / "summary.json"
    _write(path, _json_text(summary_dict(result)))
    written.append(path)
    return written


def emit_outputs(result: SweepResult, out_dir: str | Path | None = None) -> list[Path]:
    """Write the results table, bound curve, summary, config echo and optional profiles."""
    config = result.config
    if not result.rows:
        raise ValueError("no rows to write")
    out = Path(out_dir if out_dir is not None else (config.out_dir or "."))
    table = [[getattr(row, c) for c in CSV_COLUMNS] for row in result.rows]
    written = []
    if config.fmt == "csv":
        path = out / "results.csv"
        _write(path, _csv_text(CSV_COLUMNS, table))
    else:
        path = out / "results.json"
        _write(path, _json_text({
            "summary": summary_dict(result),
            "rows": [{c: _jsonable(v) for c, v in zip(CSV_COLUMNS, vals)} for vals in table],
        }))
    written.append(path)
    written += emit_bounds(result, out, config.fmt)

    if config.profiles:
        t = result.grid.nodes
        for i, row in enumerate(result.rows):
            cols = [t]
            for u in (row.u_plus, row.u_minus):
                cols.append(u if u is not None else np.full_like(t, np.nan))
            path = out / "profiles" / f"profile_{i:03d}.csv"
            _write(path, _csv_text(["t", "u_plus", "u_minus"], zip(*cols)))
            written.append(path)

    path = out / "config.json"
    _write(path, _json_text(_config_dict(config)))
    written.append(path)
    return written
