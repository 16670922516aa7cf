"""Normalized fixed-point iteration for eigenpairs with prescribed sup-norm.

Starting from ``(u0, lambda0)`` the iteration

    w       = T u_n
    lam_n+1 = sign * rho / ||w||_inf
    u_n+1   = lam_n+1 * w

keeps ``||u_n||_inf = rho`` for every ``n >= 1``. It stops when
``||u_n+1 - u_n||_inf + |lam_n+1 - lam_n| < tol``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .grid import Grid
from .kernel import KernelMatrix, KernelSpec
from .problem import ProblemSpec, apply_hammerstein, eval_functional

__all__ = [
    "SolverBreakdownError",
    "NumericalFailureError",
    "SolverConfig",
    "EigenpairApprox",
    "BVPResidual",
    "fixed_point_solve",
    "consistency_error",
    "bvp_residual",
]

log = logging.getLogger(__name__)


class SolverBreakdownError(ArithmeticError):
    """``||T u_n||_inf`` vanished, so the normalization is undefined."""


class NumericalFailureError(FloatingPointError):
    """An iterate became non-finite."""


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-7
    max_iter: int = 1000
    sign: int = 1
    initial_u: np.ndarray | None = None
    initial_lambda: float | None = None

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol!r}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter!r}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")
        if self.initial_lambda is not None and np.sign(self.initial_lambda) != self.sign:
            raise ValueError("initial_lambda must have the requested sign")

    @property
    def lambda0(self) -> float:
        return float(self.sign) if self.initial_lambda is None else float(self.initial_lambda)


@dataclass(frozen=True, eq=False)
class EigenpairApprox:
    rho: float
    lam: float
    u: np.ndarray
    iterations: int
    converged: bool
    consistency_error: float
    bvp_residual: float | None = None
    c_rho: float | None = None
    history: list[float] = field(default_factory=list, repr=False)


def _sup(x: np.ndarray) -> float:
    return float(np.max(np.abs(x)))


def fixed_point_solve(rho: float, config: SolverConfig, problem: ProblemSpec,
                      kernel: KernelMatrix, grid: Grid,
                      max_lower: float | None = None) -> EigenpairApprox:
    """Run the iteration at norm ``rho``.

    Hitting ``max_iter`` is not an error; the result carries
    ``converged=False``. ``max_lower`` (``max F_lower`` at ``rho``), when given,
    is only used to report the iterate bound ``c_rho``.
    """
    if not rho > 0:
        raise ValueError(f"rho must be positive, got {rho!r}")
    if config.initial_u is None:
        u = np.full(grid.n, float(rho))
    else:
        u = np.array(config.initial_u, dtype=float)
        if u.shape != grid.nodes.shape:
            raise ValueError(f"initial_u needs {grid.n} samples, got shape {u.shape}")
    lam = config.lambda0
    history = [lam]
    converged = False
    it = 0
    for it in range(1, config.max_iter + 1):
        w = apply_hammerstein(problem, kernel, grid, u)
        norm = _sup(w)
        if not math.isfinite(norm):
            raise NumericalFailureError(f"non-finite T u at iteration {it} (rho={rho})")
        if norm == 0.0:
            raise SolverBreakdownError(f"||T u|| = 0 at iteration {it} (rho={rho})")
        lam_new = config.sign * rho / norm
        u_new = lam_new * w
        step = _sup(u_new - u) + abs(lam_new - lam)
        u, lam = u_new, lam_new
        history.append(lam)
        if step < config.tol:
            converged = True
            break
    else:
        log.info("no convergence after %d iterations at rho=%g sign=%+d",
                 config.max_iter, rho, config.sign)

    c_rho = None
    if max_lower is not None and max_lower > 0:
        c_rho = max(abs(config.lambda0), rho / max_lower)
    err = _sup(u - lam * apply_hammerstein(problem, kernel, grid, u))
    return EigenpairApprox(rho=rho, lam=lam, u=u, iterations=it, converged=converged,
                           consistency_error=err, c_rho=c_rho, history=history)


def consistency_error(pair: EigenpairApprox, problem: ProblemSpec,
                      kernel: KernelMatrix, grid: Grid) -> float:
    """Fixed-point defect ``||u - lambda T u||_inf``."""
    return _sup(pair.u - pair.lam * apply_hammerstein(problem, kernel, grid, pair.u))


@dataclass(frozen=True)
class BVPResidual:
    residual: float
    slope_left: float
    slope_right: float


def bvp_residual(pair: EigenpairApprox, spec: KernelSpec, problem: ProblemSpec,
                 grid: Grid) -> BVPResidual:
    """Check ``eps u'' + omega^2 u = lambda f(t, u, H[u])`` by central differences.

    Nodes at and next to breakpoints are skipped. The one-sided slopes at both
    ends estimate ``u'(0)`` and ``u'(1)``.
    """
    if grid.n < 5:
        raise ValueError("need at least 5 nodes for the residual check")
    t, u = grid.nodes, np.asarray(pair.u, dtype=float)
    h = np.diff(t)
    f = problem.nonlinearity(t, u, eval_functional(problem, u, grid))
    skip = set()
    for k in grid.breakpoint_indices():
        skip.update((k - 1, k, k + 1))
    idx = np.array([i for i in range(1, grid.n - 1) if i not in skip])
    hl, hr = h[idx - 1], h[idx]
    upp = 2.0 * (hl * u[idx + 1] - (hl + hr) * u[idx] + hr * u[idx - 1]) / (hl * hr * (hl + hr))
    res = spec.eps * upp + spec.omega ** 2 * u[idx] - pair.lam * f[idx]
    return BVPResidual(
        residual=_sup(res),
        slope_left=abs(u[1] - u[0]) / h[0],
        slope_right=abs(u[-1] - u[-2]) / h[-1],
    )
