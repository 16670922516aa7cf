"""Envelope transforms, admissibility thresholds and eigenvalue bounds.

For an envelope pair ``f_lower <= f <= f_upper`` the transforms

    F_lower(t) = int_0^1 k(t, s) f_lower(s) ds,   F_upper likewise,

decide whether an eigenpair with ``||u|| = rho`` is guaranteed: if
``max F_lower > 0`` every such eigenvalue obeys ``|lambda| <= rho / max F_lower``
(condition "5b"); if ``min F_upper < 0`` it obeys ``|lambda| <= -rho / min F_upper``
(condition "5a").
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .golden import golden_max
from .grid import Grid
from .kernel import KernelMatrix
from .problem import SIGN_CHANGE, EnvelopeBounds, ProblemSpec

__all__ = [
    "ThresholdUndefinedError",
    "LocalizationReport",
    "Thresholds",
    "envelope_transforms",
    "analytic_ABCD",
    "analytic_lower_transform",
    "compute_rho_threshold",
    "numeric_rho_threshold",
    "localize",
    "bound_curve",
]

COND_LOWER = "5b"
COND_UPPER = "5a"
COND_NONE = "none"


class ThresholdUndefinedError(ValueError):
    """The ratio defining a threshold is non-positive on its whole interval."""


@dataclass(frozen=True)
class Thresholds:
    """``rho0 = max(rho1, rho2)``; a branch is ``None`` when its ratio never turns positive."""

    rho1: float | None
    rho2: float | None
    rho0: float
    argmax1: float | None = None
    argmax2: float | None = None


@dataclass(frozen=True, eq=False)
class LocalizationReport:
    rho: float
    active_condition: str
    t_extremal: float | None
    extremal_value: float | None
    bound: float | None
    f_lower_curve: np.ndarray
    f_upper_curve: np.ndarray
    rho1: float | None = None
    rho2: float | None = None
    rho0: float | None = None


def envelope_transforms(envelope: EnvelopeBounds, kernel: KernelMatrix,
                        grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    t = grid.nodes
    lower = kernel.smooth(envelope.f_lower(t))
    upper = kernel.smooth(envelope.f_upper(t))
    return lower, upper


def analytic_ABCD(eps: int, t):
    """Closed-form integrals of ``k(t, s) sin(3 pi s / 2)`` for the bundled kernels.

    A and B are the pieces over ``s`` in [0, 2/3] and [2/3, 1] for ``t <= 2/3``;
    C and D are the same pieces for ``t >= 2/3``. ``eps = -1`` means
    ``omega = 1``, ``eps = +1`` means ``omega = pi/2``.
    """
    t = np.asarray(t, dtype=float)
    if eps == -1:
        b = 1.5 * math.pi
        q = 1.0 / ((1.0 + b * b) * math.sinh(1.0))
        ch13, ch23 = math.cosh(1.0 / 3.0), math.cosh(2.0 / 3.0)
        A = q * np.sin(b * t) * math.sinh(1.0) + q * b * (np.cosh(1.0 - t) + ch13 * np.cosh(t))
        B = -q * b * ch13 * np.cosh(t)
        C = q * b * (ch23 + 1.0) * np.cosh(1.0 - t)
        D = q * (math.sinh(1.0) * np.sin(b * t) - b * ch23 * np.cosh(1.0 - t))
    elif eps == 1:
        s = np.sin(0.5 * math.pi * t)
        c = np.cos(0.5 * math.pi * t)
        p = 4.0 * math.pi ** 2
        r3 = 3.0 * math.sqrt(3.0)
        A = (8.0 * s ** 3 + r3 * c) / p
        B = -r3 * c / p
        C = 9.0 * s / p
        D = -s * (9.0 - 8.0 * s * s) / p
    else:
        raise ValueError(f"eps must be +1 or -1, got {eps!r}")
    return A, B, C, D


def analytic_lower_transform(eps: int, rho: float, t, upper: bool = False):
    """``F_lower`` (or ``F_upper``) of the bundled examples from the closed forms."""
    t = np.asarray(t, dtype=float)
    A, B, C, D = analytic_ABCD(eps, t)
    a, b = math.exp(-2 * rho), math.exp(2 * rho)
    if upper:
        a, b = b, a
    return np.where(t <= SIGN_CHANGE, a * A + b * B, a * C + b * D)


def _branch_threshold(ratio: Callable, lo: float, hi: float, points: int) -> tuple[float, float]:
    ts = np.linspace(lo, hi, points)
    vals = ratio(ts)
    k = int(np.flatnonzero(vals == vals.max())[-1])
    a, b = ts[max(k - 1, 0)], ts[min(k + 1, points - 1)]
    t_best, best = golden_max(lambda x: float(ratio(np.array(x))), a, b)
    if vals[k] > best:
        t_best, best = float(ts[k]), float(vals[k])
    if not best > 0:
        raise ThresholdUndefinedError(
            f"ratio is non-positive on [{lo:.6g}, {hi:.6g}]; threshold undefined"
        )
    return 0.25 * math.log(best), float(t_best)


def compute_rho_threshold(eps: int, search_points: int = 2000) -> Thresholds:
    """Largest ``rho`` for which the bundled example's ``F_lower`` has a positive maximum.

    ``rho1 = log(max_[0,2/3] -A/B) / 4`` and ``rho2 = log(max_[2/3,1] -C/D) / 4``,
    each maximum located by dense sampling and then golden-section refinement.
    """
    if search_points < 100:
        raise ValueError("search_points must be at least 100")

    def ratio_ab(t):
        A, B, _, _ = analytic_ABCD(eps, t)
        return -A / B

    def ratio_cd(t):
        _, _, C, D = analytic_ABCD(eps, t)
        return -C / D

    found = []
    errors = []
    for ratio, lo, hi in ((ratio_ab, 0.0, SIGN_CHANGE), (ratio_cd, SIGN_CHANGE, 1.0)):
        try:
            found.append(_branch_threshold(ratio, lo, hi, search_points))
        except ThresholdUndefinedError as exc:
            found.append((None, None))
            errors.append(exc)
    if len(errors) == 2:
        raise ThresholdUndefinedError("both branches undefined")
    (rho1, t1), (rho2, t2) = found
    rho0 = max(r for r in (rho1, rho2) if r is not None)
    return Thresholds(rho1=rho1, rho2=rho2, rho0=rho0, argmax1=t1, argmax2=t2)


def _max_lower(problem: ProblemSpec, kernel: KernelMatrix, rho: float) -> float:
    env = problem.envelope(rho)
    return float(kernel.smooth(env.f_lower(kernel.grid.nodes)).max())


def numeric_rho_threshold(problem: ProblemSpec, kernel: KernelMatrix,
                          tol: float = 1e-12, rho_cap: float = 64.0) -> float:
    """Supremum of ``rho`` with ``max F_lower > 0``, by bisection on the grid transforms.

    Assumes ``max F_lower`` is decreasing in ``rho`` (nested envelopes).
    """
    lo = tol
    if _max_lower(problem, kernel, lo) <= 0:
        raise ThresholdUndefinedError("max F_lower is non-positive already for rho -> 0")
    hi = 1.0
    while _max_lower(problem, kernel, hi) > 0:
        lo, hi = hi, 2 * hi
        if hi > rho_cap:
            raise ThresholdUndefinedError(f"max F_lower stays positive up to rho={rho_cap}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _max_lower(problem, kernel, mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _refine(kernel: KernelMatrix, samples: np.ndarray, curve: np.ndarray,
            k: int, sign: float) -> tuple[float, float]:
    # Golden-section between the neighbours of node k on the Nyström interpolant.
    t = kernel.grid.nodes
    a, b = t[max(k - 1, 0)], t[min(k + 1, t.size - 1)]
    x, val = golden_max(lambda s: sign * float(kernel.smooth_at(s, samples)[0]), a, b)
    if sign * curve[k] >= val:
        return float(t[k]), float(curve[k])
    return float(x), sign * val


def localize(rho: float, envelope: EnvelopeBounds, kernel: KernelMatrix, grid: Grid,
             thresholds: Thresholds | None = None) -> LocalizationReport:
    """Decide which sign condition holds at ``rho`` and evaluate the eigenvalue bound."""
    if not rho > 0:
        raise ValueError(f"rho must be positive, got {rho!r}")
    t = grid.nodes
    low_samples = envelope.f_lower(t)
    up_samples = envelope.f_upper(t)
    lower = kernel.smooth(low_samples)
    upper = kernel.smooth(up_samples)

    cond, t_ext, value, bound = COND_NONE, None, None, None
    if lower.max() > 0:
        # last index on ties: prefer t = 1 over t = 0
        k = int(np.flatnonzero(lower == lower.max())[-1])
        t_ext, value = _refine(kernel, low_samples, lower, k, 1.0)
        cond, bound = COND_LOWER, rho / value
    elif upper.min() < 0:
        k = int(np.flatnonzero(upper == upper.min())[-1])
        t_ext, value = _refine(kernel, up_samples, upper, k, -1.0)
        cond, bound = COND_UPPER, -rho / value

    th = thresholds
    return LocalizationReport(
        rho=rho, active_condition=cond, t_extremal=t_ext, extremal_value=value,
        bound=bound, f_lower_curve=lower, f_upper_curve=upper,
        rho1=th.rho1 if th else None, rho2=th.rho2 if th else None,
        rho0=th.rho0 if th else None,
    )


def bound_curve(problem: ProblemSpec, kernel: KernelMatrix,
                rhos: Sequence[float]) -> np.ndarray:
    """``rho / max F_lower`` at each ``rho`` (node maxima); NaN where the max is not positive."""
    rhos = np.asarray(rhos, dtype=float)
    nodes = kernel.grid.nodes
    env = np.column_stack([problem.envelope(r).f_lower(nodes) for r in rhos])
    curves = kernel.entries @ (kernel.grid.weights[:, None] * env)
    peak = curves.max(axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(peak > 0, rhos / peak, np.nan)
