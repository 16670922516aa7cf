"""Right-hand sides ``f(t, u, H[u])`` with a functional term, and the operator T.

The bundled presets use

    f(t, u, v) = sin(3*pi*t/2) * exp(u) / v,    H[u] = int_0^1 exp(u(x)) dx,

paired with the ``eps = -1, omega = 1`` and ``eps = +1, omega = pi/2`` kernels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .grid import Grid, integrate
from .kernel import KernelMatrix, KernelSpec

__all__ = [
    "EnvelopeBounds",
    "ProblemSpec",
    "eval_functional",
    "eval_nonlinearity",
    "apply_hammerstein",
    "PRESETS",
    "get_preset",
    "example_minus",
    "example_plus",
]

SIGN_CHANGE = 2.0 / 3.0
FREQ = 1.5 * math.pi


@dataclass(frozen=True)
class EnvelopeBounds:
    """Bounds of ``f`` and ``H`` over the box ``[0,1] x [-rho,rho] x [h_lower,h_upper]``."""

    rho: float
    f_lower: Callable[[np.ndarray], np.ndarray]
    f_upper: Callable[[np.ndarray], np.ndarray]
    h_lower: float
    h_upper: float

    def __post_init__(self):
        if not self.rho > 0:
            raise ValueError(f"rho must be positive, got {self.rho!r}")
        if self.h_lower > self.h_upper:
            raise ValueError("h_lower exceeds h_upper")


@dataclass(frozen=True)
class ProblemSpec:
    """A Hammerstein right-hand side with its envelope family.

    ``nonlinearity(t, u, v)`` must accept numpy arrays for ``t`` and ``u``.
    ``functional(u, grid)`` returns the scalar ``H[u]``; it is the caller's job
    to make it continuous on the closed ball, and to supply envelopes that
    really bound ``f`` (nothing here derives them).
    """

    nonlinearity: Callable[[np.ndarray, np.ndarray, float], np.ndarray]
    functional: Callable[[np.ndarray, Grid], float]
    envelope: Callable[[float], EnvelopeBounds]
    description: str = ""
    kernel: KernelSpec | None = None
    breakpoints: tuple[float, ...] = ()
    # eps of the matching closed-form A, B, C, D curves, if any
    analytic_eps: int | None = None
    name: str = field(default="custom")


def eval_functional(problem: ProblemSpec, u, grid: Grid) -> float:
    u = np.asarray(u, dtype=float)
    if u.shape != grid.nodes.shape:
        raise ValueError(f"expected {grid.n} samples, got shape {u.shape}")
    return float(problem.functional(u, grid))


def eval_nonlinearity(problem: ProblemSpec, t, u_val, h_val: float):
    out = problem.nonlinearity(np.asarray(t, dtype=float), np.asarray(u_val, dtype=float), h_val)
    return float(out) if np.ndim(out) == 0 else out


def apply_hammerstein(problem: ProblemSpec, kernel: KernelMatrix, grid: Grid, u) -> np.ndarray:
    """``(Tu)(t_i) = sum_j w_j k(t_i, t_j) f(t_j, u_j, H[u])``, without the lambda factor."""
    if kernel.grid is not grid and not np.array_equal(kernel.grid.nodes, grid.nodes):
        raise ValueError("kernel was assembled on a different grid")
    u = np.asarray(u, dtype=float)
    h = eval_functional(problem, u, grid)
    f = problem.nonlinearity(grid.nodes, u, h)
    return kernel.smooth(f)


# -- bundled example -------------------------------------------------------


def _exp_integral(u: np.ndarray, grid: Grid) -> float:
    return integrate(grid, np.exp(u))


def _sine_exp_ratio(t, u, v):
    if v == 0:
        raise ZeroDivisionError("functional term H[u] is zero")
    return np.sin(FREQ * t) * np.exp(u) / v


def _sine_envelope(rho: float) -> EnvelopeBounds:
    # exp(u)/H[u] lies in [exp(-2 rho), exp(2 rho)]; the sine changes sign at 2/3.
    small, big = math.exp(-2 * rho), math.exp(2 * rho)

    def lower(t):
        t = np.asarray(t, dtype=float)
        return np.where(t <= SIGN_CHANGE, small, big) * np.sin(FREQ * t)

    def upper(t):
        t = np.asarray(t, dtype=float)
        return np.where(t <= SIGN_CHANGE, big, small) * np.sin(FREQ * t)

    return EnvelopeBounds(rho=rho, f_lower=lower, f_upper=upper,
                          h_lower=math.exp(-rho), h_upper=math.exp(rho))


def _sine_problem(name: str, kernel: KernelSpec, eps: int, description: str) -> ProblemSpec:
    return ProblemSpec(
        nonlinearity=_sine_exp_ratio,
        functional=_exp_integral,
        envelope=_sine_envelope,
        description=description,
        kernel=kernel,
        breakpoints=(SIGN_CHANGE,),
        analytic_eps=eps,
        name=name,
    )


def example_minus() -> ProblemSpec:
    return _sine_problem(
        "example-minus", KernelSpec(-1, 1.0), -1,
        "-u'' + u = lambda sin(3 pi t/2) e^u / int e^u, u'(0)=u'(1)=0",
    )


def example_plus() -> ProblemSpec:
    return _sine_problem(
        "example-plus", KernelSpec(1, math.pi / 2), 1,
        "u'' + (pi^2/4) u = lambda sin(3 pi t/2) e^u / int e^u, u'(0)=u'(1)=0",
    )


PRESETS: dict[str, Callable[[], ProblemSpec]] = {
    "example-minus": example_minus,
    "example-plus": example_plus,
}


def get_preset(name: str) -> ProblemSpec:
    try:
        return PRESETS[name]()
    except KeyError:
        raise ValueError(
            f"unknown problem {name!r}; choose from {', '.join(sorted(PRESETS))}"
        ) from None
