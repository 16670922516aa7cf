"""Green's functions of ``eps*u'' + omega**2*u = g`` with ``u'(0) = u'(1) = 0``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import Grid

__all__ = ["KernelSpec", "KernelMatrix", "kernel_value", "assemble"]


@dataclass(frozen=True)
class KernelSpec:
    """Sign ``eps`` of the second-derivative term and frequency ``omega``.

    For ``eps = +1`` only ``0 < omega <= pi/2`` is accepted; beyond that the
    kernel takes negative values.
    """

    eps: int
    omega: float

    def __post_init__(self):
        if self.eps not in (-1, 1):
            raise ValueError(f"eps must be +1 or -1, got {self.eps!r}")
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ValueError(f"omega must be positive, got {self.omega!r}")
        if self.eps == 1 and self.omega > math.pi / 2:
            raise ValueError(
                f"omega={self.omega!r} exceeds pi/2; the eps=+1 kernel is not non-negative there"
            )


def _evaluate(spec: KernelSpec, t, s):
    lo = np.minimum(t, s)
    hi = np.maximum(t, s)
    w = spec.omega
    if spec.eps == -1:
        return np.cosh(w * (1.0 - hi)) * np.cosh(w * lo) / (w * math.sinh(w))
    return np.cos(w * (1.0 - hi)) * np.cos(w * lo) / (w * math.sin(w))


def kernel_value(spec: KernelSpec, t: float, s: float) -> float:
    for name, x in (("t", t), ("s", s)):
        if not 0.0 <= x <= 1.0:
            raise ValueError(f"{name}={x!r} is outside [0, 1]")
    return float(_evaluate(spec, float(t), float(s)))


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    """Dense samples ``G[i, j] = k(t_i, t_j)`` on a grid."""

    spec: KernelSpec
    grid: Grid
    entries: np.ndarray

    def row_integrals(self) -> np.ndarray:
        return self.entries @ self.grid.weights

    def smooth(self, samples) -> np.ndarray:
        """Nyström image ``t_i -> sum_j w_j k(t_i, t_j) g_j`` of node samples."""
        return self.entries @ (self.grid.weights * np.asarray(samples, dtype=float))

    def smooth_at(self, t, samples) -> np.ndarray:
        """Nyström interpolant of :meth:`smooth` at arbitrary points of [0, 1]."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        if np.any((t < 0) | (t > 1)):
            raise ValueError("evaluation points must lie in [0, 1]")
        rows = _evaluate(self.spec, t[:, None], self.grid.nodes[None, :])
        return rows @ (self.grid.weights * np.asarray(samples, dtype=float))


def assemble(spec: KernelSpec, grid: Grid) -> KernelMatrix:
    t = grid.nodes
    entries = _evaluate(spec, t[:, None], t[None, :])
    entries.setflags(write=False)
    return KernelMatrix(spec=spec, grid=grid, entries=entries)
