"""Uniform grids on [0, 1] with composite trapezoidal weights.

Breakpoints split the interval into segments; each segment is partitioned
uniformly and the trapezoid rule is applied per segment, so integrands with a
kink at a breakpoint keep second-order accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = ["Grid", "make_grid", "integrate"]


@dataclass(frozen=True, eq=False)
class Grid:
    """Node set, trapezoid weights and the breakpoints forced onto the nodes."""

    nodes: np.ndarray
    weights: np.ndarray
    breakpoints: tuple[float, ...] = ()

    def __post_init__(self):
        for arr in (self.nodes, self.weights):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return self.nodes.size

    def __len__(self) -> int:
        return self.nodes.size

    def breakpoint_indices(self) -> list[int]:
        return [int(np.searchsorted(self.nodes, b)) for b in self.breakpoints]

    def segments(self) -> list[tuple[int, int]]:
        """Inclusive (first, last) node index pairs of the uniform segments."""
        cuts = [0, *self.breakpoint_indices(), self.n - 1]
        return list(zip(cuts[:-1], cuts[1:]))


def _allocate_intervals(lengths: np.ndarray, total: int) -> np.ndarray:
    # Largest-remainder apportionment, at least one interval per segment.
    exact = lengths * total
    counts = np.maximum(np.floor(exact + 1e-9).astype(int), 1)
    while counts.sum() > total:
        i = int(np.argmax(counts - exact))
        counts[i] -= 1
    while counts.sum() < total:
        i = int(np.argmax(exact - counts))
        counts[i] += 1
    return counts


def make_grid(n: int, breakpoints: Sequence[float] = ()) -> Grid:
    """Build an ``n``-node grid on [0, 1] that contains every breakpoint.

    The ``n - 1`` intervals are shared among the segments in proportion to
    their lengths. When the breakpoints fall on the plain uniform partition
    (e.g. ``2/3`` with ``n - 1`` divisible by 3) the result is exactly that
    partition, with breakpoint nodes stored at their exact values.
    """
    if int(n) != n or n < 3:
        raise ValueError(f"grid needs an integer node count >= 3, got {n!r}")
    n = int(n)
    bps = sorted({float(b) for b in breakpoints})
    for b in bps:
        if not 0.0 < b < 1.0:
            raise ValueError(f"breakpoint {b!r} is not strictly inside (0, 1)")
    if len(bps) + 1 > n - 1:
        raise ValueError(f"{n} nodes cannot resolve {len(bps)} breakpoints")

    edges = np.array([0.0, *bps, 1.0])
    counts = _allocate_intervals(np.diff(edges), n - 1)

    pieces = []
    weights = np.zeros(n)
    start = 0
    for a, b, m in zip(edges[:-1], edges[1:], counts):
        seg = np.linspace(a, b, m + 1)
        seg[0], seg[-1] = a, b
        pieces.append(seg if start == 0 else seg[1:])
        h = (b - a) / m
        weights[start:start + m] += h / 2
        weights[start + 1:start + m + 1] += h / 2
        start += m
    nodes = np.concatenate(pieces)
    return Grid(nodes=nodes, weights=weights, breakpoints=tuple(bps))


def integrate(grid: Grid, samples) -> float:
    """Trapezoid-rule integral of node samples over [0, 1]."""
    y = np.asarray(samples, dtype=float)
    if y.shape != grid.nodes.shape:
        raise ValueError(f"expected {grid.n} samples, got shape {y.shape}")
    return float(grid.weights @ y)
