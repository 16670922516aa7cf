"""Golden-section search for the maximum of a unimodal function."""

from __future__ import annotations

import math
from typing import Callable

INV_PHI = (math.sqrt(5) - 1) / 2


def golden_max(f: Callable[[float], float], a: float, b: float,
               tol: float = 1e-10, max_iter: int = 200) -> tuple[float, float]:
    """Return ``(x, f(x))`` maximizing ``f`` on ``[a, b]``.

    The bracket is shrunk until its width is below ``tol``; the endpoints are
    compared at the end so that boundary maxima are returned exactly.
    """
    if b < a:
        a, b = b, a
    lo, hi = a, b
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = f(x1)
    mid = 0.5 * (lo + hi)
    candidates = [(mid, f(mid)), (a, f(a)), (b, f(b))]
    # ties go to the right end
    return max(candidates, key=lambda c: (c[1], c[0]))
