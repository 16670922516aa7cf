"""Eigenpairs of Neumann BVPs with a functional term via Hammerstein integral equations.

Solves ``eps*u'' + omega**2*u = lambda*f(t, u, H[u])``, ``u'(0) = u'(1) = 0``, in
its integral form ``u = lambda*T u`` on a Nyström grid, for eigenfunctions of a
prescribed sup-norm ``rho``, and computes the ``rho``-dependent bounds on
``|lambda|`` together with the admissibility threshold ``rho0``.

>>> from neumann_eigen import build_setup, solve_one
>>> setup = build_setup("example-minus", n_grid=301)
>>> pair, report = solve_one(setup, 0.2, +1)
>>> pair.converged, bool(abs(max(abs(pair.u)) - 0.2) < 1e-12)
(True, True)
"""

from .grid import Grid, integrate, make_grid
from .kernel import KernelMatrix, KernelSpec, assemble, kernel_value
from .localization import (
    LocalizationReport,
    Thresholds,
    ThresholdUndefinedError,
    analytic_ABCD,
    analytic_lower_transform,
    bound_curve,
    compute_rho_threshold,
    envelope_transforms,
    localize,
    numeric_rho_threshold,
)
from .problem import (
    PRESETS,
    EnvelopeBounds,
    ProblemSpec,
    apply_hammerstein,
    eval_functional,
    eval_nonlinearity,
    example_minus,
    example_plus,
    get_preset,
)
from .solver import (
    BVPResidual,
    EigenpairApprox,
    NumericalFailureError,
    SolverBreakdownError,
    SolverConfig,
    bvp_residual,
    consistency_error,
    fixed_point_solve,
)
from .sweep import (
    CSV_COLUMNS,
    SweepConfig,
    SweepResult,
    SweepRow,
    build_setup,
    emit_outputs,
    run_sweep,
    solve_one,
)

__version__ = "0.1.0"
