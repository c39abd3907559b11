"""Finite element and two-grid solvers for the time-dependent
Poisson-Nernst-Planck system on the unit square."""

from ._core import (  # noqa: F401
    FeFunction,
    GummelFailure,
    MarchResult,
    Mesh,
    PnpState,
    ProblemSpec,
    SolveFailure,
    StepStats,
    TimeGrid,
    __version__,
    boundary_nodes,
    build_uniform_mesh,
    convergence_order,
    fe_interpolate,
    fe_zero,
    gummel_step,
    h1_error,
    l2_error,
    locate_element,
    make_manufactured_problem,
    march,
    prolongate,
    run_study,
    solve_np,
    solve_poisson,
)

__all__ = [
    "FeFunction",
    "GummelFailure",
    "MarchResult",
    "Mesh",
    "PnpState",
    "ProblemSpec",
    "SolveFailure",
    "StepStats",
    "TimeGrid",
    "__version__",
    "boundary_nodes",
    "build_uniform_mesh",
    "convergence_order",
    "fe_interpolate",
    "fe_zero",
    "gummel_step",
    "h1_error",
    "l2_error",
    "locate_element",
    "make_manufactured_problem",
    "march",
    "prolongate",
    "run_study",
    "solve_np",
    "solve_poisson",
]
