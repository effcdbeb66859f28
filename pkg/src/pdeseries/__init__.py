"""Analytical power-series solutions of evolution, heat and linearized
Navier-Stokes equations, with closed-form detection and independent
finite-difference verification."""

from .algebra import (
    Atom,
    ExpPoly,
    VectorField,
    curl,
    divergence,
    eigenvalue,
    gradient,
    heat_semigroup,
    laplacian,
    poly_close,
)
from .diffusion import (
    BallProblem,
    BallSolution,
    HeatProblem,
    ball_series,
    growth_flag,
    heat_closed_form,
    heat_series,
)
from .errors import (
    AtomBudgetError,
    ExpressionSyntaxError,
    NonEigenAtomError,
    PdeSeriesError,
    PotentialSingularityError,
    ProblemFileError,
    ResonanceError,
    ZeroEigenvalueError,
)
from .evolution import (
    EvolutionProblem,
    PowersTable,
    apply_implicit_inverse,
    recursion_step,
    series_power,
    solve_series,
)
from .flow import (
    FlowProblem,
    FlowSolution,
    QuadratureSettings,
    RadialPotential,
    assemble_velocity,
    duhamel_particular,
    inverse_laplacian_quadrature,
    inverse_laplacian_symbolic,
    pressure,
    solve_flow,
    velocity_samples,
    vorticity_homogeneous,
)
from .problemfile import ProblemFile, load_problem, load_problem_file
from .residuals import (
    GridSpec,
    ResidualReport,
    fd_check_initial,
    fd_residual_evolution,
    fd_residual_heat,
    stencil,
)
from .series import (
    ClosedForm,
    SeriesSolution,
    detect_closed_form,
    evaluate_partial_sum,
)
from .textform import parse_expression, to_display

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "AtomBudgetError",
    "BallProblem",
    "BallSolution",
    "ClosedForm",
    "EvolutionProblem",
    "ExpPoly",
    "ExpressionSyntaxError",
    "FlowProblem",
    "FlowSolution",
    "GridSpec",
    "HeatProblem",
    "NonEigenAtomError",
    "PdeSeriesError",
    "PotentialSingularityError",
    "PowersTable",
    "ProblemFile",
    "ProblemFileError",
    "QuadratureSettings",
    "RadialPotential",
    "ResidualReport",
    "ResonanceError",
    "SeriesSolution",
    "VectorField",
    "ZeroEigenvalueError",
    "apply_implicit_inverse",
    "assemble_velocity",
    "ball_series",
    "curl",
    "detect_closed_form",
    "divergence",
    "duhamel_particular",
    "eigenvalue",
    "evaluate_partial_sum",
    "fd_check_initial",
    "fd_residual_evolution",
    "fd_residual_heat",
    "gradient",
    "growth_flag",
    "heat_closed_form",
    "heat_semigroup",
    "heat_series",
    "inverse_laplacian_quadrature",
    "inverse_laplacian_symbolic",
    "laplacian",
    "load_problem",
    "load_problem_file",
    "parse_expression",
    "poly_close",
    "pressure",
    "recursion_step",
    "series_power",
    "solve_flow",
    "solve_series",
    "stencil",
    "to_display",
    "velocity_samples",
    "vorticity_homogeneous",
]
