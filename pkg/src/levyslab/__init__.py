"""Spectral toolkit for Levy transport in a 2-D slab.

Mittag-Leffler and Gamma evaluation, fractional derivative quadratures, the
spectral Riesz operator, box eigenmodes with FFT verification, and the
paraxial envelope solver for the effective fractional Schrodinger equation.
"""

from ._kernels import backend_name
from .eigenbox import (
    EigenMode,
    degenerate_pair,
    eigen_residual,
    even_mode,
    odd_mode,
    select_by_boundary,
)
from .errors import (
    DomainError,
    GridError,
    LevySlabError,
    NonConvergenceError,
    ParityError,
    PoleError,
    SelectionError,
    UsageError,
    ZeroFunctionError,
)
from .operators import (
    ComplexSamples,
    FractionalOrders,
    Grid1D,
    caputo_deriv,
    gl_deriv,
    riesz_apply,
    rl_deriv,
)
from .solver import (
    ModeExpansion,
    SlabConfig,
    ZEnvelope,
    norm_large_z,
    norm_small_z,
    norm_z,
    project_initial,
    solve_field,
    time_envelope,
    z_envelope,
    z_envelope_parts,
)
from .special import (
    EvalResult,
    MLParams,
    gamma_fn,
    ml_asymptotic,
    ml_eval_array,
    mittag_leffler,
)

__version__ = "0.1.0"

__all__ = [
    "backend_name",
    "EigenMode",
    "degenerate_pair",
    "eigen_residual",
    "even_mode",
    "odd_mode",
    "select_by_boundary",
    "DomainError",
    "GridError",
    "LevySlabError",
    "NonConvergenceError",
    "ParityError",
    "PoleError",
    "SelectionError",
    "UsageError",
    "ZeroFunctionError",
    "ComplexSamples",
    "FractionalOrders",
    "Grid1D",
    "caputo_deriv",
    "gl_deriv",
    "riesz_apply",
    "rl_deriv",
    "ModeExpansion",
    "SlabConfig",
    "ZEnvelope",
    "norm_large_z",
    "norm_small_z",
    "norm_z",
    "project_initial",
    "solve_field",
    "time_envelope",
    "z_envelope",
    "z_envelope_parts",
    "EvalResult",
    "MLParams",
    "gamma_fn",
    "ml_asymptotic",
    "ml_eval_array",
    "mittag_leffler",
    "__version__",
]
