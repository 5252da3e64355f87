"""Lauricella F_A / F_B hypergeometric functions of several variables.

Evaluation through non-recurrent decompositions into products of Gauss
functions, cross-checked against the defining series and the recurrence
expansions; numerical verification of the summation and limit formulas;
and an application to a multidimensional elliptic equation with singular
coefficients (fundamental solution, Green's function, Holmgren problem).
"""

from .errors import (
    DomainError,
    LauridecError,
    ParameterError,
    QuadratureError,
    SingularityError,
    UsageError,
)
from .hyper import (
    EvalResult,
    GaussParams,
    Truncation,
    gauss_2f1,
    gauss_2f1_at_one,
    log_gamma_ratio,
    log_pochhammer,
    pochhammer,
)
from .direct import (
    LauricellaAParams,
    LauricellaBParams,
    fa_direct,
    fb_direct,
)
from .decomposition import (
    IndexMatrix,
    fa_decomposed,
    fa_recurrent,
    fb_decomposed,
    fb_recurrent,
    index_sum_maps,
    index_sums,
    triangular_slots,
)
from .identities import (
    IdentityReport,
    lemma2_fa,
    lemma2_fb,
    lemma3_fa,
    lemma3_fb,
    t_recurrence_check,
    t_sum_fa,
)
from .pde import (
    BoundaryData,
    GridPiece,
    PDEConfig,
    Point,
    QuadratureGrid,
    aleph_limit,
    aleph_limit_closed,
    build_boundary_grid,
    fundamental_solution,
    green_function,
    green_trace_kernel,
    holmgren_solve,
    pde_residual,
    surface_constant_closed,
    surface_constant_quadrature,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryData",
    "DomainError",
    "EvalResult",
    "GaussParams",
    "GridPiece",
    "IdentityReport",
    "IndexMatrix",
    "LauricellaAParams",
    "LauricellaBParams",
    "LauridecError",
    "PDEConfig",
    "ParameterError",
    "Point",
    "QuadratureError",
    "QuadratureGrid",
    "SingularityError",
    "Truncation",
    "UsageError",
    "aleph_limit",
    "aleph_limit_closed",
    "build_boundary_grid",
    "fa_decomposed",
    "fa_direct",
    "fa_recurrent",
    "fb_decomposed",
    "fb_direct",
    "fb_recurrent",
    "fundamental_solution",
    "gauss_2f1",
    "gauss_2f1_at_one",
    "green_function",
    "green_trace_kernel",
    "holmgren_solve",
    "index_sum_maps",
    "index_sums",
    "lemma2_fa",
    "lemma2_fb",
    "lemma3_fa",
    "lemma3_fb",
    "log_gamma_ratio",
    "log_pochhammer",
    "pde_residual",
    "pochhammer",
    "surface_constant_closed",
    "surface_constant_quadrature",
    "t_recurrence_check",
    "t_sum_fa",
    "triangular_slots",
]
