"""fraclab: a numerical laboratory for the fractional integral of
Riemann-Liouville type -- operator evaluation on grids, Lebesgue and weak
norms, explicit boundedness constants with verification reports, sharpness
witnesses and compactness diagnostics.
"""

from ._backend import BACKEND_NAME
from .bounds import (
    BoundReport,
    InterpolationChoice,
    RegimeError,
    marcinkiewicz_constant,
    strong_type_constant,
    verify_into_itself,
    verify_strong_type,
    verify_weak_type,
    weak_type_constant,
)
from .compactness import (
    FamilySpec,
    ModulusReport,
    noncompact_gap,
    noncompact_sequence,
    simon_diagnostic,
    translation_modulus,
)
from .counterexamples import (
    CounterexampleSpec,
    DivergenceProbe,
    divergence_probe,
    make_counterexample,
)
from .fracderiv import (
    MvtResult,
    caputo_derivative,
    fractional_mvt_locate,
    kernel_difference_identity,
    rl_derivative,
)
from .fracint import (
    FracIntegralPlan,
    iterated_increment,
    rl_integral_closed_form,
    rl_integral_grid,
    rl_integral_halfline,
)
from .funcspace import (
    ClosedFormFunction,
    ExponentTriple,
    GridFunction,
    distribution_function,
    embedding_check,
    graded_nodes,
    lp_norm,
    random_piecewise_linear,
    read_grid_csv,
    weak_lp_quasinorm,
    write_grid_csv,
)
from .special import DeltaProfileParams, delta_max, delta_profile, gamma, log_gamma, tail_integral

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME",
    "BoundReport",
    "ClosedFormFunction",
    "CounterexampleSpec",
    "DeltaProfileParams",
    "DivergenceProbe",
    "ExponentTriple",
    "FamilySpec",
    "FracIntegralPlan",
    "GridFunction",
    "InterpolationChoice",
    "ModulusReport",
    "MvtResult",
    "RegimeError",
    "caputo_derivative",
    "delta_max",
    "delta_profile",
    "distribution_function",
    "divergence_probe",
    "embedding_check",
    "fractional_mvt_locate",
    "gamma",
    "graded_nodes",
    "iterated_increment",
    "kernel_difference_identity",
    "log_gamma",
    "lp_norm",
    "make_counterexample",
    "marcinkiewicz_constant",
    "noncompact_gap",
    "noncompact_sequence",
    "random_piecewise_linear",
    "read_grid_csv",
    "rl_derivative",
    "rl_integral_closed_form",
    "rl_integral_grid",
    "rl_integral_halfline",
    "simon_diagnostic",
    "strong_type_constant",
    "tail_integral",
    "translation_modulus",
    "verify_into_itself",
    "verify_strong_type",
    "verify_weak_type",
    "weak_lp_quasinorm",
    "weak_type_constant",
    "write_grid_csv",
]
