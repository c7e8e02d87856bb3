"""Existence, localization, multiplicity and non-existence certification for
perturbed Hammerstein integral equations and two-equation systems, with a
Nystrom solver and a config-driven CLI."""

from .conditions import (
    ExistenceSummary,
    NonexistenceThresholds,
    ProblemSpec,
    check_growth,
    index0_check,
    index1_check,
    nonexistence_thresholds,
    single_multiplicity,
)
from .elliptic import EllipticAnnulusProblem, TransformResult, radial_map, transform
from .envelopes import (
    FunctionalSpec,
    NonlinearitySpec,
    boundary_box,
    box_extremum,
    domination_check,
)
from .errors import (
    DivergenceError,
    DomainError,
    HammersteinError,
    InvalidMeasureError,
    RegimeError,
    SpecificationError,
)
from .kernels import (
    GammaSpec,
    KernelSpec,
    SignClass,
    builtin,
    transformed_kernel,
    verify_bounds,
    verify_gamma,
)
from .measures import StieltjesMeasure
from .quadrature import DEFAULT_RULE, QuadratureRule, sup_inf_over_t
from .reports import ConditionReport
from .settings import DEFAULT_SETTINGS, Settings
from .solver import SolutionProfile, Window, apply_T, localization_check, solve
from .systems import (
    MeasureGrid,
    SystemSpec,
    matrix2_solve,
    system_constants,
    system_index0_check,
    system_index1_check,
    system_multiplicity,
    system_nonexistence,
)

__version__ = "0.1.0"

__all__ = [
    "ConditionReport",
    "DEFAULT_RULE",
    "DEFAULT_SETTINGS",
    "DivergenceError",
    "DomainError",
    "EllipticAnnulusProblem",
    "ExistenceSummary",
    "FunctionalSpec",
    "GammaSpec",
    "HammersteinError",
    "InvalidMeasureError",
    "KernelSpec",
    "MeasureGrid",
    "NonexistenceThresholds",
    "NonlinearitySpec",
    "ProblemSpec",
    "QuadratureRule",
    "RegimeError",
    "Settings",
    "SignClass",
    "SolutionProfile",
    "SpecificationError",
    "StieltjesMeasure",
    "SystemSpec",
    "TransformResult",
    "Window",
    "apply_T",
    "boundary_box",
    "box_extremum",
    "builtin",
    "check_growth",
    "domination_check",
    "index0_check",
    "index1_check",
    "localization_check",
    "matrix2_solve",
    "nonexistence_thresholds",
    "radial_map",
    "single_multiplicity",
    "solve",
    "sup_inf_over_t",
    "system_constants",
    "system_index0_check",
    "system_index1_check",
    "system_multiplicity",
    "system_nonexistence",
    "transform",
    "transformed_kernel",
    "verify_bounds",
    "verify_gamma",
]
