"""Numerical toolkit for weighted composition operators on disk function spaces.

Builds the operators f -> F * (f o phi) from exact 2-jet expression
trees, evaluates norms in ten families of analytic function spaces on
the unit disk, and decides invertibility and surjective isometry from
the structure of the symbols, reporting measured evidence for every
verdict.
"""

from .analytic_core import (
    Add,
    AnalyticExpr,
    Compose,
    Const,
    Jet2,
    Moebius,
    MoebiusMap,
    Mul,
    Poly,
    Pow,
    R_MAX,
    Recip,
    compose_moebius,
    eval_jet,
    moebius_inverse,
    rotation_map,
    winding_number,
)
from .axiom_harness import ALL_FAMILIES, AxiomReport, run_all
from .characterization import (
    AutomorphismFit,
    InvertibilityReport,
    IsometryReport,
    MultiplierVerdict,
    check_invertible,
    check_isometry,
    count_zeros,
    detect_automorphism,
    inverse_symbols,
    multiplier_test,
)
from .cli import format_expression, parse_expression
from .errors import (
    BranchError,
    ContourZero,
    DegenerateInput,
    DomainError,
    NonVanishingViolation,
    ParameterError,
    ParseError,
    SingularMatrix,
    UnsupportedSpace,
    WcolabError,
)
from .operators import (
    FiniteSection,
    WcoSymbols,
    apply,
    condition_number,
    default_probe_family,
    finite_section,
    isometry_defect,
    monomial,
    random_polynomials,
)
from .quadrature import (
    GridConfig,
    IntegralMean,
    area_integral,
    default_config,
    integral_mean,
    sup_over_disk,
    taylor_coefficients,
    weighted_radial_integral,
)
from .spaces import NormBreakdown, SpaceSpec, norm, parse_space, pointeval_bound, seminorm

__version__ = "0.1.0"
