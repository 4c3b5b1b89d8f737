"""Exact verification toolkit for the domain-wall six-vertex partition function.

A library plus CLI that computes the partition function of the rational
six-vertex model with domain-wall boundaries in exact rational arithmetic and
mechanically verifies, with zero tolerance, the chain from functional
equations through first-order PDE systems and Cramer elimination to the
family of determinant representations — every identity checked against an
independent brute-force enumeration oracle.
"""

from .errors import (
    CalibrationMismatchError,
    DegenerateCramerError,
    DegenerateGridError,
    DegenerateRepresentationError,
    GridEvaluationError,
    NonGenericPointError,
    OrientationSelectionError,
    VertexKZError,
)
from .rational import Rat, format_rat, parse_rat, rat
from .poly import (
    MultiPoly,
    interpolate_multivariate,
    interpolate_univariate,
    univariate_gcd,
)
from .matrix import RatMatrix, determinant
from .model import (
    DELTA,
    ModelParams,
    SpectralPoint,
    default_params,
    is_generic,
    sample_generic_point,
    weight_a,
    weight_b,
    weight_c,
)
from .oracle import (
    BoundaryOrientation,
    build_weight_tables,
    count_configurations,
    enumerate_Z,
    lambda_variables,
    oracle_polynomial,
    select_orientation,
)
from .functional import (
    FunctionalCoeffs,
    coeff_M,
    coeff_M_n,
    functional_coeffs,
    functional_residual,
    reduced_point,
)
from .kz import (
    KZCoeffs,
    alpha_limit_pair,
    eval_map,
    fz_residual_at_offset,
    fz_residual_limit,
    h_coeff,
    h_coeff_base,
    kz_coeffs,
    kz_residual,
    kz_residual_base,
    limit_prefactor,
    omega_bar_coeff,
    omega_coeff,
    omega_coeff_base,
    reduction_prefactor,
)
from .representation import (
    CramerSystem,
    FamilyMatrices,
    build_cramer,
    build_family,
    calibrate,
    cramer_identity_residual,
    degree_report,
    fuchs_residual,
    generic_interpolation_grid,
    representation_polynomial,
    z_det,
)

__version__ = "0.1.0"
